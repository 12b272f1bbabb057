"""HTTP API behavior: search, verse lookup, info, errors, atomic reload."""

import threading

import numpy as np
import pytest
from fastapi.testclient import TestClient

from quransearch.corpus import index_verses
from quransearch.service import IndexHolder, Snapshot, create_app


@pytest.fixture
def snapshot(fixture_index, fixture_provider, quran_small):
    return Snapshot(
        index=fixture_index,
        provider=fixture_provider,
        verses=index_verses(quran_small),
    )


@pytest.fixture
def client(snapshot):
    app = create_app(IndexHolder(snapshot))
    with TestClient(app) as c:
        yield c


class TestHealth:
    def test_healthz(self, client):
        resp = client.get("/healthz")
        assert resp.status_code == 200
        assert resp.text == "ok"


class TestSearch:
    def test_self_retrieval_scores_one(self, client, tafsir_corpus):
        commentary = tafsir_corpus["almukhtasar"][0].commentary
        resp = client.post("/api/search", json={"query": commentary, "k": 1})
        assert resp.status_code == 200
        body = resp.json()
        assert len(body["hits"]) == 1
        hit = body["hits"][0]
        assert hit["tafsir_id"] == "almukhtasar"
        assert abs(hit["score"] - 1.0) <= 1e-6
        assert hit["surah"] == 102 and hit["ayah"] == 1
        assert body["provider_name"] == "cbow"
        assert body["elapsed_ms"] >= 0

    def test_hits_carry_verse_text_and_excerpt(self, client):
        resp = client.post("/api/search", json={"query": "التكاثر", "k": 3})
        assert resp.status_code == 200
        for hit in resp.json()["hits"]:
            assert hit["ayah_text"]
            assert hit["tafsir_excerpt"]

    def test_k_zero_is_400(self, client):
        resp = client.post("/api/search", json={"query": "x", "k": 0})
        assert resp.status_code == 400
        assert resp.json()["code"] == "invalid_k"

    def test_k_above_cap_is_400(self, client):
        resp = client.post("/api/search", json={"query": "x", "k": 101})
        assert resp.status_code == 400

    def test_diacritics_only_query_is_422(self, client):
        resp = client.post("/api/search", json={"query": "ًٌٍَُ", "k": 3})
        assert resp.status_code == 422
        body = resp.json()
        assert body["code"] == "no_searchable_terms"
        assert body["message"]

    def test_empty_query_is_422(self, client):
        resp = client.post("/api/search", json={"query": "   ", "k": 3})
        assert resp.status_code == 422
        assert resp.json()["code"] == "no_searchable_terms"

    def test_unknown_tafsir_is_404(self, client):
        resp = client.post(
            "/api/search", json={"query": "التكاثر", "k": 3, "tafsirs": ["nosuch"]}
        )
        assert resp.status_code == 404
        assert resp.json()["code"] == "unknown_tafsir"

    def test_tafsir_filter_respected(self, client):
        resp = client.post(
            "/api/search", json={"query": "التكاثر", "k": 20, "tafsirs": ["samarqandi"]}
        )
        assert resp.status_code == 200
        hits = resp.json()["hits"]
        assert hits and all(h["tafsir_id"] == "samarqandi" for h in hits)

    def test_malformed_body_is_400(self, client):
        resp = client.post("/api/search", json={"query": "x", "k": "lots"})
        assert resp.status_code == 400
        assert resp.json()["code"] == "invalid_request"

    def test_identical_requests_identical_responses(self, client):
        payload = {"query": "زرتم المقابر", "k": 5}
        a = client.post("/api/search", json=payload).json()
        b = client.post("/api/search", json=payload).json()
        assert a["hits"] == b["hits"]


class TestVerseLookup:
    def test_known_verse(self, client):
        resp = client.get("/api/verse/2/30")
        assert resp.status_code == 200
        body = resp.json()
        assert body["text"].startswith("وإذ قال ربك للملائكة")

    def test_surah_out_of_range(self, client):
        assert client.get("/api/verse/115/1").status_code == 404

    def test_zero_ayah(self, client):
        assert client.get("/api/verse/1/0").status_code == 404

    def test_absent_verse(self, client):
        assert client.get("/api/verse/3/1").status_code == 404


class TestInfo:
    def test_lists_tafsirs_and_counts(self, client):
        resp = client.get("/api/info")
        assert resp.status_code == 200
        body = resp.json()
        assert body["provider_name"] == "cbow"
        assert body["total_entries"] == 25
        counts = {t["id"]: t["entries"] for t in body["tafsirs"]}
        assert counts == {
            "alkashaf": 8,
            "almukhtasar": 1,
            "ibn-atiyah": 8,
            "samarqandi": 8,
        }

    def test_unloaded_service_is_503(self):
        app = create_app(IndexHolder(None))
        with TestClient(app) as c:
            for call in (
                lambda: c.get("/api/info"),
                lambda: c.post("/api/search", json={"query": "x"}),
                lambda: c.get("/api/verse/1/1"),
            ):
                resp = call()
                assert resp.status_code == 503
                assert resp.json()["code"] == "index_not_loaded"


def make_marked_snapshot(mark: str, base: Snapshot) -> Snapshot:
    """Snapshot whose provider name and sole tafsir id both carry `mark`."""
    from quransearch.index import IndexEntry, VectorIndex

    entries = [
        IndexEntry(f"tafsir-{mark}", e.key, e.vector, e.excerpt)
        for e in base.index.entries
    ]
    index = VectorIndex(f"prov-{mark}", base.index.dim, entries)

    class NamedProvider:
        name = f"prov-{mark}"
        dim = base.index.dim

        def embed(self, text):
            return base.provider.embed(text)

    return Snapshot(index=index, provider=NamedProvider(), verses=base.verses)


class TestAtomicSwap:
    def test_no_mixed_responses_under_swaps(self, snapshot):
        snap_a = make_marked_snapshot("a", snapshot)
        snap_b = make_marked_snapshot("b", snapshot)
        holder = IndexHolder(snap_a)
        app = create_app(holder)
        problems: list[str] = []
        stop = threading.Event()

        def swapper():
            flip = False
            while not stop.is_set():
                holder.swap(snap_b if flip else snap_a)
                flip = not flip

        with TestClient(app) as client:
            def reader():
                for _ in range(3):
                    resp = client.post(
                        "/api/search", json={"query": "التكاثر", "k": 5}
                    )
                    if resp.status_code != 200:
                        problems.append(f"status {resp.status_code}")
                        continue
                    body = resp.json()
                    mark = body["provider_name"].rsplit("-", 1)[1]
                    tafsirs = {h["tafsir_id"] for h in body["hits"]}
                    if tafsirs != {f"tafsir-{mark}"}:
                        problems.append(f"mixed: {body['provider_name']} with {tafsirs}")
                    info = client.get("/api/info").json()
                    info_mark = info["provider_name"].rsplit("-", 1)[1]
                    info_ids = {t["id"] for t in info["tafsirs"]}
                    if info_ids != {f"tafsir-{info_mark}"}:
                        problems.append(f"mixed info: {info}")

            swap_thread = threading.Thread(target=swapper, daemon=True)
            swap_thread.start()
            readers = [threading.Thread(target=reader) for _ in range(20)]
            for t in readers:
                t.start()
            for t in readers:
                t.join()
            stop.set()
            swap_thread.join(timeout=5)
        assert problems == []
