"""Shared fixtures: corpus data, a trained toy model, and a built index."""

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import numpy as np
import pytest

from quransearch.corpus import align_tafsir_to_verses, load_quran_text, load_tafsir_corpus
from quransearch.embedding import LocalCbowProvider, TrainingConfig, train_cbow
from quransearch.index import build_index
from quransearch.textnorm import NormalizationConfig, preprocess_document

DATA_DIR = Path(__file__).parent / "data"

# Hafs/Kufan ayah counts per surah, 1..114; sums to 6,236.
SURAH_AYAH_COUNTS = [
    7, 286, 200, 176, 120, 165, 206, 75, 129, 109,
    123, 111, 43, 52, 99, 128, 111, 110, 98, 135,
    112, 78, 118, 64, 77, 227, 93, 88, 69, 60,
    34, 30, 73, 54, 45, 83, 182, 88, 75, 85,
    54, 53, 89, 59, 37, 35, 38, 29, 18, 45,
    60, 49, 62, 55, 78, 96, 29, 22, 24, 13,
    14, 11, 11, 18, 12, 12, 30, 52, 52, 44,
    28, 28, 20, 56, 40, 31, 50, 40, 46, 42,
    29, 19, 36, 25, 22, 17, 19, 26, 30, 20,
    15, 21, 11, 8, 8, 19, 5, 8, 8, 11,
    11, 8, 3, 9, 5, 4, 7, 3, 6, 3,
    5, 4, 5, 6,
]


@pytest.fixture(scope="session")
def quran_small_path() -> Path:
    return DATA_DIR / "quran_small.txt"


@pytest.fixture(scope="session")
def quran_small(quran_small_path):
    return load_quran_text(quran_small_path)


@pytest.fixture(scope="session")
def tafsir_corpus_root() -> Path:
    return DATA_DIR / "tafsir_corpus"


@pytest.fixture(scope="session")
def tafsir_corpus(tafsir_corpus_root):
    return load_tafsir_corpus(tafsir_corpus_root)


@pytest.fixture(scope="session")
def canonical_quran_path(tmp_path_factory) -> Path:
    """Synthetic full Qur'an file with the canonical verse counts."""
    path = tmp_path_factory.mktemp("quran") / "quran_full.txt"
    with open(path, "w", encoding="utf-8") as f:
        for surah, count in enumerate(SURAH_AYAH_COUNTS, 1):
            for ayah in range(1, count + 1):
                f.write(f"{surah}|{ayah}|آية {ayah} من سورة {surah}\n")
    return path


def make_cluster_corpus(seed: int = 7) -> tuple[list[list[str]], list[str], list[str]]:
    """Two disjoint 5-token vocabularies, 200 random sentences each."""
    rng = np.random.default_rng(seed)
    group_a = ["alpha", "bravo", "charlie", "delta", "echo"]
    group_b = ["zulu", "yankee", "xray", "whiskey", "victor"]
    corpus = []
    for words in (group_a, group_b):
        for _ in range(200):
            n = int(rng.integers(4, 9))
            corpus.append([words[int(rng.integers(0, 5))] for _ in range(n)])
    return corpus, group_a, group_b


@pytest.fixture(scope="session")
def cluster_corpus():
    return make_cluster_corpus()


FIXTURE_TRAIN_CFG = TrainingConfig(
    dim=32, window=5, negatives=5, epochs=10, seed=42, min_count=1, subsample_t=0.0
)


@pytest.fixture(scope="session")
def fixture_model(tafsir_corpus):
    norm_cfg = NormalizationConfig()
    docs = [
        preprocess_document(entry.commentary, norm_cfg)
        for tid in sorted(tafsir_corpus)
        for entry in tafsir_corpus[tid]
    ]
    return train_cbow(docs, FIXTURE_TRAIN_CFG, norm_cfg)


@pytest.fixture(scope="session")
def fixture_provider(fixture_model):
    return LocalCbowProvider(fixture_model, name="cbow")


@pytest.fixture(scope="session")
def fixture_alignments(tafsir_corpus, quran_small):
    return {
        tid: align_tafsir_to_verses(entries, quran_small)
        for tid, entries in tafsir_corpus.items()
    }


@pytest.fixture(scope="session")
def fixture_index(fixture_alignments, fixture_provider):
    index, report = build_index(fixture_alignments, fixture_provider)
    assert report.skipped == 0
    return index


class StubEmbedHandler(BaseHTTPRequestHandler):
    """Answers POST /embed with whatever payload the server was given."""

    def do_POST(self):
        length = int(self.headers.get("Content-Length", 0))
        self.rfile.read(length)
        status, payload = self.server.response  # type: ignore[attr-defined]
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, format, *args):
        pass


@pytest.fixture
def stub_embed_server():
    """Yields (base_url, set_response) for a throwaway embedding server."""
    server = ThreadingHTTPServer(("127.0.0.1", 0), StubEmbedHandler)
    server.response = (200, {"vector": [3.0, 4.0], "dim": 2})
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()

    def set_response(status, payload):
        server.response = (status, payload)

    try:
        yield f"http://127.0.0.1:{server.server_port}", set_response
    finally:
        server.shutdown()
        thread.join(timeout=5)
