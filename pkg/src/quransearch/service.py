"""HTTP search service over one loaded index, Qur'an text and provider.

All request handlers read the current snapshot exactly once, so an index
reload (atomic swap of the snapshot reference) can never produce a
response mixing old and new state.
"""

import time
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from .corpus import KEY_MULTIPLIER, Verse, index_verses, load_quran_text
from .embedding import LocalCbowProvider, RemoteProvider, restore_model
from .errors import DomainError, ProviderError, QueryError
from .index import VectorIndex, restore_index, search_top_k

MAX_K = 100


@dataclass
class Snapshot:
    """Immutable bundle the service answers from."""

    index: VectorIndex
    provider: object
    verses: dict[int, Verse]


class IndexHolder:
    """Holds the live snapshot; swap() replaces it atomically.

    CPython attribute assignment is atomic, and handlers take one local
    reference before touching anything, so readers see either the old or
    the new snapshot in full.
    """

    def __init__(self, snapshot: Snapshot | None = None):
        self._snapshot = snapshot

    def get(self) -> Snapshot | None:
        return self._snapshot

    def swap(self, snapshot: Snapshot) -> None:
        self._snapshot = snapshot


def load_snapshot(
    index_path: str | Path,
    quran_path: str | Path,
    model_path: str | Path | None = None,
    endpoint: str | None = None,
) -> Snapshot:
    """Restore index + Qur'an and bind the query-embedding provider.

    Exactly one of model_path (local CBOW model) or endpoint (remote
    embedding server) must be given.
    """
    if (model_path is None) == (endpoint is None):
        raise DomainError("provide exactly one of model_path or endpoint")
    index = restore_index(index_path)
    verses = index_verses(load_quran_text(quran_path))
    if model_path is not None:
        provider = LocalCbowProvider(restore_model(model_path), name=index.provider_name)
    else:
        provider = RemoteProvider(endpoint, name=index.provider_name, dim=index.dim)
    if provider.dim != index.dim:
        raise DomainError(
            f"provider dim {provider.dim} does not match index dim {index.dim}"
        )
    return Snapshot(index=index, provider=provider, verses=verses)


class SearchRequest(BaseModel):
    query: str = ""
    k: int = 10
    tafsirs: list[str] | None = None


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def create_app(holder: IndexHolder) -> FastAPI:
    app = FastAPI(title="quransearch")
    app.state.holder = holder

    @app.exception_handler(RequestValidationError)
    async def _on_validation_error(request: Request, exc: RequestValidationError):
        return _error(400, "invalid_request", str(exc.errors()[:1]))

    @app.get("/healthz")
    async def healthz() -> PlainTextResponse:
        return PlainTextResponse("ok")

    @app.post("/api/search")
    async def search(req: SearchRequest):
        snapshot = holder.get()
        if snapshot is None:
            return _error(503, "index_not_loaded", "index not loaded")
        if not 1 <= req.k <= MAX_K:
            return _error(400, "invalid_k", f"k must be in 1..{MAX_K}, got {req.k}")
        query = req.query.strip()
        if not query:
            return _error(422, "no_searchable_terms", "query is empty")
        tafsir_filter = None
        if req.tafsirs is not None:
            known = set(snapshot.index.tafsir_ids())
            unknown = sorted(set(req.tafsirs) - known)
            if unknown:
                return _error(404, "unknown_tafsir", f"unknown tafsir: {', '.join(unknown)}")
            tafsir_filter = set(req.tafsirs)
        started = time.perf_counter()
        try:
            hits = search_top_k(
                snapshot.index,
                snapshot.provider,
                snapshot.verses,
                query,
                k=req.k,
                tafsir_filter=tafsir_filter,
            )
        except QueryError as e:
            return _error(422, "no_searchable_terms", str(e))
        except ProviderError as e:
            return _error(502, "provider_error", str(e))
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        return {
            "hits": [
                {
                    "tafsir_id": h.tafsir_id,
                    "surah": h.key.surah,
                    "ayah": h.key.ayah,
                    "score": h.score,
                    "ayah_text": h.ayah_text,
                    "tafsir_excerpt": h.tafsir_excerpt,
                }
                for h in hits
            ],
            "elapsed_ms": elapsed_ms,
            "provider_name": snapshot.provider.name,
        }

    @app.get("/api/verse/{surah}/{ayah}")
    async def verse_lookup(surah: int, ayah: int):
        snapshot = holder.get()
        if snapshot is None:
            return _error(503, "index_not_loaded", "index not loaded")
        if surah < 1 or ayah < 1:
            return _error(404, "unknown_verse", f"no verse {surah}:{ayah}")
        verse = snapshot.verses.get(surah * KEY_MULTIPLIER + ayah)
        if verse is None:
            return _error(404, "unknown_verse", f"no verse {surah}:{ayah}")
        return {"surah": surah, "ayah": ayah, "text": verse.text}

    @app.get("/api/info")
    async def corpus_info():
        snapshot = holder.get()
        if snapshot is None:
            return _error(503, "index_not_loaded", "index not loaded")
        counts = snapshot.index.entry_counts()
        return {
            "provider_name": snapshot.provider.name,
            "dim": snapshot.index.dim,
            "total_entries": len(snapshot.index.entries),
            "tafsirs": [{"id": tid, "entries": n} for tid, n in sorted(counts.items())],
        }

    return app
