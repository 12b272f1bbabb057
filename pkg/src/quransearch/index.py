"""Unit-vector store over aligned commentary plus exact cosine top-k search.

The scan is deliberately brute force: the corpus tops out around 200k
vectors (6,236 verses x ~32 tafsirs), exactness keeps the ranking testable
against an exhaustive oracle, and ties break deterministically.
"""

import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._binio import Reader, check_magic
from .corpus import AlignedRow, Verse, VerseKey, index_verses
from .errors import (
    DomainError,
    EmptyEmbeddingError,
    FormatError,
    IndexBuildError,
    QueryError,
)
from .textnorm import NormalizationConfig, normalize_arabic

INDEX_MAGIC = b"QSIX01"
EXCERPT_CHARS = 300


@dataclass
class IndexEntry:
    """One indexed (tafsir, verse) document vector.

    The excerpt is build-time display metadata; the persisted format keeps
    only tafsir id, verse key and vector, so restored entries carry "".
    """

    tafsir_id: str
    key: VerseKey
    vector: np.ndarray
    excerpt: str = ""


@dataclass
class VectorIndex:
    provider_name: str
    dim: int
    entries: list[IndexEntry] = field(default_factory=list)

    def tafsir_ids(self) -> list[str]:
        seen: dict[str, None] = {}
        for e in self.entries:
            seen.setdefault(e.tafsir_id, None)
        return list(seen)

    def entry_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for e in self.entries:
            counts[e.tafsir_id] = counts.get(e.tafsir_id, 0) + 1
        return counts


@dataclass(frozen=True)
class Hit:
    tafsir_id: str
    key: VerseKey
    score: float
    ayah_text: str
    tafsir_excerpt: str


@dataclass
class BuildReport:
    total_rows: int = 0
    indexed: int = 0
    skipped: int = 0
    skipped_rows: list[tuple[str, VerseKey]] = field(default_factory=list)


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    """A.B divided by the product of magnitudes, clamped to [-1, 1]."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise DomainError(f"dimension mismatch: {a.shape} vs {b.shape}")
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        raise DomainError("cosine similarity undefined for zero vectors")
    value = float(a @ b) / (na * nb)
    return min(1.0, max(-1.0, value))


def build_index(
    alignments: dict[str, list[AlignedRow]],
    provider,
    norm_cfg: NormalizationConfig | None = None,
) -> tuple[VectorIndex, BuildReport]:
    """Embed every aligned row, preserving alignment-table order.

    Rows the provider cannot embed (no searchable terms) are skipped and
    counted in the report; an index with zero entries is an error.
    """
    if norm_cfg is None:
        norm_cfg = getattr(provider, "norm_cfg", None) or NormalizationConfig()
    index = VectorIndex(provider_name=provider.name, dim=provider.dim)
    report = BuildReport()
    for tafsir_id, rows in alignments.items():
        for row in rows:
            report.total_rows += 1
            try:
                vector = provider.embed(row.tafsir_text)
            except EmptyEmbeddingError:
                report.skipped += 1
                report.skipped_rows.append((tafsir_id, row.key))
                continue
            excerpt = normalize_arabic(row.tafsir_text, norm_cfg)[:EXCERPT_CHARS]
            index.entries.append(IndexEntry(tafsir_id, row.key, vector, excerpt))
            report.indexed += 1
    if not index.entries:
        raise IndexBuildError("no aligned row could be embedded")
    return index, report


def rank_entries(
    index: VectorIndex,
    query_vector: np.ndarray,
    k: int,
    tafsir_filter: set[str] | None = None,
) -> list[tuple[IndexEntry, float]]:
    """Exact scan: score every (filtered) entry, return the top k.

    Order: descending score, then ascending encoded key, then tafsir id;
    full ties keep index position (stable sort), making the order total.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    q = np.asarray(query_vector, dtype=np.float64)
    if q.shape != (index.dim,):
        raise DomainError(f"query vector has shape {q.shape}, index dim {index.dim}")
    if tafsir_filter is not None:
        known = set(index.tafsir_ids())
        unknown = sorted(set(tafsir_filter) - known)
        if unknown:
            raise QueryError(f"unknown tafsir id(s): {', '.join(unknown)}")
    scored = []
    for entry in index.entries:
        if tafsir_filter is not None and entry.tafsir_id not in tafsir_filter:
            continue
        dot = float(entry.vector.astype(np.float64) @ q)
        scored.append((entry, min(1.0, max(-1.0, dot))))
    scored.sort(key=lambda pair: (-pair[1], pair[0].key.encoded, pair[0].tafsir_id))
    return scored[:k]


def search_top_k(
    index: VectorIndex,
    provider,
    quran: list[Verse] | dict[int, Verse],
    prompt: str,
    k: int = 10,
    tafsir_filter: set[str] | None = None,
) -> list[Hit]:
    """Embed the prompt, rank entries, and resolve verse texts."""
    lookup = quran if isinstance(quran, dict) else index_verses(quran)
    try:
        query_vector = provider.embed(prompt)
    except EmptyEmbeddingError as e:
        raise QueryError("no searchable terms") from e
    hits = []
    for entry, score in rank_entries(index, query_vector, k, tafsir_filter):
        verse = lookup.get(entry.key.encoded)
        hits.append(
            Hit(
                tafsir_id=entry.tafsir_id,
                key=entry.key,
                score=score,
                ayah_text=verse.text if verse is not None else "",
                tafsir_excerpt=entry.excerpt,
            )
        )
    return hits


def persist_index(index: VectorIndex, path: str | Path) -> None:
    """Write the binary index file (see restore_index for the layout)."""
    with open(path, "wb") as f:
        f.write(INDEX_MAGIC)
        f.write(struct.pack("<II", index.dim, len(index.entries)))
        name_raw = index.provider_name.encode("utf-8")
        f.write(struct.pack("<I", len(name_raw)))
        f.write(name_raw)
        for entry in index.entries:
            tid_raw = entry.tafsir_id.encode("utf-8")
            f.write(struct.pack("<I", len(tid_raw)))
            f.write(tid_raw)
            f.write(struct.pack("<I", entry.key.encoded))
            f.write(np.ascontiguousarray(entry.vector, dtype="<f4").tobytes())


def restore_index(path: str | Path) -> VectorIndex:
    """Read an index file back; vectors and order round-trip bit-exactly.

    Layout: magic "QSIX01", u32 dim, u32 entry count, length-prefixed
    provider name, then per entry a length-prefixed tafsir id, u32 encoded
    verse key, and dim little-endian float32 components.
    """
    data = Path(path).read_bytes()
    r = Reader(data, str(path))
    check_magic(r, INDEX_MAGIC, "index")
    dim, count = struct.unpack("<II", r.take(8))
    (name_len,) = struct.unpack("<I", r.take(4))
    provider_name = r.take(name_len).decode("utf-8")
    index = VectorIndex(provider_name=provider_name, dim=dim)
    for _ in range(count):
        (tid_len,) = struct.unpack("<I", r.take(4))
        tafsir_id = r.take(tid_len).decode("utf-8")
        (encoded,) = struct.unpack("<I", r.take(4))
        try:
            key = VerseKey.from_encoded(encoded)
        except DomainError as e:
            raise FormatError(f"{path}: invalid verse key {encoded}") from e
        vector = np.frombuffer(r.take(4 * dim), dtype="<f4").copy()
        if not np.isfinite(vector).all():
            raise FormatError(f"{path}: non-finite vector for {tafsir_id}/{key}")
        index.entries.append(IndexEntry(tafsir_id, key, vector))
    r.done()
    return index
