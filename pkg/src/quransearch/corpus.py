"""Qur'an and tafsir corpus loading, verse-reference parsing, and alignment.

The corpus layout on disk is one folder per tafsir, each holding per-surah
JSON files named with zero-padded surah numbers ("001.json" .. "114.json"),
where every record carries a verse reference ("vref") and the commentary
text. Ranged references are expanded so the commentary is replicated onto
every covered verse.
"""

import csv
import json
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    AlignmentError,
    DomainError,
    DuplicateError,
    IngestError,
    ParseError,
    ValidationError,
)

SURAH_COUNT = 114
CANONICAL_VERSE_COUNT = 6236

# Verse keys are packed as surah*1000 + ayah; no surah has 1000 ayahs
# (the longest has 286), so the packing is injective.
KEY_MULTIPLIER = 1000


def encode_verse_key(surah: int, ayah: int) -> int:
    """Pack (surah, ayah) into the single integer identifier."""
    if not 1 <= surah <= SURAH_COUNT:
        raise DomainError(f"surah {surah} outside 1..{SURAH_COUNT}")
    if ayah < 1:
        raise DomainError(f"ayah {ayah} must be positive")
    return surah * KEY_MULTIPLIER + ayah


def decode_verse_key(encoded: int) -> tuple[int, int]:
    """Exact inverse of encode_verse_key."""
    surah, ayah = divmod(encoded, KEY_MULTIPLIER)
    if not 1 <= surah <= SURAH_COUNT:
        raise DomainError(f"encoded key {encoded}: surah {surah} outside 1..{SURAH_COUNT}")
    if ayah == 0:
        raise DomainError(f"encoded key {encoded}: ayah part is zero")
    return surah, ayah


@dataclass(frozen=True, order=True)
class VerseKey:
    """Numeric identity of a single verse."""

    surah: int
    ayah: int

    @property
    def encoded(self) -> int:
        return encode_verse_key(self.surah, self.ayah)

    @classmethod
    def from_encoded(cls, encoded: int) -> "VerseKey":
        surah, ayah = decode_verse_key(encoded)
        return cls(surah, ayah)

    def __str__(self) -> str:
        return f"{self.surah}:{self.ayah}"


@dataclass(frozen=True)
class Verse:
    key: VerseKey
    text: str


@dataclass(frozen=True)
class VerseRef:
    """A commentary's verse coverage: one verse or an inclusive range."""

    start: int
    end: int

    def __post_init__(self):
        if self.start < 1 or self.end < 1:
            raise DomainError(f"verse numbers must be positive: {self.start}-{self.end}")
        if self.start > self.end:
            raise DomainError(f"range start {self.start} exceeds end {self.end}")

    @property
    def is_single(self) -> bool:
        return self.start == self.end


@dataclass(frozen=True)
class TafsirEntry:
    surah: int
    vref: VerseRef
    commentary: str


@dataclass(frozen=True)
class AlignedRow:
    """One (verse, commentary) pair; ranged commentary repeats per verse."""

    key: VerseKey
    ayah_text: str
    tafsir_text: str


_NUM_RE = re.compile(r"^\d+$")


def _parse_verse_number(token: str) -> int:
    token = token.strip()
    if not _NUM_RE.match(token):
        raise ParseError(f"verse reference part is not a number: {token!r}")
    n = int(token)
    if n < 1:
        raise ParseError(f"verse number must be positive: {token!r}")
    return n


def parse_verse_ref(raw: str) -> VerseRef:
    """Parse "N" or "A-B"; reversed ranges are normalized to ascending."""
    raw = raw.strip()
    if not raw:
        raise ParseError("empty verse reference")
    if "-" in raw:
        parts = raw.split("-")
        if len(parts) != 2:
            raise ParseError(f"malformed verse range: {raw!r}")
        a, b = (_parse_verse_number(p) for p in parts)
        return VerseRef(min(a, b), max(a, b))
    n = _parse_verse_number(raw)
    return VerseRef(n, n)


def expand_verse_ref(surah: int, ref: VerseRef) -> list[VerseKey]:
    """All verse keys covered by the reference, in ascending order."""
    if not 1 <= surah <= SURAH_COUNT:
        raise DomainError(f"surah {surah} outside 1..{SURAH_COUNT}")
    return [VerseKey(surah, ayah) for ayah in range(ref.start, ref.end + 1)]


def load_quran_text(path: str | Path, validate: bool = False) -> list[Verse]:
    """Load a pipe-delimited Qur'an file of "surah|ayah|text" lines.

    Lines starting with '#' and blank lines are ignored. With validate=True
    the full canonical shape (114 surahs, 6,236 verses) is asserted.
    """
    path = Path(path)
    verses: list[Verse] = []
    seen: set[int] = set()
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("|", 2)
            if len(parts) != 3:
                raise ParseError(f"{path}:{lineno}: expected surah|ayah|text")
            s_str, a_str, text = parts
            if not (_NUM_RE.match(s_str.strip()) and _NUM_RE.match(a_str.strip())):
                raise ParseError(f"{path}:{lineno}: non-numeric surah or ayah")
            try:
                key = VerseKey(int(s_str), int(a_str))
                encoded = key.encoded
            except DomainError as e:
                raise ParseError(f"{path}:{lineno}: {e}") from e
            if not text.strip():
                raise ParseError(f"{path}:{lineno}: empty verse text")
            if encoded in seen:
                raise DuplicateError(f"{path}:{lineno}: duplicate verse key {key}")
            seen.add(encoded)
            verses.append(Verse(key, text))
    if validate:
        surahs = {v.key.surah for v in verses}
        if len(verses) != CANONICAL_VERSE_COUNT or len(surahs) != SURAH_COUNT:
            raise ValidationError(
                f"{path}: expected {SURAH_COUNT} surahs / {CANONICAL_VERSE_COUNT} verses, "
                f"got {len(surahs)} / {len(verses)}"
            )
    return verses


def index_verses(verses: list[Verse]) -> dict[int, Verse]:
    """Lookup table from encoded verse key to verse."""
    return {v.key.encoded: v for v in verses}


def load_tafsir_corpus(root_dir: str | Path) -> dict[str, list[TafsirEntry]]:
    """Load every tafsir folder under root_dir.

    Missing per-surah files are simply absent surahs, not errors. Entries
    keep file order within each surah; surahs are visited in ascending
    number; tafsir folders in sorted name order.
    """
    root = Path(root_dir)
    if not root.is_dir():
        raise IngestError(f"corpus root is not a directory: {root}")
    corpus: dict[str, list[TafsirEntry]] = {}
    for folder in sorted(p for p in root.iterdir() if p.is_dir()):
        tafsir_id = folder.name
        entries: list[TafsirEntry] = []
        for surah in range(1, SURAH_COUNT + 1):
            fpath = folder / f"{surah:03d}.json"
            if not fpath.exists():
                continue
            try:
                with open(fpath, encoding="utf-8") as f:
                    records = json.load(f)
            except (OSError, json.JSONDecodeError) as e:
                raise IngestError(f"tafsir {tafsir_id!r} surah {surah}: {e}") from e
            if not isinstance(records, list):
                raise IngestError(
                    f"tafsir {tafsir_id!r} surah {surah}: expected a JSON array"
                )
            for i, rec in enumerate(records):
                if not isinstance(rec, dict) or "vref" not in rec or "text" not in rec:
                    raise IngestError(
                        f"tafsir {tafsir_id!r} surah {surah}: record {i} "
                        "missing 'vref' or 'text'"
                    )
                commentary = str(rec["text"])
                if not commentary.strip():
                    raise IngestError(
                        f"tafsir {tafsir_id!r} surah {surah}: record {i} has empty text"
                    )
                try:
                    vref = parse_verse_ref(str(rec["vref"]))
                except ParseError as e:
                    raise IngestError(
                        f"tafsir {tafsir_id!r} surah {surah}: record {i}: {e}"
                    ) from e
                entries.append(TafsirEntry(surah, vref, commentary))
        corpus[tafsir_id] = entries
    return corpus


def align_tafsir_to_verses(
    entries: list[TafsirEntry], quran: list[Verse]
) -> list[AlignedRow]:
    """Expand entries onto verses and attach each verse's own text.

    One row per (entry, covered verse); rows are sorted by encoded key
    (stable, so overlapping entries keep file order). Row positions are
    what the vector index later refers to.
    """
    lookup = index_verses(quran)
    rows: list[AlignedRow] = []
    for entry in entries:
        for key in expand_verse_ref(entry.surah, entry.vref):
            verse = lookup.get(key.encoded)
            if verse is None:
                raise AlignmentError(f"verse {key} not present in the loaded Qur'an")
            rows.append(AlignedRow(key, verse.text, entry.commentary))
    rows.sort(key=lambda r: r.key.encoded)
    return rows


CSV_HEADER = ["Ayah", "tafsir"]
EXPORT_DIR_NAME = "tafsir_csv"


def export_alignment_table(
    rows: list[AlignedRow], out_dir: str | Path, tafsir_id: str
) -> Path:
    """Write the two-column alignment CSV under <out_dir>/tafsir_csv/."""
    if not rows:
        raise ValueError("refusing to export an empty alignment table")
    for row in rows:
        if "\x00" in row.ayah_text or "\x00" in row.tafsir_text:
            # CSV cannot represent NUL; surface it before the csv module chokes
            raise ValueError(f"row {row.key}: text contains a NUL character")
    target_dir = Path(out_dir) / EXPORT_DIR_NAME
    target_dir.mkdir(parents=True, exist_ok=True)
    out_path = target_dir / f"{tafsir_id}.csv"
    with open(out_path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow([row.ayah_text, row.tafsir_text])
    return out_path


def import_alignment_table(path: str | Path) -> list[tuple[str, str]]:
    """Read back an exported table as (ayah_text, tafsir_text) pairs.

    Verse keys are positional in this format: row i corresponds to index
    entry i, so only the two text columns are stored.
    """
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != CSV_HEADER:
            raise ParseError(f"{path}: expected header {CSV_HEADER}, got {header}")
        pairs = []
        for rec in reader:
            if len(rec) != 2:
                raise ParseError(f"{path}: row with {len(rec)} fields")
            pairs.append((rec[0], rec[1]))
    return pairs


# A topic index maps a canonical topic name to sorted, deduplicated keys.
TopicIndex = dict[str, list[VerseKey]]


def canonical_topic(name: str) -> str:
    return name.strip().casefold()


def merge_topic_indexes(a: TopicIndex, b: TopicIndex) -> TopicIndex:
    """Union of two indexes: topics case-folded, verse lists deduplicated."""
    merged: dict[str, set[VerseKey]] = {}
    for source in (a, b):
        for topic, keys in source.items():
            name = canonical_topic(topic)
            if not name:
                continue
            merged.setdefault(name, set()).update(keys)
    return {
        topic: sorted(keys, key=lambda k: k.encoded)
        for topic, keys in sorted(merged.items())
    }


def load_topic_index(path: str | Path) -> TopicIndex:
    """Parse a "topic<TAB>s:a[,s:a...]" file into a topic index."""
    index: TopicIndex = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            if "\t" not in line:
                raise ParseError(f"{path}:{lineno}: missing tab separator")
            topic, _, keys_str = line.partition("\t")
            topic = canonical_topic(topic)
            if not topic:
                raise ParseError(f"{path}:{lineno}: empty topic name")
            keys = []
            for token in keys_str.split(","):
                token = token.strip()
                if ":" not in token:
                    raise ParseError(f"{path}:{lineno}: bad verse key {token!r}")
                s_str, _, a_str = token.partition(":")
                if not (_NUM_RE.match(s_str) and _NUM_RE.match(a_str)):
                    raise ParseError(f"{path}:{lineno}: bad verse key {token!r}")
                try:
                    keys.append(VerseKey(int(s_str), int(a_str)))
                except DomainError as e:
                    raise ParseError(f"{path}:{lineno}: {e}") from e
            index = merge_topic_indexes(index, {topic: keys})
    return index


def save_topic_index(index: TopicIndex, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for topic in sorted(index, key=canonical_topic):
            keys = ",".join(str(k) for k in index[topic])
            f.write(f"{topic}\t{keys}\n")
