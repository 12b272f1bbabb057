"""Arabic text normalization and tokenization.

The same pipeline is applied to corpus documents and to user prompts, so
a prompt can only match commentary if both went through identical folding.
"""

import re
import string
from dataclasses import dataclass, fields

# Arabic combining marks (tashkeel) plus the dagger alef.
_DIACRITICS_RE = re.compile(r"[ً-ٰٟ]")

_ALEF_RE = re.compile(r"[آأإ]")  # آ أ إ -> ا
_YAA = "ى"  # ى -> ي
_TAA_MARBUTA = "ة"  # ة -> ه
_TATWEEL = "ـ"

# ASCII punctuation plus the common Arabic punctuation and ornate signs.
_PUNCT_CHARS = string.punctuation + (
    "،"  # arabic comma
    "؛"  # arabic semicolon
    "؟"  # arabic question mark
    "٪"  # arabic percent sign
    "٫"  # arabic decimal separator
    "٬"  # arabic thousands separator
    "٭"  # arabic five pointed star
    "۔"  # arabic full stop
    "﴾"  # ornate left parenthesis
    "﴿"  # ornate right parenthesis
    "«"  # left guillemet
    "»"  # right guillemet
)
_PUNCT_RE = re.compile("[" + re.escape(_PUNCT_CHARS) + "]")

_WS_RE = re.compile(r"\s+")


@dataclass(frozen=True)
class NormalizationConfig:
    """Flags gating each normalization step; all on by default.

    The configuration travels inside a trained model file so prompt
    processing always matches what the model was trained on.
    """

    strip_diacritics: bool = True
    normalize_alef: bool = True
    normalize_yaa: bool = True
    normalize_taa_marbuta: bool = True
    remove_tatweel: bool = True
    strip_punct: bool = True

    def to_bytes(self) -> bytes:
        return bytes(int(getattr(self, f.name)) for f in fields(self))

    @classmethod
    def from_bytes(cls, raw: bytes) -> "NormalizationConfig":
        names = [f.name for f in fields(cls)]
        if len(raw) != len(names):
            raise ValueError(f"expected {len(names)} flag bytes, got {len(raw)}")
        return cls(**{name: bool(b) for name, b in zip(names, raw)})


def normalize_arabic(text: str, cfg: NormalizationConfig | None = None) -> str:
    """Fold Arabic letter variants and strip marks per the config flags.

    Steps (each gated): remove tashkeel marks U+064B..U+065F and U+0670,
    fold alef variants to bare alef, alef maqsura to yaa, taa marbuta to
    haa, drop tatweel, replace punctuation with spaces, collapse and trim
    whitespace. Total function: any input string is accepted.
    """
    if cfg is None:
        cfg = NormalizationConfig()
    s = text
    if cfg.strip_diacritics:
        s = _DIACRITICS_RE.sub("", s)
    if cfg.normalize_alef:
        s = _ALEF_RE.sub("ا", s)
    if cfg.normalize_yaa:
        s = s.replace(_YAA, "ي")
    if cfg.normalize_taa_marbuta:
        s = s.replace(_TAA_MARBUTA, "ه")
    if cfg.remove_tatweel:
        s = s.replace(_TATWEEL, "")
    if cfg.strip_punct:
        s = _PUNCT_RE.sub(" ", s)
    return _WS_RE.sub(" ", s).strip()


def tokenize(text: str) -> list[str]:
    """Whitespace tokenization; drops empty tokens, preserves order."""
    return text.split()


def preprocess_document(raw: str, cfg: NormalizationConfig | None = None) -> list[str]:
    """Normalize then tokenize. Shared by corpus documents and prompts."""
    return tokenize(normalize_arabic(raw, cfg))
