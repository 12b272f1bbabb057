"""key=value configuration files for training and normalization settings."""

from dataclasses import fields
from pathlib import Path

from .embedding import TrainingConfig
from .errors import ParseError
from .textnorm import NormalizationConfig

_TRUE = {"true", "1", "yes", "on"}
_FALSE = {"false", "0", "no", "off"}


def load_config_file(path: str | Path) -> dict[str, str]:
    """Parse "key = value" lines; '#' comments and blanks are skipped."""
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ParseError(f"{path}:{lineno}: expected key=value")
            key, _, value = stripped.partition("=")
            values[key.strip()] = value.strip()
    return values


def _parse_bool(key: str, raw: str) -> bool:
    lowered = raw.casefold()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ParseError(f"config key {key}: expected a boolean, got {raw!r}")


def build_configs(
    values: dict[str, str], overrides: dict[str, object] | None = None
) -> tuple[TrainingConfig, NormalizationConfig]:
    """Merge file values and explicit overrides into the two config objects.

    Unknown keys are rejected so typos fail loudly. Overrides win over the
    file; both win over defaults.
    """
    train_fields = {f.name: f.type for f in fields(TrainingConfig)}
    norm_fields = {f.name for f in fields(NormalizationConfig)}
    train_kwargs: dict[str, object] = {}
    norm_kwargs: dict[str, object] = {}
    for key, raw in values.items():
        if key in train_fields:
            caster = float if key in ("initial_lr", "min_lr", "subsample_t") else int
            try:
                train_kwargs[key] = caster(raw)
            except ValueError as e:
                raise ParseError(f"config key {key}: {e}") from e
        elif key in norm_fields:
            norm_kwargs[key] = _parse_bool(key, raw)
        else:
            raise ParseError(f"unknown config key {key!r}")
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key in train_fields:
            train_kwargs[key] = value
        elif key in norm_fields:
            norm_kwargs[key] = value
        else:
            raise ParseError(f"unknown config key {key!r}")
    return TrainingConfig(**train_kwargs), NormalizationConfig(**norm_kwargs)
