"""Exception types shared across the package."""


class QuranSearchError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(QuranSearchError):
    """Malformed textual input (verse reference, corpus line, prompt file)."""


class DomainError(QuranSearchError):
    """A value outside its valid domain (surah/ayah bounds, vector shapes)."""


class DuplicateError(QuranSearchError):
    """The same verse key appeared twice in a Qur'an source file."""


class ValidationError(QuranSearchError):
    """A loaded corpus failed a whole-corpus sanity check."""


class IngestError(QuranSearchError):
    """A tafsir corpus file could not be read or has the wrong structure."""


class AlignmentError(QuranSearchError):
    """A commentary entry covers a verse absent from the loaded Qur'an."""


class TrainError(QuranSearchError):
    """Training cannot proceed (empty vocabulary, degenerate corpus)."""


class NumericError(QuranSearchError):
    """Training produced a non-finite loss."""


class EmptyEmbeddingError(QuranSearchError):
    """No in-vocabulary token was found, so no document vector exists."""


class ProviderError(QuranSearchError):
    """A remote embedding provider failed or returned an unusable vector."""


class IndexBuildError(QuranSearchError):
    """Index construction produced zero usable entries."""


class QueryError(QuranSearchError):
    """A search query cannot be answered (no searchable terms, bad filter)."""


class FormatError(QuranSearchError):
    """A persisted model or index file is corrupt or has an unknown version."""
