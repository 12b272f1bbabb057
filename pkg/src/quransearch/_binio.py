"""Shared plumbing for the binary model and index file formats."""

from .errors import FormatError


class Reader:
    """Exact-length reads over a byte buffer; short reads are format errors."""

    def __init__(self, data: bytes, name: str):
        self.data = data
        self.pos = 0
        self.name = name

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise FormatError(f"{self.name}: truncated file")
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def done(self) -> None:
        if self.pos != len(self.data):
            raise FormatError(f"{self.name}: {len(self.data) - self.pos} trailing bytes")


def check_magic(reader: Reader, magic: bytes, kind: str) -> None:
    """Accept the exact magic; same family with another version is its own error."""
    got = reader.take(len(magic))
    if got == magic:
        return
    if got[:-2] == magic[:-2]:
        raise FormatError(
            f"{reader.name}: unsupported {kind} format version "
            f"{got[-2:].decode('ascii', 'replace')!r}"
        )
    raise FormatError(f"{reader.name}: bad magic {got!r}")
