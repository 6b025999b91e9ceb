"""Bit-exact strings and the ``NCDB`` on-disk format.

A :class:`BitString` keeps its bits packed (MSB first) together with an exact
bit count, so strings whose length is not a multiple of 8 survive every
operation without picking up padding.

File layout::

    offset  size  field
    0       4     magic b"NCDB"
    4       1     format version (1)
    5       8     bit count, little-endian unsigned
    13      ...   payload, ceil(count / 8) bytes, low bits of the last byte zero
"""

import struct

import numpy as np

MAGIC = b"NCDB"
VERSION = 1
_HEADER = struct.Struct("<4sBQ")


class LengthMismatch(ValueError):
    pass


class BitFileError(Exception):
    """Base class for unreadable ``NCDB`` files."""


class MalformedHeader(BitFileError):
    pass


class TruncatedPayload(BitFileError):
    pass


class BitString:
    """Immutable sequence of bits with an exact length."""

    __slots__ = ("_packed", "_length")

    def __init__(self, packed=b"", length=None):
        packed = bytes(packed)
        if length is None:
            length = 8 * len(packed)
        if length < 0 or (length + 7) // 8 != len(packed):
            raise ValueError(f"{len(packed)} packed bytes cannot hold exactly {length} bits")
        tail = length % 8
        if tail and packed[-1] & ((1 << (8 - tail)) - 1):
            # normalise so equal bit content means equal packed bytes
            packed = packed[:-1] + bytes([packed[-1] & (0xFF << (8 - tail)) & 0xFF])
        self._packed = packed
        self._length = length

    @classmethod
    def from_bits(cls, bits):
        """Build from any iterable/array of 0/1 values."""
        arr = np.asarray(bits, dtype=np.uint8).ravel()
        if arr.size and arr.max() > 1:
            raise ValueError("bits must be 0 or 1")
        return cls(np.packbits(arr).tobytes(), arr.size)

    @classmethod
    def from_str(cls, text):
        return cls.from_bits([int(c) for c in text])

    @property
    def packed(self) -> bytes:
        """Payload bytes as fed to compressors (no header)."""
        return self._packed

    def to_numpy(self) -> np.ndarray:
        """Bits as a fresh ``uint8`` array of 0/1 values."""
        return np.unpackbits(np.frombuffer(self._packed, dtype=np.uint8), count=self._length)

    def __len__(self):
        return self._length

    def __getitem__(self, i):
        if isinstance(i, slice):
            return BitString.from_bits(self.to_numpy()[i])
        if i < 0:
            i += self._length
        if not 0 <= i < self._length:
            raise IndexError(f"bit index {i} out of range for length {self._length}")
        return (self._packed[i >> 3] >> (7 - (i & 7))) & 1

    def __eq__(self, other):
        if not isinstance(other, BitString):
            return NotImplemented
        return self._length == other._length and self._packed == other._packed

    def __hash__(self):
        return hash((self._length, self._packed))

    def __str__(self):
        return "".join(map(str, self.to_numpy()))

    def __repr__(self):
        if self._length <= 64:
            return f"BitString('{self}')"
        return f"BitString(<{self._length} bits>)"

    def count_ones(self) -> int:
        return int(np.unpackbits(np.frombuffer(self._packed, dtype=np.uint8)).sum())


def concat(x: BitString, y: BitString) -> BitString:
    if len(x) % 8 == 0:
        return BitString(x.packed + y.packed, len(x) + len(y))
    return BitString.from_bits(np.concatenate([x.to_numpy(), y.to_numpy()]))


def interleave(x: BitString, y: BitString) -> BitString:
    """Per-bit merge ``x0 y0 x1 y1 ...``; both inputs must have equal length."""
    if len(x) != len(y):
        raise LengthMismatch(f"cannot interleave strings of length {len(x)} and {len(y)}")
    out = np.empty(2 * len(x), dtype=np.uint8)
    out[0::2] = x.to_numpy()
    out[1::2] = y.to_numpy()
    return BitString.from_bits(out)


def write_file(x: BitString, path):
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, len(x)))
        fh.write(x.packed)


def read_file(path) -> BitString:
    """Read an ``NCDB`` file; I/O failures surface as :class:`OSError`."""
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
        if len(header) < _HEADER.size:
            raise MalformedHeader(f"{path}: file too short for an NCDB header")
        magic, version, nbits = _HEADER.unpack(header)
        if magic != MAGIC:
            raise MalformedHeader(f"{path}: bad magic {magic!r}")
        if version != VERSION:
            raise MalformedHeader(f"{path}: unsupported format version {version}")
        nbytes = (nbits + 7) // 8
        payload = fh.read(nbytes)
        if len(payload) < nbytes:
            raise TruncatedPayload(f"{path}: expected {nbytes} payload bytes, found {len(payload)}")
        if fh.read(1):
            raise BitFileError(f"{path}: trailing bytes after {nbits}-bit payload")
    return BitString(payload, nbits)


__all__ = [
    "BitString", "concat", "interleave", "write_file", "read_file",
    "LengthMismatch", "BitFileError", "MalformedHeader", "TruncatedPayload",
]
