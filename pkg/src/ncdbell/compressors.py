"""Lossless compressor backends used as complexity estimators.

Every backend maps a byte payload to compressed bytes; :func:`compressed_size`
reports the result in bits. The three stock codecs are driven at their
strongest settings, and container headers stay in the count (they are a few
bytes and vanish against payloads of 10**5 bits or more).
"""

import bz2
import zlib
from dataclasses import dataclass
from typing import Callable

from . import lzw
from .bitstrings import BitString

try:
    import lzma
except ImportError:  # pragma: no cover
    lzma = None


class EmptyInput(ValueError):
    pass


class BackendUnavailable(RuntimeError):
    pass


@dataclass(frozen=True)
class CompressorBackend:
    id: str
    description: str
    compress: Callable[[bytes], bytes]
    decompress: Callable[[bytes], bytes]

    def measure(self, payload: bytes) -> int:
        """Compressed size of ``payload`` in bits."""
        if not payload:
            raise EmptyInput(f"{self.id}: cannot measure an empty payload")
        return 8 * len(self.compress(payload))


# Literal, position and match contexts off: outcome bits carry no byte-level
# structure, so those contexts only slow the adaptive model down.
LZMA_OPTIONS = {"preset": 9 | (lzma.PRESET_EXTREME if lzma else 0), "lc": 0, "lp": 0, "pb": 0}


def _require_lzma():
    if lzma is None:  # pragma: no cover
        raise BackendUnavailable("lzma support is missing from this Python build")


def _lzma_compress(payload):
    _require_lzma()
    # legacy .lzma container (LZMA1, no integrity check), dictionary covering the payload
    filt = dict(LZMA_OPTIONS, id=lzma.FILTER_LZMA1, dict_size=min(max(len(payload), 4096), 1 << 30))
    return lzma.compress(payload, format=lzma.FORMAT_ALONE, filters=[filt])


def _lzma_decompress(blob):
    _require_lzma()
    return lzma.decompress(blob, format=lzma.FORMAT_ALONE)


def _deflate_compress(payload):
    # Z_FILTERED keeps LZ77 but only for matches of 6+ bytes; short chance
    # matches in near-random bytes cost more than they save
    co = zlib.compressobj(9, zlib.DEFLATED, -15, 9, zlib.Z_FILTERED)
    return co.compress(payload) + co.flush()


def _deflate_decompress(blob):
    return zlib.decompress(blob, -15)


def _bzip2_compress(payload):
    return bz2.compress(payload, 9)


BACKENDS = {
    b.id: b
    for b in (
        CompressorBackend("lzma", "Lempel-Ziv-Markov chain (LZMA1, preset 9e, lc=lp=pb=0)", _lzma_compress, _lzma_decompress),
        CompressorBackend("bzip2", "Burrows-Wheeler block sorting (900k blocks)", _bzip2_compress, bz2.decompress),
        CompressorBackend("deflate", "DEFLATE, raw stream, level 9, filtered strategy", _deflate_compress, _deflate_decompress),
        CompressorBackend("lzw", "Lempel-Ziv-Welch, 9-16 bit codes", lzw.compress, lzw.decompress),
    )
}


def get_backend(backend) -> CompressorBackend:
    """Resolve a backend id. Objects with ``id`` and ``measure`` pass through."""
    if hasattr(backend, "measure"):
        return backend
    try:
        return BACKENDS[backend]
    except KeyError:
        raise BackendUnavailable(
            f"unknown compressor {backend!r}; choose from {', '.join(BACKENDS)}"
        ) from None


def compressed_size(backend, x: BitString) -> int:
    """C(x): compressed length of the packed payload of ``x``, in bits."""
    if len(x) == 0:
        raise EmptyInput("cannot compress an empty bit string")
    return get_backend(backend).measure(x.packed)


@dataclass(frozen=True)
class OverheadReport:
    backend: str
    length: int
    entropy_bits: float
    compressed_bits: int
    overhead: float


def overhead(backend, x: BitString, source_entropy_bits: float) -> OverheadReport:
    """Compression overhead Q = (C(x) - H) / l(x) for a source of known entropy."""
    if source_entropy_bits < 0:
        raise ValueError("source entropy must be non-negative")
    backend = get_backend(backend)
    c = compressed_size(backend, x)
    return OverheadReport(
        backend=backend.id,
        length=len(x),
        entropy_bits=float(source_entropy_bits),
        compressed_bits=c,
        overhead=(c - source_entropy_bits) / len(x),
    )
