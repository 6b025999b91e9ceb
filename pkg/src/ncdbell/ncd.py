"""Normalized Compression Distance and the quadrangle statistic S."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .bitstrings import BitString, LengthMismatch, concat, interleave
from .compressors import EmptyInput, compressed_size, get_backend

JOINT_MODES = ("interleave", "concat")
PAIR_ORDER = ("a0b0", "a1b0", "a1b1", "a0b1")


@dataclass(frozen=True)
class QuadrangleResult:
    d_a0b0: float
    d_a1b0: float
    d_a1b1: float
    d_a0b1: float
    statistic: float
    mode: str

    @classmethod
    def from_distances(cls, d_a0b0, d_a1b0, d_a1b1, d_a0b1, mode="compression"):
        return cls(
            d_a0b0=d_a0b0,
            d_a1b0=d_a1b0,
            d_a1b1=d_a1b1,
            d_a0b1=d_a0b1,
            statistic=quadrangle_statistic(d_a0b0, d_a1b0, d_a1b1, d_a0b1),
            mode=mode,
        )

    def distances(self):
        return {name: getattr(self, "d_" + name) for name in PAIR_ORDER}


def quadrangle_statistic(d_a0b0, d_a1b0, d_a1b1, d_a0b1):
    """S = d(a0,b1) - d(a0,b0) - d(a1,b0) - d(a1,b1); non-positive for local machines."""
    return d_a0b1 - d_a0b0 - d_a1b0 - d_a1b1


def joint(x: BitString, y: BitString, joint_mode="interleave") -> BitString:
    if joint_mode == "interleave":
        return interleave(x, y)
    if joint_mode == "concat":
        return concat(x, y)
    raise ValueError(f"joint_mode must be one of {JOINT_MODES}, got {joint_mode!r}")


def ncd(x: BitString, y: BitString, backend="lzma", joint_mode="interleave") -> float:
    """(C(x,y) - min(C(x), C(y))) / max(C(x), C(y)).

    Not clipped to [0, 1]: codec overhead may push it slightly above 1.
    """
    if len(x) == 0 or len(y) == 0:
        raise EmptyInput("NCD needs two non-empty strings")
    if joint_mode == "interleave" and len(x) != len(y):
        raise LengthMismatch(f"interleaved NCD needs equal lengths, got {len(x)} and {len(y)}")
    backend = get_backend(backend)
    cx = compressed_size(backend, x)
    cy = compressed_size(backend, y)
    cxy = compressed_size(backend, joint(x, y, joint_mode))
    return (cxy - min(cx, cy)) / max(cx, cy)


def quadrangle_S(pairs, backend="lzma", joint_mode="interleave", workers=1) -> QuadrangleResult:
    """Compression quadrangle from four (x, y) string pairs.

    ``pairs`` maps each of ``a0b0``, ``a1b0``, ``a1b1``, ``a0b1`` to the
    (Alice, Bob) strings recorded at that setting combination.
    """
    missing = [k for k in PAIR_ORDER if k not in pairs]
    if missing:
        raise KeyError(f"missing setting pairs: {missing}")
    backend = get_backend(backend)

    def one(name):
        x, y = pairs[name]
        return ncd(x, y, backend, joint_mode)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(one, PAIR_ORDER))
    else:
        values = [one(name) for name in PAIR_ORDER]
    return QuadrangleResult.from_distances(*values, mode="compression")
