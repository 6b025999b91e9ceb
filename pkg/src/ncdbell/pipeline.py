"""Experiment drivers behind the command line: S(theta) sweeps, the entropic
curve, compressor characterization and block statistics. Each driver returns
plain row dataclasses; :func:`write_csv` turns them into plot-ready CSV.
"""

import csv
import dataclasses
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .bitstrings import interleave
from .compressors import get_backend, overhead
from .entropy import binary_entropy, entropic_S_prime, settings_from_theta
from .ncd import PAIR_ORDER, quadrangle_S
from .quantum_sim import RNG_NAME, generate_correlated_pair, sample_pairs

MIN_BLOCK_BITS = 10**5


class InsufficientData(ValueError):
    pass


@dataclass(frozen=True)
class SweepRow:
    theta: float
    S: float
    d_a0b0: float
    d_a1b0: float
    d_a1b1: float
    d_a0b1: float
    backend: str
    joint_mode: str
    n_pairs: int
    seed: int


@dataclass(frozen=True)
class EntropicRow:
    theta: float
    S_prime: float
    visibility: float


@dataclass(frozen=True)
class BenchRow:
    study: str
    backend: str
    length: int
    p: float
    replicate: int
    entropy_bits: float
    compressed_bits: int
    overhead: float
    seed: int


@dataclass(frozen=True)
class SubdivisionStats:
    file_count: int
    bits_per_file: int
    mean_S: float
    std_S: float


def derive_seed(master, *key) -> int:
    """Stable 32-bit child seed for grid point ``key`` of a master seed."""
    ss = np.random.SeedSequence(master, spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1)[0])


def simulate_quadrangle(theta, n_pairs, visibility=1.0, seed=0, efficiencies=None):
    """Four runs, one per setting pair of the theta arrangement."""
    settings = settings_from_theta(theta)
    return {
        name: sample_pairs(a, b, n_pairs, visibility, efficiencies, seed=derive_seed(seed, k))
        for k, (name, (a, b)) in enumerate(settings.pairs().items())
    }


def sweep_point(theta, n_pairs, backend="lzma", joint_mode="interleave", visibility=1.0, seed=0):
    runs = simulate_quadrangle(theta, n_pairs, visibility, seed)
    q = quadrangle_S({k: (r.x, r.y) for k, r in runs.items()}, backend, joint_mode)
    return SweepRow(
        theta=float(theta),
        S=q.statistic,
        d_a0b0=q.d_a0b0,
        d_a1b0=q.d_a1b0,
        d_a1b1=q.d_a1b1,
        d_a0b1=q.d_a0b1,
        backend=get_backend(backend).id,
        joint_mode=joint_mode,
        n_pairs=int(n_pairs),
        seed=int(seed),
    )


def iter_sweep(theta_grid, n_pairs, backend="lzma", joint_mode="interleave", visibility=1.0,
               seed=0, jobs=1):
    """Yield one :class:`SweepRow` per grid angle, in grid order.

    Grid point ``i`` runs with ``derive_seed(seed, i)``, so ``jobs`` never
    changes the numbers.
    """
    thetas = [float(t) for t in theta_grid]
    for t in thetas:
        settings_from_theta(t)  # validate the grid before any work
    tasks = [(t, derive_seed(seed, i)) for i, t in enumerate(thetas)]

    def run(task):
        t, s = task
        return sweep_point(t, n_pairs, backend, joint_mode, visibility, s)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            yield from pool.map(run, tasks)
    else:
        for task in tasks:
            yield run(task)


def sweep(theta_grid, n_pairs, backend="lzma", joint_mode="interleave", visibility=1.0, seed=0, jobs=1):
    return list(iter_sweep(theta_grid, n_pairs, backend, joint_mode, visibility, seed, jobs))


def entropic_curve(theta_grid, visibility=1.0):
    return [EntropicRow(float(t), entropic_S_prime(t, visibility), float(visibility)) for t in theta_grid]


def bench_lengths(lengths, backends=("lzma", "bzip2", "deflate", "lzw"), repeats=1, seed=0):
    """Q versus length for balanced random strings (entropy = length)."""
    rows = []
    for i, n in enumerate(lengths):
        if n < 1000:
            raise ValueError(f"benchmark lengths must be at least 1000 bits, got {n}")
        for r in range(repeats):
            s = derive_seed(seed, 0, i, r)
            x, _ = generate_correlated_pair(int(n), 0.0, seed=s)
            for b in backends:
                rep = overhead(b, x, float(n))
                rows.append(BenchRow("length", rep.backend, int(n), 0.5, r, rep.entropy_bits,
                                     rep.compressed_bits, rep.overhead, s))
    return rows


def bench_correlation(p_grid, n_pairs, backends=("lzma", "bzip2", "deflate"), seed=0):
    """Q versus flip probability for interleaved correlated pairs.

    The pair source carries 1 + h(p) bits per pair; Q divides by the 2 n bits
    of the interleaved string.
    """
    if n_pairs < 1000:
        raise ValueError(f"pair length must be at least 1000 bits, got {n_pairs}")
    rows = []
    for i, p in enumerate(p_grid):
        s = derive_seed(seed, 1, i)
        x, y = generate_correlated_pair(int(n_pairs), float(p), seed=s)
        xy = interleave(x, y)
        h = n_pairs * (1.0 + binary_entropy(float(p)))
        for b in backends:
            rep = overhead(b, xy, h)
            rows.append(BenchRow("correlation", rep.backend, len(xy), float(p), 0, rep.entropy_bits,
                                 rep.compressed_bits, rep.overhead, s))
    return rows


def block_statistics(runs, bits_per_file, backend="lzma", joint_mode="interleave"):
    """Split four per-setting runs into aligned contiguous blocks and compute S per block.

    ``runs`` maps ``a0b0``, ``a1b0``, ``a1b1``, ``a0b1`` to runs (anything
    with ``x``/``y`` bit strings). Returns ``(SubdivisionStats, block S values)``.
    """
    if bits_per_file < MIN_BLOCK_BITS:
        raise InsufficientData(
            f"blocks of {bits_per_file} bits are below the {MIN_BLOCK_BITS}-bit floor "
            "where compressor overhead settles"
        )
    shortest = min(len(runs[k].x) for k in PAIR_ORDER)
    count = shortest // bits_per_file
    if count < 2:
        raise InsufficientData(
            f"need at least 2 blocks of {bits_per_file} bits, shortest stream holds {shortest}"
        )
    values = []
    for i in range(count):
        lo, hi = i * bits_per_file, (i + 1) * bits_per_file
        pairs = {k: (runs[k].x[lo:hi], runs[k].y[lo:hi]) for k in PAIR_ORDER}
        values.append(quadrangle_S(pairs, backend, joint_mode).statistic)
    values = np.array(values)
    stats = SubdivisionStats(
        file_count=count,
        bits_per_file=int(bits_per_file),
        mean_S=float(values.mean()),
        std_S=float(values.std(ddof=1)),
    )
    return stats, values


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (float, np.floating)):
        return f"{value:.6g}"
    return str(value)


def write_csv(rows, stream, meta=None, row_type=None):
    """Header of field names, a ``#`` metadata line, then one line per row.

    Rows may be a generator; each row is flushed as it is produced.
    """
    rows = iter(rows)
    first = next(rows, None)
    row_type = row_type or type(first)
    names = [f.name for f in dataclasses.fields(row_type)]
    info = {"version": __version__, "rng": RNG_NAME}
    info.update(meta or {})
    stream.write("# ncdbell " + " ".join(f"{k}={v}" for k, v in info.items()) + "\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(names)
    if first is None:
        return
    for row in itertools.chain([first], rows):
        writer.writerow([_fmt(getattr(row, n)) for n in names])
        stream.flush()


def read_csv(path):
    """Parse a CSV written by :func:`write_csv` into (metadata dict, list of row dicts)."""
    meta = {}
    rows = []
    with open(path, newline="") as fh:
        lines = []
        for line in fh:
            if line.startswith("#"):
                for item in line[1:].split()[1:]:
                    k, _, v = item.partition("=")
                    meta[k] = v
            else:
                lines.append(line)
    for row in csv.DictReader(lines):
        rows.append(row)
    return meta, rows
