"""Command line front end: ``ncdbell <verb> [options]``.

Verbs: simulate, sweep, entropic, bench, ncd, symmetrize, stats. CSV goes to
``--out`` (stdout by default). Failures exit non-zero after printing one
JSON error line to stderr.
"""

import argparse
import contextlib
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import pipeline
from .bitstrings import read_file
from .compressors import BACKENDS
from .entropy import settings_from_theta, singlet_joint_distribution
from .ncd import JOINT_MODES, PAIR_ORDER, ncd
from .quantum_sim import (
    EfficiencySet,
    load_run,
    pattern_detection_efficiencies,
    sample_pairs,
    save_run,
    symmetrization_settings,
    symmetrize,
)

PATTERNS = ("00", "01", "10", "11")


@dataclass(frozen=True)
class NCDRow:
    x_file: str
    y_file: str
    length_x: int
    length_y: int
    backend: str
    joint_mode: str
    ncd: float


@dataclass(frozen=True)
class RunRow:
    name: str
    angle_a: float
    angle_b: float
    requested_pairs: int
    detected_pairs: int
    seed: int
    meta_file: str


@dataclass(frozen=True)
class EfficiencyRow:
    stream: str
    pattern: str
    count: int
    expected_emitted: float
    efficiency: float
    target: float


def _grid(args):
    if args.thetas:
        return [float(t) for t in args.thetas]
    start, stop, step = args.grid
    n = int(round((stop - start) / step)) + 1
    return [round(start + i * step, 10) for i in range(n)]


@contextlib.contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _meta(args, **extra):
    meta = {"command": args.command, "seed": args.seed}
    meta.update(extra)
    return meta


def cmd_simulate(args):
    out_dir = Path(args.dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    eff = EfficiencySet(*args.eta)
    if args.angles is not None:
        jobs = {"run": tuple(args.angles)}
    else:
        jobs = settings_from_theta(args.theta).pairs()
    rows = []
    for k, (name, (a, b)) in enumerate(jobs.items()):
        seed = pipeline.derive_seed(args.seed, k)
        run = sample_pairs(a, b, args.n_pairs, args.visibility, eff, seed=seed)
        meta = save_run(run, out_dir / name)
        rows.append(RunRow(name, a, b, run.requested_pairs, run.detected_pairs, seed, str(meta)))
    with _output(args.out) as fh:
        pipeline.write_csv(rows, fh, _meta(args, visibility=args.visibility), RunRow)


def cmd_sweep(args):
    rows = pipeline.iter_sweep(
        _grid(args), args.n_pairs, args.backend, args.joint_mode, args.visibility, args.seed, args.jobs
    )
    meta = _meta(args, backend=args.backend, joint_mode=args.joint_mode, visibility=args.visibility)
    with _output(args.out) as fh:
        try:
            pipeline.write_csv(rows, fh, meta, pipeline.SweepRow)
        except Exception as exc:
            fh.write(f"# ERROR {type(exc).__name__}: {exc}\n")
            raise


def cmd_entropic(args):
    rows = pipeline.entropic_curve(_grid(args), args.visibility)
    with _output(args.out) as fh:
        pipeline.write_csv(rows, fh, _meta(args, visibility=args.visibility), pipeline.EntropicRow)


def cmd_bench(args):
    backends = args.backends or list(BACKENDS)
    rows = []
    if args.lengths:
        rows += pipeline.bench_lengths(args.lengths, backends, args.repeats, args.seed)
    if args.p_grid:
        corr_backends = [b for b in backends if b != "lzw"] if not args.backends else backends
        rows += pipeline.bench_correlation(args.p_grid, args.pair_length, corr_backends, args.seed)
    with _output(args.out) as fh:
        pipeline.write_csv(rows, fh, _meta(args), pipeline.BenchRow)


def cmd_ncd(args):
    x = read_file(args.x)
    y = read_file(args.y)
    d = ncd(x, y, args.backend, args.joint_mode)
    row = NCDRow(str(args.x), str(args.y), len(x), len(y), args.backend, args.joint_mode, d)
    with _output(args.out) as fh:
        pipeline.write_csv([row], fh, _meta(args, backend=args.backend), NCDRow)


def cmd_symmetrize(args):
    eff = EfficiencySet(*args.eta)
    a, b = args.angles
    runs = [
        sample_pairs(sa, sb, args.n_pairs, args.visibility, eff, seed=pipeline.derive_seed(args.seed, k))
        for k, (sa, sb) in enumerate(symmetrization_settings(a, b))
    ]
    merged = symmetrize(runs)
    dist = singlet_joint_distribution(a - b, args.visibility)
    target = eff.symmetrized_efficiency()
    rows = []
    for label, run, targets in (
        ("raw", runs[0], eff.pattern_efficiencies()),
        ("symmetrized", merged, np.full(4, target)),
    ):
        effs = pattern_detection_efficiencies(run, dist)
        counts = run.joint_counts()
        for i, pat in enumerate(PATTERNS):
            rows.append(EfficiencyRow(label, pat, int(counts[i]), run.requested_pairs * dist.as_array()[i],
                                      float(effs[i]), float(targets[i])))
    if args.save:
        save_run(merged, Path(args.save))
    with _output(args.out) as fh:
        pipeline.write_csv(rows, fh, _meta(args, visibility=args.visibility), EfficiencyRow)


def cmd_stats(args):
    run_dir = Path(args.dir)
    runs = {name: load_run(run_dir / f"{name}.meta.txt") for name in PAIR_ORDER}
    stats, _ = pipeline.block_statistics(runs, args.bits_per_file, args.backend, args.joint_mode)
    with _output(args.out) as fh:
        pipeline.write_csv([stats], fh, _meta(args, backend=args.backend, joint_mode=args.joint_mode),
                           pipeline.SubdivisionStats)


def _global_flags(parser, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=default(0), help="master seed (default 0)")
    parser.add_argument("--backend", choices=list(BACKENDS), default=default("lzma"))
    parser.add_argument("--joint-mode", choices=JOINT_MODES, default=default("interleave"))
    parser.add_argument("--visibility", type=float, default=default(1.0))
    parser.add_argument("--out", default=default("-"), help="CSV destination, '-' for stdout")


def _grid_flags(parser, default_grid):
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--thetas", type=float, nargs="+", help="explicit separation angles (degrees)")
    group.add_argument("--grid", type=float, nargs=3, metavar=("START", "STOP", "STEP"), default=default_grid)


def build_parser():
    parser = argparse.ArgumentParser(prog="ncdbell", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common], help="write simulated runs as NCDB files")
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--theta", type=float, help="write the four quadrangle runs for this separation")
    where.add_argument("--angles", type=float, nargs=2, metavar=("A", "B"), help="a single run at these angles")
    p.add_argument("--n-pairs", type=int, default=10**6)
    p.add_argument("--eta", type=float, nargs=4, default=(1.0, 1.0, 1.0, 1.0),
                   metavar=("HA", "VA", "HB", "VB"))
    p.add_argument("--dir", default=".", help="directory receiving the run files")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", parents=[common], help="compression S versus theta")
    _grid_flags(p, (0.0, 45.0, 2.5))
    p.add_argument("--n-pairs", type=int, default=10**6)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("entropic", parents=[common], help="analytic S'(theta) curve")
    _grid_flags(p, (0.0, 45.0, 0.1))
    p.set_defaults(func=cmd_entropic)

    p = sub.add_parser("bench", parents=[common], help="compression overhead Q benchmarks")
    p.add_argument("--lengths", type=int, nargs="*", default=[10**3, 10**4, 10**5, 10**6])
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--p-grid", type=float, nargs="*", default=[0.0, 0.1, 0.2, 0.3, 0.4, 0.5])
    p.add_argument("--pair-length", type=int, default=10**6)
    p.add_argument("--backends", nargs="+", choices=list(BACKENDS))
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("ncd", parents=[common], help="NCD of two NCDB files")
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_ncd)

    p = sub.add_parser("symmetrize", parents=[common], help="detector-efficiency symmetrization demo")
    p.add_argument("--angles", type=float, nargs=2, default=(0.0, 45.0), metavar=("A", "B"))
    p.add_argument("--n-pairs", type=int, default=10**6)
    p.add_argument("--eta", type=float, nargs=4, default=(1.0, 0.5, 1.0, 0.5),
                   metavar=("HA", "VA", "HB", "VB"))
    p.add_argument("--save", help="also write the symmetrized run under this file stem")
    p.set_defaults(func=cmd_symmetrize)

    p = sub.add_parser("stats", parents=[common], help="block statistics of S over saved runs")
    p.add_argument("dir", help="directory holding a0b0/a1b0/a1b1/a0b1 runs")
    p.add_argument("--bits-per-file", type=int, default=10**5)
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except Exception as exc:
        print("error: " + json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
