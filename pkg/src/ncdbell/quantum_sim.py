"""Seeded Monte Carlo generation of measurement records.

Outcome convention: bit 1 is a click in the H detector, bit 0 in the V
detector, on either side. Random numbers come from numpy's PCG64 via
``np.random.default_rng(seed)``.

Detector-efficiency symmetrization: the four runs of a symmetrized setting
rotate one or both analyzers by :data:`PORT_SWAP` degrees, which exchanges
the two output ports (a 45 degree half-wave-plate turn rotates the
polarization by 90 degrees). Flipping the bits recorded on a rotated side
restores the original logical measurement, while each polarization is now
counted by both detectors of that side.
"""

import ast
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bitstrings import BitString, read_file, write_file
from .entropy import JointDistribution, singlet_joint_distribution

RNG_NAME = "numpy.PCG64"
PORT_SWAP = 90.0


@dataclass(frozen=True)
class EfficiencySet:
    eta_HA: float = 1.0
    eta_VA: float = 1.0
    eta_HB: float = 1.0
    eta_VB: float = 1.0

    def __post_init__(self):
        for name in ("eta_HA", "eta_VA", "eta_HB", "eta_VB"):
            value = getattr(self, name)
            if not 0 < value <= 1:
                raise ValueError(f"{name} must lie in (0, 1], got {value}")

    @property
    def ideal(self):
        return self.eta_HA == self.eta_VA == self.eta_HB == self.eta_VB == 1.0

    def pattern_efficiencies(self) -> np.ndarray:
        """Pair efficiency for outcome patterns 00, 01, 10, 11 (Alice bit first)."""
        a = np.array([self.eta_VA, self.eta_HA])
        b = np.array([self.eta_VB, self.eta_HB])
        return np.outer(a, b).ravel()

    def symmetrized_efficiency(self) -> float:
        """Common pair efficiency after symmetrization."""
        return (
            self.eta_VB * self.eta_VA
            + self.eta_VB * self.eta_HA
            + self.eta_HB * self.eta_VA
            + self.eta_HB * self.eta_HA
        ) / 4


@dataclass(frozen=True, eq=False)
class PairRun:
    x: BitString
    y: BitString
    settings: tuple
    seed: object
    requested_pairs: int
    detected_pairs: int
    visibility: float = 1.0
    efficiencies: EfficiencySet = field(default_factory=EfficiencySet)
    # position of each detected event in the requested trial sequence
    trial_index: np.ndarray = None
    note: str = ""

    def __post_init__(self):
        if not len(self.x) == len(self.y) == self.detected_pairs:
            raise ValueError(
                f"x ({len(self.x)}), y ({len(self.y)}) and detected_pairs "
                f"({self.detected_pairs}) disagree"
            )

    def __eq__(self, other):
        if not isinstance(other, PairRun):
            return NotImplemented
        same_index = (self.trial_index is None and other.trial_index is None) or (
            self.trial_index is not None
            and other.trial_index is not None
            and np.array_equal(self.trial_index, other.trial_index)
        )
        return (
            self.x == other.x
            and self.y == other.y
            and tuple(self.settings) == tuple(other.settings)
            and self.seed == other.seed
            and self.requested_pairs == other.requested_pairs
            and self.detected_pairs == other.detected_pairs
            and same_index
        )

    def _trials(self):
        if self.trial_index is not None:
            return self.trial_index
        return np.arange(self.detected_pairs)

    def joint_counts(self) -> np.ndarray:
        """Counts of outcome patterns 00, 01, 10, 11."""
        code = 2 * self.x.to_numpy().astype(np.int64) + self.y.to_numpy()
        return np.bincount(code, minlength=4)


def _seed_value(seed):
    if isinstance(seed, np.random.SeedSequence):
        return seed.entropy
    return seed


def sample_pairs(angle_a, angle_b, n, visibility=1.0, efficiencies=None, seed=None) -> PairRun:
    """Simulate ``n`` emitted pairs measured at analyzer angles (angle_a, angle_b).

    Each emitted pair draws an outcome pattern from the singlet distribution at
    separation ``angle_a - angle_b``. With non-unit efficiencies a pattern
    (i, j) is detected with probability eta_A(i) * eta_B(j); undetected pairs
    are dropped.
    """
    if n <= 0:
        raise ValueError(f"pair count must be positive, got {n}")
    efficiencies = efficiencies or EfficiencySet()
    rng = np.random.default_rng(seed)
    dist = singlet_joint_distribution(angle_a - angle_b, visibility)
    cdf = np.cumsum(dist.as_array())
    pattern = np.minimum(np.searchsorted(cdf, rng.random(n), side="right"), 3)
    if efficiencies.ideal:
        trial_index = np.arange(n)
    else:
        keep = rng.random(n) < efficiencies.pattern_efficiencies()[pattern]
        trial_index = np.flatnonzero(keep)
        pattern = pattern[keep]
    x = (pattern >> 1).astype(np.uint8)
    y = (pattern & 1).astype(np.uint8)
    return PairRun(
        x=BitString.from_bits(x),
        y=BitString.from_bits(y),
        settings=(float(angle_a), float(angle_b)),
        seed=_seed_value(seed),
        requested_pairs=int(n),
        detected_pairs=int(x.size),
        visibility=float(visibility),
        efficiencies=efficiencies,
        trial_index=trial_index,
    )


def generate_correlated_pair(n, p, seed=None):
    """Balanced random ``x`` and ``y = x XOR Bernoulli(p)``.

    p = 0 gives y == x, p = 0.5 independent strings, p = 1 the complement.
    """
    if n <= 0:
        raise ValueError(f"length must be positive, got {n}")
    if not 0 <= p <= 1:
        raise ValueError(f"flip probability must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    x = rng.integers(0, 2, n, dtype=np.uint8)
    flips = (rng.random(n) < p).astype(np.uint8)
    return BitString.from_bits(x), BitString.from_bits(x ^ flips)


def symmetrization_settings(angle_a, angle_b):
    """The four analyzer settings measured for one symmetrized setting."""
    return [
        (angle_a, angle_b),
        (angle_a + PORT_SWAP, angle_b),
        (angle_a, angle_b + PORT_SWAP),
        (angle_a + PORT_SWAP, angle_b + PORT_SWAP),
    ]


def _swapped(offset):
    r = offset % 180.0
    if np.isclose(r, 0.0) or np.isclose(r, 180.0):
        return False
    if np.isclose(r, PORT_SWAP):
        return True
    raise ValueError(f"analyzer offset {offset} is neither 0 nor {PORT_SWAP} degrees")


def symmetrize(runs) -> PairRun:
    """Merge four port-swapped runs into one stream with balanced efficiencies.

    ``runs`` are ordered as :func:`symmetrization_settings`. Bits recorded on a
    rotated side are flipped back. The merge is round-robin over trial slots:
    trial k of run 1, trial k of run 2, ... keeping only detected events, and
    it stops at the smallest requested count so every run contributes the same
    exposure. With ideal detectors this is plain event-by-event interleaving.
    """
    runs = list(runs)
    if len(runs) != 4:
        raise ValueError(f"symmetrize needs exactly 4 runs, got {len(runs)}")
    base_a, base_b = runs[0].settings
    expected = [(False, False), (True, False), (False, True), (True, True)]
    for run, (swap_a, swap_b) in zip(runs, expected):
        da, db = run.settings[0] - base_a, run.settings[1] - base_b
        if (_swapped(da), _swapped(db)) != (swap_a, swap_b):
            raise ValueError(
                f"run at settings {run.settings} does not match the symmetrization "
                f"pattern around {runs[0].settings}"
            )
    if len({r.visibility for r in runs}) != 1 or len({r.efficiencies for r in runs}) != 1:
        raise ValueError("symmetrized runs must share visibility and efficiencies")

    exposure = min(r.requested_pairs for r in runs)
    xs, ys, slots = [], [], []
    for k, (run, (swap_a, swap_b)) in enumerate(zip(runs, expected)):
        trials = run._trials()
        n = int(np.searchsorted(trials, exposure))
        x = run.x.to_numpy()[:n]
        y = run.y.to_numpy()[:n]
        xs.append(x ^ swap_a)
        ys.append(y ^ swap_b)
        slots.append(4 * trials[:n].astype(np.int64) + k)
    slots = np.concatenate(slots)
    order = np.argsort(slots, kind="stable")
    x = np.concatenate(xs)[order]
    y = np.concatenate(ys)[order]
    return PairRun(
        x=BitString.from_bits(x),
        y=BitString.from_bits(y),
        settings=runs[0].settings,
        seed=tuple(r.seed for r in runs),
        requested_pairs=4 * exposure,
        detected_pairs=int(x.size),
        visibility=runs[0].visibility,
        efficiencies=runs[0].efficiencies,
        trial_index=slots[order],
        note=f"symmetrized over 4 port-swapped runs, equal exposure of {exposure} trials each",
    )


def pattern_detection_efficiencies(run: PairRun, dist: JointDistribution) -> np.ndarray:
    """Detected count of each pattern over its expected emitted count.

    ``dist`` is the logical outcome distribution the run was drawn from.
    Patterns with zero probability report NaN.
    """
    expected = run.requested_pairs * dist.as_array()
    counts = run.joint_counts().astype(float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(expected > 0, counts / expected, np.nan)


def _format_meta(run: PairRun, x_name, y_name):
    eff = run.efficiencies
    items = [
        ("x_file", x_name),
        ("y_file", y_name),
        ("angle_a", repr(float(run.settings[0]))),
        ("angle_b", repr(float(run.settings[1]))),
        ("rng", RNG_NAME),
        ("seed", repr(run.seed)),
        ("requested_pairs", run.requested_pairs),
        ("detected_pairs", run.detected_pairs),
        ("visibility", repr(run.visibility)),
        ("eta_HA", repr(eff.eta_HA)),
        ("eta_VA", repr(eff.eta_VA)),
        ("eta_HB", repr(eff.eta_HB)),
        ("eta_VB", repr(eff.eta_VB)),
    ]
    if run.note:
        items.append(("note", run.note))
    return "".join(f"{k} = {v}\n" for k, v in items)


def save_run(run: PairRun, stem):
    """Write ``<stem>.x.ncdb``, ``<stem>.y.ncdb`` and a ``<stem>.meta.txt`` sidecar.

    The per-event trial positions are not persisted; a reloaded run treats its
    detected events as consecutive trials.
    """
    stem = Path(stem)
    x_path = stem.with_name(stem.name + ".x.ncdb")
    y_path = stem.with_name(stem.name + ".y.ncdb")
    write_file(run.x, x_path)
    write_file(run.y, y_path)
    meta = stem.with_name(stem.name + ".meta.txt")
    meta.write_text(_format_meta(run, x_path.name, y_path.name))
    return meta


def read_meta(path) -> dict:
    meta = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            meta[key.strip()] = value.strip()
    return meta


def load_run(meta_path) -> PairRun:
    """Inverse of :func:`save_run`; ``meta_path`` is the sidecar or the stem."""
    meta_path = Path(meta_path)
    if not meta_path.name.endswith(".meta.txt"):
        meta_path = meta_path.with_name(meta_path.name + ".meta.txt")
    meta = read_meta(meta_path)
    x = read_file(meta_path.parent / meta["x_file"])
    y = read_file(meta_path.parent / meta["y_file"])
    seed = ast.literal_eval(meta.get("seed", "None"))
    return PairRun(
        x=x,
        y=y,
        settings=(float(meta["angle_a"]), float(meta["angle_b"])),
        seed=seed,
        requested_pairs=int(meta.get("requested_pairs", len(x))),
        detected_pairs=int(meta.get("detected_pairs", len(x))),
        visibility=float(meta.get("visibility", 1.0)),
        efficiencies=EfficiencySet(
            *(float(meta.get(k, 1.0)) for k in ("eta_HA", "eta_VA", "eta_HB", "eta_VB"))
        ),
        note=meta.get("note", ""),
    )
