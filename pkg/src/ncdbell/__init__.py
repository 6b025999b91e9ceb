"""Compression-based test of a Bell-type quadrangle inequality."""

__version__ = "0.1.0"

from .bitstrings import BitString, concat, interleave, read_file, write_file
from .compressors import BACKENDS, compressed_size, get_backend, overhead
from .entropy import (
    binary_entropy,
    chsh_value,
    entropic_nid,
    entropic_S_prime,
    settings_from_theta,
    shannon_entropy,
    singlet_joint_distribution,
)
from .ncd import QuadrangleResult, ncd, quadrangle_S
from .quantum_sim import EfficiencySet, PairRun, generate_correlated_pair, sample_pairs, symmetrize
