import threading

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ncdbell.bitstrings import BitString
from ncdbell.compressors import (
    BACKENDS,
    BackendUnavailable,
    EmptyInput,
    compressed_size,
    get_backend,
    overhead,
)

from conftest import random_bits

ALL = list(BACKENDS)
STOCK = ["lzma", "bzip2", "deflate"]


@pytest.mark.parametrize("backend", ALL)
def test_all_zeros_is_tiny(backend):
    x = BitString.from_bits(np.zeros(10**5, dtype=np.uint8))
    assert compressed_size(backend, x) < 0.05 * 10**5


def test_random_lzma_near_shannon():
    x = random_bits(10**5, seed=11)
    assert compressed_size("lzma", x) < 1.1 * 10**5


@pytest.mark.parametrize("backend", ALL)
def test_deterministic(backend):
    x = random_bits(50_000, seed=4)
    assert compressed_size(backend, x) == compressed_size(backend, x)


@pytest.mark.parametrize("backend", ALL)
def test_size_in_bits(backend):
    x = random_bits(12_345, seed=5)
    b = get_backend(backend)
    assert compressed_size(b, x) == 8 * len(b.compress(x.packed))


@pytest.mark.parametrize("backend", ALL)
def test_redundancy_is_monotone(backend):
    zeros = BitString.from_bits(np.zeros(10**5, dtype=np.uint8))
    assert compressed_size(backend, zeros) < compressed_size(backend, random_bits(10**5, seed=6))


@pytest.mark.parametrize("backend", ALL)
@settings(max_examples=20, deadline=None)
@given(data=st.binary(min_size=1, max_size=4000))
def test_lossless(backend, data):
    b = get_backend(backend)
    assert b.decompress(b.compress(data)) == data


@pytest.mark.parametrize("backend", ALL)
def test_lossless_random_payload(backend):
    data = random_bits(200_000, seed=8).packed
    b = get_backend(backend)
    assert b.decompress(b.compress(data)) == data


def test_empty_input():
    with pytest.raises(EmptyInput):
        compressed_size("lzma", BitString())
    with pytest.raises(EmptyInput):
        get_backend("bzip2").measure(b"")


def test_unknown_backend():
    with pytest.raises(BackendUnavailable):
        get_backend("zstd")


def test_overhead_formula():
    x = random_bits(40_000, seed=9)
    rep = overhead("deflate", x, 39_000.0)
    assert rep.backend == "deflate"
    assert rep.length == 40_000
    assert rep.overhead == (rep.compressed_bits - 39_000.0) / 40_000


def test_ideal_stub_has_zero_overhead():
    entropy = 12_000.0

    class Ideal:
        id = "ideal"

        def measure(self, payload):
            return entropy

    stub = Ideal()
    x = random_bits(12_000, seed=1)
    assert overhead(stub, x, entropy).overhead == 0.0


@pytest.mark.parametrize("backend", STOCK)
def test_q_converges_by_1e5(backend):
    qs = [overhead(backend, random_bits(10**5, seed=100 + s), 10**5).overhead for s in range(10)]
    assert np.std(qs, ddof=1) < 0.01
    assert max(qs) < 0.1


def test_concurrent_measurements_agree():
    payloads = [random_bits(80_000, seed=s).packed for s in range(4)]
    expected = {(b, i): BACKENDS[b].measure(p) for b in STOCK for i, p in enumerate(payloads)}
    got = {}

    def work(b, i):
        got[(b, i)] = BACKENDS[b].measure(payloads[i])

    threads = [threading.Thread(target=work, args=key) for key in expected]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert got == expected
