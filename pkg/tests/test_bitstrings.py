import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ncdbell.bitstrings import (
    BitString,
    LengthMismatch,
    MalformedHeader,
    TruncatedPayload,
    concat,
    interleave,
    read_file,
    write_file,
)

from conftest import random_bits


def bs(text):
    return BitString.from_str(text)


def deinterleave(z):
    bits = z.to_numpy()
    return BitString.from_bits(bits[0::2]), BitString.from_bits(bits[1::2])


def test_concat_examples():
    assert concat(bs(""), bs("101")) == bs("101")
    assert concat(bs("01"), bs("11")) == bs("0111")
    assert str(concat(bs("1010101"), bs("11"))) == "101010111"


@pytest.mark.parametrize("nx,ny", [(0, 0), (3, 13), (8, 8), (17, 5), (1000, 1)])
def test_concat_length_additive(nx, ny):
    x, y = random_bits(nx, 1), random_bits(ny, 2)
    z = concat(x, y)
    assert len(z) == nx + ny
    assert np.array_equal(z.to_numpy(), np.concatenate([x.to_numpy(), y.to_numpy()]))


def test_interleave_examples():
    assert interleave(bs("0101"), bs("1111")) == bs("01110111")
    assert interleave(bs(""), bs("")) == bs("")


def test_interleave_length_mismatch():
    with pytest.raises(LengthMismatch):
        interleave(bs("01"), bs("011"))


@given(st.integers(0, 5000), st.integers(0, 2**32 - 1))
def test_interleave_inverts(n, seed):
    x, y = random_bits(n, seed), random_bits(n, seed + 1)
    z = interleave(x, y)
    assert len(z) == 2 * n
    assert deinterleave(z) == (x, y)


def test_no_padding_leaks():
    x = bs("1")
    assert len(x.packed) == 1 and len(x) == 1
    assert BitString(b"\xff", 3) == bs("111")
    with pytest.raises(IndexError):
        x[1]
    with pytest.raises(ValueError):
        BitString(b"\x00\x00", 3)


def test_indexing_and_slicing():
    x = bs("0110100")
    assert [x[i] for i in range(len(x))] == [0, 1, 1, 0, 1, 0, 0]
    assert x[-1] == 0
    assert x[2:5] == bs("101")


def test_roundtrip_non_byte_aligned(tmp_path):
    x = bs("1011001")
    write_file(x, tmp_path / "x.ncdb")
    assert read_file(tmp_path / "x.ncdb") == x
    raw = (tmp_path / "x.ncdb").read_bytes()
    assert raw == b"NCDB\x01" + (7).to_bytes(8, "little") + bytes([0b10110010])


def test_roundtrip_million_bits(tmp_path):
    x = random_bits(10**6 + 3, seed=7)
    write_file(x, tmp_path / "big.ncdb")
    y = read_file(tmp_path / "big.ncdb")
    assert y == x and len(y) == 10**6 + 3


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 2**32 - 1))
def test_roundtrip_property(tmp_path_factory, n, seed):
    path = tmp_path_factory.mktemp("rt") / "x.ncdb"
    x = random_bits(n, seed)
    write_file(x, path)
    assert read_file(path) == x


def test_corrupted_magic(tmp_path):
    path = tmp_path / "x.ncdb"
    write_file(bs("0101"), path)
    data = bytearray(path.read_bytes())
    data[0:4] = b"NCDX"
    path.write_bytes(bytes(data))
    with pytest.raises(MalformedHeader):
        read_file(path)


def test_bad_version_and_short_header(tmp_path):
    path = tmp_path / "x.ncdb"
    path.write_bytes(b"NCDB\x02" + bytes(8))
    with pytest.raises(MalformedHeader):
        read_file(path)
    path.write_bytes(b"NCD")
    with pytest.raises(MalformedHeader):
        read_file(path)


def test_truncated_payload(tmp_path):
    path = tmp_path / "x.ncdb"
    write_file(random_bits(100, 3), path)
    path.write_bytes(path.read_bytes()[:-2])
    with pytest.raises(TruncatedPayload):
        read_file(path)


def test_missing_file_is_os_error(tmp_path):
    with pytest.raises(OSError):
        read_file(tmp_path / "nope.ncdb")
