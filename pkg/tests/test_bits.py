import pytest
from hypothesis import given
from hypothesis import strategies as st

from pgaram import bits
from pgaram.bits import add, arith, band, bitwise, bnot, bor, bton, bxor, divz, monus, ntob, rol, ror, shift, shl, shr

from oracles import b2n, n2b
from strategies import bit_strings, long_bit_strings


@pytest.mark.parametrize("n, w", [(0, "0"), (1, "1"), (2, "01"), (5, "101"), (6, "011")])
def test_ntob(n, w):
    assert ntob(n) == w == n2b(n)


@pytest.mark.parametrize("w, n", [("", 0), ("101", 5), ("100", 1), ("0", 0), ("01", 2)])
def test_bton(w, n):
    assert bton(w) == n == b2n(w)


def test_ntob_rejects_negative():
    with pytest.raises(ValueError):
        ntob(-1)


def test_arith_examples():
    assert divz("101", "0") == "0"
    assert monus("01", "11") == "0"
    assert add("1", "1") == "01"
    assert arith("divz", "101", "") == "0"
    assert arith("mul", "11", "11") == ntob(9)


def test_bitwise_examples():
    assert band("1", "11") == "10"
    assert bxor("11", "11") == "00"
    assert bnot("") == ""
    assert bnot("0110") == "1001"
    assert bor("", "") == ""
    assert bitwise("or", "1", "001") == "101"


def test_shift_examples():
    assert shl("1") == "01" and bton(shl("1")) == 2
    assert shr("01") == "1"
    assert rol("110") == "011"
    assert ror("011") == "110"
    assert shift("shl", "") == "" and shift("ror", "") == ""


@given(st.integers(0, 2**64))
def test_roundtrip_natural(n):
    assert bton(ntob(n)) == n
    assert not ntob(n).endswith("0") or n == 0


@given(bit_strings)
def test_ntob_bton_strips(w):
    assert ntob(bton(w)) == (w.rstrip("0") or "0")
    assert bits.strip(w) == ntob(bton(w))


@given(long_bit_strings, long_bit_strings)
def test_bitwise_padded_pointwise(w1, w2):
    n = max(len(w1), len(w2))
    p1, p2 = w1.ljust(n, "0"), w2.ljust(n, "0")
    assert band(w1, w2) == "".join(str(int(a) & int(b)) for a, b in zip(p1, p2))
    assert bor(w1, w2) == "".join(str(int(a) | int(b)) for a, b in zip(p1, p2))
    assert bxor(w1, w2) == "".join(str(int(a) ^ int(b)) for a, b in zip(p1, p2))
    assert len(band(w1, w2)) == n
    assert bton(band(w1, w2)) == bton(w1) & bton(w2)


@given(long_bit_strings)
def test_rotations_invert(w):
    assert ror(rol(w)) == w
    assert rol(ror(w)) == w
    assert len(bnot(w)) == len(w)


@given(long_bit_strings)
def test_shift_identities(w):
    assert bton(shl(w)) == 2 * bton(w)
    assert bton(shr(w)) == bton(w) // 2


def test_nat_len():
    assert [bits.nat_len(i) for i in (0, 1, 2, 3, 4, 255, 256)] == [1, 1, 2, 2, 3, 8, 9]


def test_check_bits():
    assert bits.check_bits("0101") == "0101"
    with pytest.raises(ValueError):
        bits.check_bits("012")
