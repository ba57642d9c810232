import numpy as np
import pytest
from hypothesis import given, strategies as st

from raidkit.algebra import (SingularMatrixError, cauchy, gf_add, gf_div, gf_inv, gf_mul, gf_pow,
                             mat_mul, matrix_rank, solve_linear, vandermonde)

byte = st.integers(0, 255)
nonzero = st.integers(1, 255)


def slow_mul(a, b):
    # carry-less multiply reduced by x^8 + x^4 + x^3 + x^2 + 1
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & 0x100:
            a ^= 0x11D
    return r


@given(byte, byte)
def test_mul_matches_shift_and_add(a, b):
    assert gf_mul(a, b) == slow_mul(a, b)


@given(byte, byte, byte)
def test_field_laws(a, b, c):
    assert gf_mul(a, b) == gf_mul(b, a)
    assert gf_mul(a, gf_mul(b, c)) == gf_mul(gf_mul(a, b), c)
    assert gf_mul(a, gf_add(b, c)) == gf_add(gf_mul(a, b), gf_mul(a, c))


@given(nonzero)
def test_inverse(a):
    assert gf_mul(a, gf_inv(a)) == 1
    assert gf_div(a, a) == 1


def test_inverse_of_zero_fails():
    with pytest.raises((ZeroDivisionError, ValueError)):
        gf_inv(0)


def test_generator_order():
    # 2 generates the multiplicative group
    seen = {gf_pow(2, e) for e in range(255)}
    assert len(seen) == 255


@given(st.lists(st.lists(byte, min_size=4, max_size=4), min_size=4, max_size=4))
def test_solve_roundtrip(rows):
    m = np.array(rows, dtype=np.uint8)
    x = np.array([[1], [2], [3], [4]], dtype=np.uint8)
    rhs = mat_mul(m, x)
    if matrix_rank(m) < 4:
        with pytest.raises(SingularMatrixError):
            solve_linear(m, rhs)
    else:
        assert np.array_equal(solve_linear(m, rhs), x)


def test_cauchy_is_superregular():
    c = cauchy([10, 11, 12], list(range(6)))
    for i in range(3):
        for j in range(6):
            assert c[i, j] != 0
    assert matrix_rank(c[:, :3]) == 3


def test_vandermonde_rank():
    v = vandermonde([1, 2, 3, 4, 5], 3)
    assert matrix_rank(np.asarray(v, dtype=np.uint8)) == 3
