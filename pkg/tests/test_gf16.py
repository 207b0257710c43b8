import numpy as np
import pytest
from hypothesis import given, strategies as st

from macc import gf16
from macc.errors import ConfigurationError

elements = st.integers(0, gf16.FIELD_SIZE - 1)
nonzero = st.integers(1, gf16.FIELD_SIZE - 1)


def test_tables_are_consistent():
    assert gf16.EXP[0] == 1
    assert gf16.mul(1, 12345) == 12345
    assert gf16.mul(0, 999) == 0


@given(nonzero)
def test_inverse(a):
    assert gf16.mul(a, gf16.inv(a)) == 1


@given(elements, elements, elements)
def test_mul_associative_and_distributive(a, b, c):
    assert gf16.mul(a, gf16.mul(b, c)) == gf16.mul(gf16.mul(a, b), c)
    assert gf16.mul(a, b ^ c) == gf16.mul(a, b) ^ gf16.mul(a, c)


@given(elements, st.lists(elements, min_size=1, max_size=8))
def test_scale_matches_scalar_mul(a, vec):
    arr = np.array(vec, dtype=np.uint16)
    out = gf16.scale(a, arr)
    assert out.tolist() == [gf16.mul(a, int(x)) for x in vec]


def test_cauchy_square_submatrices_invertible():
    mat = gf16.cauchy_matrix(5, 9)
    rng = np.random.default_rng(0)
    for _ in range(20):
        size = int(rng.integers(1, 6))
        rows = sorted(rng.choice(5, size=size, replace=False))
        cols = sorted(rng.choice(9, size=size, replace=False))
        sub = mat[np.ix_(rows, cols)]
        rhs = rng.integers(0, 1 << 16, size=(size, 4), dtype=np.uint16)
        x = gf16.solve(sub, rhs)
        back = gf16.matvec(sub, x)
        assert np.array_equal(back, rhs)


def test_cauchy_size_guard():
    with pytest.raises(ConfigurationError):
        gf16.cauchy_matrix(40000, 40000)


def test_solve_round_trip():
    a = gf16.cauchy_matrix(4, 4)
    x = np.arange(1, 13, dtype=np.uint16).reshape(4, 3)
    b = gf16.matvec(a, x)
    assert np.array_equal(gf16.solve(a, b), x)
