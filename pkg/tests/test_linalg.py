from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from flataffine import linalg

from conftest import small_rationals

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(small_rationals, min_size=c, max_size=c), min_size=r, max_size=r)))


def sym(m):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m])


@given(matrices)
def test_rank_matches_sympy(m):
    assert linalg.rank(m) == sym(m).rank()


@given(matrices)
def test_nullspace_is_kernel_of_right_size(m):
    n_cols = len(m[0])
    basis = linalg.nullspace(m, n_cols)
    assert len(basis) == n_cols - sym(m).rank()
    for v in basis:
        assert all(x == 0 for x in linalg.matvec(m, v))
    assert linalg.rank(basis) == len(basis) if basis else True


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small_rationals, min_size=n, max_size=n),
                                                       min_size=n, max_size=n)))
def test_inverse_roundtrip(m):
    if sym(m).det() == 0:
        with pytest.raises(ValueError):
            linalg.inverse(m)
        return
    inv = linalg.inverse(m)
    assert linalg.matmul(m, inv) == linalg.identity(len(m))


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small_rationals, min_size=n, max_size=n),
                                                       min_size=n, max_size=n)))
def test_inertia_agrees_with_eigenvalue_signs(m):
    s = [[m[i][j] + m[j][i] for j in range(len(m))] for i in range(len(m))]
    eig = sympy.Matrix(sym(s)).eigenvals()
    pos = sum(k for v, k in eig.items() if sympy.re(sympy.N(v, 50)) > 1e-30)
    neg = sum(k for v, k in eig.items() if sympy.re(sympy.N(v, 50)) < -1e-30)
    zero = len(s) - pos - neg
    assert linalg.inertia(s) == (pos, neg, zero)


def test_scalar_parsing():
    assert linalg.to_scalar("−1/2") == Fraction(-1, 2)
    assert linalg.to_scalar("3") == 3
    assert linalg.format_scalar(Fraction(-1, 2)) == "-1/2"
    with pytest.raises(TypeError):
        linalg.to_scalar(0.5)
    with pytest.raises(TypeError):
        linalg.to_scalar(True)
