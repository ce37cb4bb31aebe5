from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from omnilie.exact import DimensionError, Poly, Subspace, kernel, monomials, rank, rref, solve

T1, T2 = sp.symbols("t1 t2")

coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exps = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(exps, coeff, max_size=5)


def to_sympy(p: Poly):
    return sp.sympify(0) + sum((sp.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c)
               * T1 ** e[0] * T2 ** e[1] for e, c in p.terms.items())


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_poly_arithmetic_matches_sympy(a, b):
    p, q = Poly(2, a), Poly(2, b)
    P, Q = to_sympy(p), to_sympy(q)
    assert sp.expand(to_sympy(p + q) - (P + Q)) == 0
    assert sp.expand(to_sympy(p - q) - (P - Q)) == 0
    assert sp.expand(to_sympy(p * q) - P * Q) == 0
    assert sp.expand(to_sympy(p.diff(0)) - sp.diff(P, T1)) == 0
    assert sp.expand(to_sympy(p.diff(1)) - sp.diff(P, T2)) == 0


@settings(max_examples=40, deadline=None)
@given(polys, st.tuples(coeff, coeff))
def test_poly_eval_matches_sympy(a, pt):
    p = Poly(2, a)
    assert p.eval(pt) == to_sympy(p).subs({T1: sp.Rational(str(pt[0])), T2: sp.Rational(str(pt[1]))})


def test_poly_normalizes_zero_terms_and_integer_fractions():
    p = Poly(2, {(1, 0): Fraction(4, 2), (0, 1): 0})
    assert p.terms == {(1, 0): 2}
    assert type(p.terms[(1, 0)]) is int
    assert Poly.zero(2) == Poly(2, {(0, 0): 0})


def test_poly_rejects_mismatched_variables():
    with pytest.raises(DimensionError):
        Poly(2, {(1,): 1})
    with pytest.raises(DimensionError):
        Poly.var(1, 0) + Poly.var(2, 0)


def test_monomials_are_graded_and_complete():
    ms = monomials(2, 2)
    assert len(ms) == 6
    assert [sum(m) for m in ms] == sorted(sum(m) for m in ms)
    assert set(ms) == {(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)}


mats = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=4)


@settings(max_examples=60, deadline=None)
@given(mats)
def test_rref_rank_kernel_match_sympy(m):
    M = sp.Matrix(m)
    rk, red, piv = rref(m, 4)
    R, spiv = M.rref()
    assert rk == M.rank()
    assert list(piv) == list(spiv)
    if rk:
        assert sp.Matrix(red) == R[:rk, :]
    ker = kernel(m, 4)
    assert len(ker) == 4 - rk
    for v in ker:
        assert M * sp.Matrix(v) == sp.zeros(len(m), 1)
    assert rank(m, 4) == rk


@settings(max_examples=60, deadline=None)
@given(mats, st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_solve_is_consistent_with_sympy(m, x0):
    M = sp.Matrix(m)
    b = list(M * sp.Matrix(x0))
    x = solve(m, b, 4)
    assert x is not None and M * sp.Matrix(x) == sp.Matrix(b)
    # a right-hand side outside the column space has no solution
    aug = M.row_join(sp.Matrix([1] + [0] * (len(m) - 1)))
    if aug.rank() > M.rank():
        assert solve(m, [1] + [0] * (len(m) - 1), 4) is None


def test_subspace_operations():
    U = Subspace(3, [[1, 0, 0], [0, 1, 0]])
    W = Subspace(3, [[0, 1, 1], [0, 1, 0]])
    assert (U + W).dim == 3
    assert U.intersection(W) == Subspace(3, [[0, 1, 0]])
    assert U.contains([2, -1, 0]) and not U.contains([0, 0, 1])
    assert U.coordinates([2, -1, 0]) == [2, -1]
    assert Subspace(3, [[2, 4, 0], [1, 2, 0]]) == Subspace(3, [[1, 2, 0]])
    assert Subspace(3, [[1, 0, 0]]).issubset(U)
    for f in U.annihilator():
        assert all(sum(a * b for a, b in zip(f, v)) == 0 for v in U.basis)
