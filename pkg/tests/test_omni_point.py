import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from omnilie import omni_point as op
from omnilie.catalog import aff1, sl2
from omnilie.commands import point_normalizer_corpus
from omnilie.corpus import random_isotropic, rng_for
from omnilie.exact import Subspace
from omnilie.lie import LieStruct

small = st.integers(-3, 3)


def elements(r):
    return st.lists(small, min_size=r * r + r, max_size=r * r + r).map(lambda v: op.OmniElt.unflatten(v, r))


@settings(max_examples=50, deadline=None)
@given(elements(2), elements(2))
def test_bracket_matches_sympy(x, y):
    X = oracles.point_split(x.flatten(), 2)
    Y = oracles.point_split(y.flatten(), 2)
    assert op.omni_bracket(x, y).flatten() == oracles.point_flat(oracles.point_bracket(X, Y))


@settings(max_examples=50, deadline=None)
@given(elements(3), elements(3), elements(3))
def test_leibniz_at_a_point(x, y, z):
    br = op.omni_bracket
    assert br(x, br(y, z)) == br(br(x, y), z) + br(y, br(x, z))


@settings(max_examples=50, deadline=None)
@given(elements(2), elements(2))
def test_symmetric_part_is_a_jet(x, y):
    s = op.omni_bracket(x, y) + op.omni_bracket(y, x)
    assert s == op.jet_d(op.omni_pairing(x, y)).scale(2)


def test_weinstein_lift_dimensions():
    for W, c in ((Subspace.full(2), aff1()), (Subspace.full(3), sl2()),
                 (Subspace(2, [[1, 0]]), LieStruct.abelian(1)), (Subspace.zero(2), LieStruct.abelian(0))):
        L = op.lift_point(W, c)
        rep = op.is_dirac(L.space)
        assert rep.ok
        assert L.dim == (1 - L.r) * W.dim + L.r ** 2


def test_lift_reduce_round_trip_points():
    for W, c in ((Subspace.full(2), aff1()), (Subspace.full(3), sl2()), (Subspace(3, [[1, 0, 0], [0, 1, 0]]),
                                                                         LieStruct.from_brackets(2, {(0, 1): [0, 1]}))):
        L = op.lift_point(W, c)
        assert op.reduce_point(L) == (W, c)
        assert op.lift_point(*op.reduce_point(L)).space == L.space


def test_non_isotropic_subspace_is_rejected():
    x = op.OmniElt([[1, 0], [0, 0]], [1, 0])
    rep = op.is_dirac(Subspace(6, [x.flatten()]))
    assert not rep.isotropic and not rep.ok
    with pytest.raises(ValueError):
        op.reduce_point(op.PointDirac(2, Subspace(6, [x.flatten()])))


@pytest.mark.parametrize("r", [2, 3])
def test_isotropic_family_dimension_formula(r):
    rng = rng_for(7)
    for _ in range(25):
        L, W, _ = random_isotropic(rng, r)
        rep = op.is_dirac(L)
        assert rep.isotropic and rep.maximal
        assert L.dim == (1 - r) * W.dim + r * r


def test_closure_matches_oracle_r3():
    rng = rng_for(11)
    seen = set()
    for _ in range(40):
        L, W, B = random_isotropic(rng, 3)
        closed = op.is_dirac(L).closed
        assert closed == oracles.isotropic_closed_oracle([list(v) for v in W.basis], B, 3)
        seen.add(closed)
    assert seen == {True, False}


POINT_STRUCTURES = [op.lift_point(Subspace.full(2), aff1()), op.lift_point(Subspace.full(3), sl2()),
                    op.lift_point(Subspace(2, [[1, 0]]), LieStruct.abelian(1)),
                    op.lift_point(Subspace.full(2), LieStruct.abelian(2)),
                    op.lift_point(Subspace.zero(2), LieStruct.abelian(0))]


@pytest.mark.parametrize("L", POINT_STRUCTURES)
def test_normalizer_dimension_matches_oracle(L):
    dimN, expected = op.normalizer_exact_count(L)
    assert dimN == expected
    assert dimN == oracles.normalizer_dim([list(v) for v in L.space.basis], L.r)


@pytest.mark.parametrize("L", POINT_STRUCTURES[:3])
def test_omega_cocycle_iff_normalizer(L):
    for X in point_normalizer_corpus(L, 3, 30):
        o = op.omega_cochain_check(X, L)
        assert o.identity_holds
        assert o.is_cocycle == o.in_normalizer
        if o.is_coboundary:
            assert o.is_cocycle


def test_normalizer_corpus_hits_both_sides():
    L = POINT_STRUCTURES[0]
    flags = {op.omega_cochain_check(X, L).in_normalizer for X in point_normalizer_corpus(L, 1, 10)}
    assert flags == {True, False}


def test_pairing_is_symmetric_and_sympy_consistent():
    x = op.OmniElt([[1, 2], [3, 4]], [5, 6])
    y = op.OmniElt([[0, 1], [1, 0]], [1, -1])
    assert op.omni_pairing(x, y) == op.omni_pairing(y, x)
    A, u = oracles.point_split(x.flatten(), 2)
    B, v = oracles.point_split(y.flatten(), 2)
    expected = (A * v + B * u) / 2
    assert list(op.omni_pairing(x, y)) == [sp.nsimplify(e) for e in expected]
