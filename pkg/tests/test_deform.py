from itertools import combinations

import pytest
import sympy as sp

from omnilie import catalog
from omnilie.algebroids import AnchorAlgebroid, FullAlgebroid
from omnilie.corpus import random_poly, rng_for
from omnilie.deform import bialgebroid_check, deformation_check, deformation_from_normalizer
from omnilie.dirac import from_falling
from omnilie.exact import Poly
from omnilie.lie import LieStruct, nijenhuis_check
from omnilie.sections import pmat, zmat

from oracles import brute_jacobi
from test_sections import T, sym


def test_heisenberg_deformation():
    A, omega = catalog.heisenberg()
    res = deformation_check(A, omega)
    assert res.closed and res.fibrewise and res.b_star_closed and res.deformed_dirac_ok


def test_nonconstant_omega_violates_both():
    A, _ = catalog.heisenberg()
    res = deformation_check(A, {(1, 2): [0, 0, Poly.var(1, 0)]})
    assert not res.closed and not res.b_star_closed
    assert res.deformed_dirac_ok is None and res.witness == {"closed_triple": (0, 1, 2)}


@pytest.mark.parametrize("seed", range(8))
def test_closed_agrees_with_pullback_and_oracle(seed):
    # on the flat abelian TM + E of rank 3 over a line, an E-E omega is closed iff it is constant
    # and deforms iff its constant values form a Lie bracket
    rng = rng_for(seed)
    A = FullAlgebroid(1, 3)
    deg = seed % 2
    omega = {}
    for i, j in combinations(range(3), 2):
        omega[(1 + i, 1 + j)] = [random_poly(rng, 1, deg) for _ in range(3)]
    res = deformation_check(A, omega)
    const = all(p.degree() <= 0 for v in omega.values() for p in v)
    assert res.closed == res.b_star_closed == const
    if const:
        c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
        for (i, j), v in omega.items():
            vals = [p.terms.get((0,), 0) for p in v]
            c[i - 1][j - 1] = vals
            c[j - 1][i - 1] = [-x for x in vals]
        assert res.fibrewise == brute_jacobi(c)


def test_omega_must_take_values_in_the_fibre():
    A = catalog.anchor_plane()
    with pytest.raises(ValueError, match="not in the intersection"):
        deformation_check(A, {(0, 1): [1, 0]})


def _falling_X(N):
    return from_falling([Poly.zero(1)], pmat(1, N), zmat(1, 3, 1), 1)


AFF1_PLUS_LINE = LieStruct.from_brackets(3, {(0, 1): [0, 1, 0]})


@pytest.mark.parametrize("N", [[[0, 0, -1], [0, 1, 0], [0, 0, 0]], [[0, 1, -1], [1, -1, 0], [-1, -1, 1]],
                               [[1, 0, 0], [1, -1, 0], [0, 0, 1]], [[1, -1, 1], [0, 0, 1], [0, -1, 1]]])
def test_normalizer_deformation_matches_nijenhuis(N):
    A = FullAlgebroid(1, 3, fibre={(0, 1): [0, 1, 0]})
    res = deformation_from_normalizer(A, _falling_X(N))
    nij = nijenhuis_check(N, AFF1_PLUS_LINE)
    assert res.values_in_intersection and res.bilinear and res.coboundary_relation
    assert res.tx_condition == nij.weak_condition == nij.deformed_jacobi
    assert res.deformation.closed and res.deformation.fibrewise == res.tx_condition


def test_bialgebroid_trivial_cases():
    assert bialgebroid_check(*catalog.bialgebra_line()).ok
    rng = rng_for(6)
    E = AnchorAlgebroid(1, 2, [[0, 0]])
    for _ in range(3):
        Es = AnchorAlgebroid(1, 2, [[random_poly(rng, 1, 1), 0]], {(0, 1): [0, random_poly(rng, 1, 0)]})
        assert bialgebroid_check(E, Es).ok


def line_oracle(a):
    """Expand the three conditions for E = (line, anchor d/dt, no bracket), dual anchor a(t).

    Sections: no pairs in rank one. Mixed: d*[e, f] - [d* e, f] - [e, d* f] with d* e = 0.
    Functions: [d* f, g] - [f, d* g] = (d* f)(g) + (d* g)(f).
    """
    t = T[0]
    f, g = sp.Function("f")(t), sp.Function("g")(t)
    A = sym(a)
    dstar = lambda h: A * sp.diff(h, t)  # noqa: E731
    mixed = sp.simplify(dstar(sp.diff(f, t)) - sp.diff(dstar(f), t)) == 0
    funcs = sp.simplify(dstar(f) * sp.diff(g, t) + dstar(g) * sp.diff(f, t)) == 0
    return mixed, funcs


@pytest.mark.parametrize("a", [0, 2, "t", "t2"])
def test_line_bialgebroid_matches_expansion(a):
    t = Poly.var(1, 0)
    a = {0: Poly.zero(1), 2: Poly.const(1, 2), "t": t, "t2": t * t + 1}[a]
    res = bialgebroid_check(AnchorAlgebroid(1, 1, [[1]]), AnchorAlgebroid(1, 1, [[a]]))
    mixed, funcs = line_oracle(a)
    assert res.cond_sections
    assert (res.cond_mixed, res.cond_functions) == (mixed, funcs)


@pytest.mark.parametrize("seed", range(4))
def test_line_bialgebroid_seeded(seed):
    a = random_poly(rng_for(seed), 1, 2)
    res = bialgebroid_check(AnchorAlgebroid(1, 1, [[1]]), AnchorAlgebroid(1, 1, [[a]]))
    assert (res.cond_mixed, res.cond_functions) == line_oracle(a)
