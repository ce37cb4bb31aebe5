from fractions import Fraction

import pytest
import sympy as sp

from omnilie.corpus import random_der, random_jet, random_omni, random_tau, random_vec, rng_for
from omnilie.exact import Poly
from omnilie.sections import (FrameForm, der_bracket, der_frame, dorfman, falling, falling_from_parts,
                              falling_parts, form_from_function, form_from_jet, jet_d,
                              jet_d_form, jet_prolong_rank, lie_derivative, omni_pairing_sec)

from oracles import dorfman_oracle

T = sp.symbols("t1 t2 t3")


def sym(p: Poly):
    out = sp.Integer(0)
    for e, c in p.terms.items():
        c = sp.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sp.Integer(c)
        out += c * sp.Mul(*[t ** k for t, k in zip(T, e)])
    return out


def sym_vec(v):
    return sp.Matrix([sym(p) for p in v])


def sym_mat(m):
    return sp.Matrix([[sym(p) for p in row] for row in m])


def act(D, v):
    """The derivation D on a sympy section v: x(v) + Phi v."""
    x = [sym(p) for p in D.x]
    return sp.Matrix([sum(x[a] * sp.diff(v[k], T[a]) for a in range(len(x))) for k in range(len(v))]) \
        + sym_mat(D.Phi) * v


def pair(m, D):
    """<(u, eta), (x, Phi)> = Phi u + eta x in sympy."""
    return sym_mat(D.Phi) * sym_vec(m.u) + sym_mat(m.eta) * sym_vec(D.x)


@pytest.mark.parametrize("seed", range(8))
def test_derivation_bracket_is_operator_commutator(seed):
    rng = rng_for(seed)
    D1, D2 = random_der(rng, 2, 2, 2), random_der(rng, 2, 2, 2)
    v = sym_vec(random_vec(rng, 2, 2, 3))
    lhs = act(der_bracket(D1, D2), v)
    rhs = act(D1, act(D2, v)) - act(D2, act(D1, v))
    assert sp.expand(lhs - rhs) == sp.zeros(2, 1)


@pytest.mark.parametrize("seed", range(8))
def test_jet_pairing_reproduces_the_action(seed):
    rng = rng_for(seed)
    D = random_der(rng, 2, 2, 2)
    v = random_vec(rng, 2, 2, 2)
    assert sp.expand(pair(jet_prolong_rank(v, 2), D) - act(D, sym_vec(v))) == sp.zeros(2, 1)


@pytest.mark.parametrize("seed", range(8))
def test_lie_derivative_defining_identity_in_sympy(seed):
    rng = rng_for(seed)
    D, D2 = random_der(rng, 2, 2, 1), random_der(rng, 2, 2, 1)
    m = random_jet(rng, 2, 2, 2)
    lhs = pair(lie_derivative(D, m), D2)
    rhs = act(D, pair(m, D2)) - pair(m, der_bracket(D, D2))
    assert sp.expand(lhs - rhs) == sp.zeros(2, 1)


@pytest.mark.parametrize("seed", range(6))
def test_falling_operator_closed_form(seed):
    rng = rng_for(seed)
    X = random_omni(rng, 2, 2, 2)
    t = random_tau(rng, 2, 2, 2)
    assert falling(X, t) == falling_from_parts(*falling_parts(X), t)


@pytest.mark.parametrize("seed", range(6))
def test_exact_sections_bracket_and_pairing(seed):
    rng = rng_for(seed)
    X = random_omni(rng, 2, 2, 2)
    v = random_vec(rng, 2, 2, 2)
    # exact sections bracket trivially from the left
    assert dorfman(jet_d(v, 2), X).is_zero()
    pv = omni_pairing_sec(jet_d(v, 2), X)
    half = [sp.Rational(1, 2) * e for e in act(X.der, sym_vec(v))]
    assert [sym(p) for p in pv] == [sp.expand(h) for h in half]


def test_form_differential_squares_to_zero():
    rng = rng_for(5)
    for _ in range(3):
        v = random_vec(rng, 2, 2, 2)
        w = form_from_function(v, 2, 2)
        assert jet_d_form(jet_d_form(w)).is_zero()
        m = random_jet(rng, 2, 2, 2)
        assert jet_d_form(jet_d_form(form_from_jet(m))).is_zero()


def test_form_differential_of_function_is_action():
    rng = rng_for(9)
    v = random_vec(rng, 2, 2, 2)
    dv = jet_d_form(form_from_function(v, 2, 2))
    for i, D in enumerate(der_frame(2, 2)):
        assert dv.value((i,)) == D.act(v)


def test_frame_form_rejects_high_degree():
    with pytest.raises(ValueError):
        jet_d_form(FrameForm(3, 1, 1, {}))


def to_sympy(X):
    D = ([sym(p) for p in X.der.x], sym_mat(X.der.Phi))
    return D, (sym_vec(X.jet.u), sym_mat(X.jet.eta))


@pytest.mark.parametrize("seed", range(4))
def test_dorfman_matches_operator_oracle(seed):
    rng = rng_for(seed)
    X, Y = random_omni(rng, 2, 2, 2), random_omni(rng, 2, 2, 2)
    (x, Phi), (u, eta) = to_sympy(dorfman(X, Y))
    (ox, oPhi), (ou, oeta) = dorfman_oracle(to_sympy(X), to_sympy(Y), T[:2])
    assert [sp.expand(a - b) for a, b in zip(x, ox)] == [0, 0]
    assert sp.expand(Phi - oPhi) == sp.zeros(2, 2)
    assert sp.expand(u - ou) == sp.zeros(2, 1)
    assert sp.expand(eta - oeta) == sp.zeros(2, 2)
