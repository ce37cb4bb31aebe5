"""Seeded verification of the algebraic identities of the bracket and pairing.

Each identity is checked on every sample; a failing identity records the index
of its first counterexample and the nonzero residual.
"""

from __future__ import annotations

from . import omni_point as op
from .corpus import (random_der, random_hom, random_jet, random_omni, random_point,
                     random_poly, random_tau, rng_for)
from .report import Report
from .sections import (TauSec, a_embed, apply_field, b_proj, der_bracket, df_tensor,
                       dorfman, falling, jet_d, jet_pairing, jet_prolong_rank, lie_derivative,
                       omni_pairing_sec, OmniSec, vadd, vscale, vsub, zvec)

POINT_IDENTITIES = ("leibniz", "anchor_morphism", "self_bracket", "invariance",
                    "symmetrization", "left_ideal_projection", "right_ideal",
                    "falling_morphism")

BUNDLE_IDENTITIES = ("leibniz", "anchor_morphism", "right_function_rule", "self_bracket",
                     "invariance", "left_function_rule", "symmetrization",
                     "left_ideal_projection", "right_ideal", "pairing_with_jet",
                     "lie_derivative_defining", "jet_leibniz", "falling_morphism")


class _Tally:
    def __init__(self, names):
        self.names = names
        self.first_failure = {}

    def record(self, name, i, residual_zero, residual=None):
        if not residual_zero and name not in self.first_failure:
            self.first_failure[name] = {"sample": i, "residual": residual}

    def into(self, report: Report, prefix: str, count: int):
        for name in self.names:
            bad = self.first_failure.get(name)
            report.add(f"{prefix}.{name}", bad is None, bad, anchor=f"axioms.{name}")


def point_suite(seed: int, r: int, count: int, report: Report | None = None) -> Report:
    report = report or Report("verify-axioms", seed=seed)
    rng = rng_for(seed)
    t = _Tally(POINT_IDENTITIES)
    br, pr = op.omni_bracket, op.omni_pairing
    for i in range(count):
        X, Y, Z = (random_point(rng, r) for _ in range(3))
        lhs = br(X, br(Y, Z))
        rhs = br(br(X, Y), Z) + br(Y, br(X, Z))
        t.record("leibniz", i, lhs == rhs, (lhs - rhs).flatten())
        a, b = X.endo, Y.endo
        comm = op._mm(a, b)
        comm2 = op._mm(b, a)
        comm = tuple(tuple(p - q for p, q in zip(r1, r2)) for r1, r2 in zip(comm, comm2))
        t.record("anchor_morphism", i, br(X, Y).endo == comm)
        t.record("self_bracket", i, br(X, X) == op.jet_d(pr(X, X)))
        lhs = op._mv(X.endo, pr(Y, Z))
        rhs = [p + q for p, q in zip(pr(br(X, Y), Z), pr(Y, br(X, Z)))]
        t.record("invariance", i, list(lhs) == rhs)
        s = br(X, Y) + br(Y, X)
        t.record("symmetrization", i, s == op.jet_d(pr(X, Y)).scale(2))
        h = op.OmniElt(X.endo, [0] * r)
        t.record("left_ideal_projection", i, list(br(h, Y).vec) == op._mv(X.endo, Y.vec))
        t.record("right_ideal", i, not any(br(Y, h).vec))
        t.record("falling_morphism", i, op.falling_point(br(X, Y)) == comm)
    t.into(report, f"point(r={r})", count)
    return report


def bundle_suite(seed: int, d: int, r: int, deg: int, count: int,
                 report: Report | None = None) -> Report:
    report = report or Report("verify-axioms", seed=seed)
    rng = rng_for(seed)
    t = _Tally(BUNDLE_IDENTITIES)
    for i in range(count):
        X, Y, Z = (random_omni(rng, d, r, deg) for _ in range(3))
        f = random_poly(rng, d, 1)
        h = random_hom(rng, d, r, deg)
        XY = dorfman(X, Y)
        lhs = dorfman(X, dorfman(Y, Z))
        rhs = dorfman(XY, Z) + dorfman(Y, dorfman(X, Z))
        t.record("leibniz", i, lhs == rhs, _nonzero(lhs - rhs))

        t.record("anchor_morphism", i, XY.der == der_bracket(X.der, Y.der))

        lhs = dorfman(X, Y.scale(f))
        rhs = XY.scale(f) + Y.scale(apply_field(X.der.x, f))
        t.record("right_function_rule", i, lhs == rhs, _nonzero(lhs - rhs))

        t.record("self_bracket", i, dorfman(X, X) == jet_d(omni_pairing_sec(X, X), d))

        lhs = X.der.act(omni_pairing_sec(Y, Z))
        rhs = vadd(omni_pairing_sec(XY, Z), omni_pairing_sec(Y, dorfman(X, Z)))
        t.record("invariance", i, lhs == rhs, vsub(lhs, rhs))

        pair = omni_pairing_sec(X, Y)
        lhs = dorfman(X.scale(f), Y)
        rhs = XY.scale(f) - X.scale(apply_field(Y.der.x, f))
        corr = df_tensor(f, vscale(2, pair), d)
        rhs = OmniSec(rhs.der, rhs.jet + corr)
        t.record("left_function_rule", i, lhs == rhs, _nonzero(lhs - rhs))

        s = XY + dorfman(Y, X)
        t.record("symmetrization", i, s == jet_d(vscale(2, pair), d))

        lhs = b_proj(dorfman(a_embed(h), X))
        t.record("left_ideal_projection", i, lhs == _tau_value(h, b_proj(X)))
        t.record("right_ideal", i, b_proj(dorfman(X, a_embed(h))).is_zero())

        v = Y.jet.u
        t.record("pairing_with_jet", i,
                 jet_pairing(jet_prolong_rank(v, d), X.der) == X.der.act(v))

        D2 = random_der(rng, d, r, deg)
        m = random_jet(rng, d, r, deg)
        lhs = jet_pairing(lie_derivative(X.der, m), D2)
        rhs = vsub(X.der.act(jet_pairing(m, D2)), jet_pairing(m, der_bracket(X.der, D2)))
        t.record("lie_derivative_defining", i, lhs == rhs, vsub(lhs, rhs))

        fv = vscale(f, v)
        lhs = jet_prolong_rank(fv, d)
        rhs = jet_prolong_rank(v, d).scale(f) + df_tensor(f, v, d)
        t.record("jet_leibniz", i, lhs == rhs)

        tau = random_tau(rng, d, r, deg)
        lhs = falling(XY, tau)
        rhs = falling(X, falling(Y, tau)) - falling(Y, falling(X, tau))
        t.record("falling_morphism", i, lhs == rhs)
    t.into(report, f"bundle(d={d},r={r},deg={deg})", count)
    return report


def _tau_value(h, tau):
    return TauSec(zvec(tau.nvars, tau.nvars), h(tau), tau.nvars)


def _nonzero(X) -> dict:
    """Compact residual: indices and values of nonzero components."""
    return {i: repr(p) for i, p in enumerate(X.components()) if p.terms}


def axiom_suite(seed: int = 1, d: int = 2, r: int = 2, deg: int = 2, count: int = 200,
                point: bool = True) -> Report:
    report = Report("verify-axioms", seed=seed,
                    params={"d": d, "r": r, "deg": deg, "count": count})
    if point:
        point_suite(seed, r, count, report)
    bundle_suite(seed, d, r, deg, count, report)
    return report
