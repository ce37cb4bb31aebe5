"""Deformations of projective Lie algebroids, cochains on Dirac structures,
and compatibility of a pair of Lie algebroids on E and its dual."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .algebroids import AnchorAlgebroid, ProjAlgebroid, check_projective_algebroid
from .dirac import (DiracPres, dirac_closure_check, falling_section, lift_bundle,
                    normalizer_membership)
from .exact import Poly
from .report import Report
from .sections import (OmniSec, TauSec, apply_field, b_proj, dorfman, is_zero_vec,
                       omni_pairing_sec, pvec, vadd, vscale, vsub, zvec)

EPSILONS = (1, -1, 2)
HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# E-valued cochains on L


def omega_X(X: OmniSec, l: OmniSec) -> tuple:
    return omni_pairing_sec(X, l)


def d_L_one(w, l1: OmniSec, l2: OmniSec) -> tuple:
    """CE differential of an E-valued one-cochain on sections of L."""
    a = l1.der.act(w(l2))
    b = l2.der.act(w(l1))
    return vsub(vsub(a, b), w(dorfman(l1, l2)))


def d_L_two(w, l1, l2, l3) -> tuple:
    acc = zvec(l1.nvars, len(l1.jet.u))
    for a, b, c in ((l1, l2, l3), (l2, l3, l1), (l3, l1, l2)):
        acc = vadd(acc, a.der.act(w(b, c)))
        acc = vsub(acc, w(dorfman(a, b), c))
    return acc


def omega_X_cocycle_report(X: OmniSec, L: DiracPres, report: Report | None = None) -> Report:
    """d_L omega_X against the bracket identity, and against normalizer membership."""
    report = report or Report("normalizer")
    frame = L.frame()
    ident = None
    closed = True
    w = lambda l: omega_X(X, l)  # noqa: E731
    for i, j in combinations(range(len(frame)), 2):
        lhs = d_L_one(w, frame[i], frame[j])
        rhs = vscale(-1, omni_pairing_sec(dorfman(X, frame[i]), frame[j]))
        if lhs != rhs and ident is None:
            ident = {"pair": (i, j)}
        if not is_zero_vec(lhs):
            closed = False
    report.add("omega_bracket_identity", ident is None, ident, anchor="normalizer.identity")
    in_n = normalizer_membership(X, L)
    report.add("cocycle_iff_normalizer", closed == in_n,
               {"cocycle": closed, "normalizer": in_n}, anchor="normalizer.cocycle")
    return report


# ---------------------------------------------------------------------------
# deformations


@dataclass
class DeformationReport:
    closed: bool
    fibrewise: bool
    b_star_closed: bool
    deformed_dirac_ok: bool | None
    witness: dict | None = None

    @property
    def consistent(self) -> bool:
        return self.closed == self.b_star_closed


def omega_coords(A: ProjAlgebroid, omega: dict) -> dict:
    """E-valued frame map -> A-coordinates, checking values lie in A and E."""
    out = {}
    for (i, j), v in omega.items():
        v = pvec(A.d, v)
        c = A.coords(TauSec(zvec(A.d, A.d), v, A.d))
        if c is None:
            raise ValueError(f"value of Omega on ({i},{j}) is not in the intersection of A and E")
        if i == j:
            if not is_zero_vec(c):
                raise ValueError("skewness: Omega(a, a) must vanish")
            continue
        key, val = ((i, j), c) if i < j else ((j, i), vscale(-1, c))
        out[key] = val
    return out


class FrameOmega:
    """A function-bilinear skew map on sections of A given on the frame."""

    def __init__(self, A: ProjAlgebroid, coords: dict):
        self.A = A
        self.coords = coords

    def frame_value(self, i, j):
        if i == j:
            return zvec(self.A.d, self.A.n)
        if i < j:
            return self.coords.get((i, j), zvec(self.A.d, self.A.n))
        return vscale(-1, self.coords.get((j, i), zvec(self.A.d, self.A.n)))

    def __call__(self, f, g) -> tuple:
        A = self.A
        out = zvec(A.d, A.n)
        for i in range(A.n):
            if not f[i].terms:
                continue
            for j in range(A.n):
                if g[j].terms and i != j:
                    out = vadd(out, vscale(f[i] * g[j], self.frame_value(i, j)))
        return out


def deformed(A: ProjAlgebroid, coords: dict, eps) -> ProjAlgebroid:
    structure = {}
    for i, j in combinations(range(A.n), 2):
        s = A.struct(i, j)
        o = coords.get((i, j))
        structure[(i, j)] = s if o is None else vadd(s, vscale(eps, o))
    return A.with_structure(structure)


def deformation_check(A: ProjAlgebroid, omega: dict, report: Report | None = None) -> DeformationReport:
    coords = omega_coords(A, omega)
    Om = FrameOmega(A, coords)
    units = [A.unit(i) for i in range(A.n)]
    closed = fib = True
    witness = None
    for i, j, k in combinations(range(A.n), 3):
        a, b, c = units[i], units[j], units[k]
        cl = zvec(A.d, A.n)
        fw = zvec(A.d, A.n)
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            cl = vadd(cl, Om(A.bracket(x, y), z))
            cl = vadd(cl, A.bracket(Om(x, y), z))
            fw = vadd(fw, Om(Om(x, y), z))
        if not is_zero_vec(cl):
            closed = False
            witness = witness or {"closed_triple": (i, j, k)}
        if not is_zero_vec(fw):
            fib = False
            witness = witness or {"fibrewise_triple": (i, j, k)}

    # pull back to the lift and apply the CE differential of L
    L = lift_bundle(A)
    frame = L.frame()

    def pulled(l1, l2):
        c1, c2 = A.coords(b_proj(l1)), A.coords(b_proj(l2))
        return A.section(Om(c1, c2)).u

    b_closed = True
    for i, j, k in combinations(range(len(frame)), 3):
        if not is_zero_vec(d_L_two(pulled, frame[i], frame[j], frame[k])):
            b_closed = False
            break

    dirac_ok = None
    if closed and fib:
        dirac_ok = True
        for eps in EPSILONS:
            Ae = deformed(A, coords, eps)
            if not check_projective_algebroid(Ae).ok or not dirac_closure_check(lift_bundle(Ae)).ok:
                dirac_ok = False
                witness = witness or {"epsilon": eps}
    res = DeformationReport(closed, fib, b_closed, dirac_ok, witness)
    if report is not None:
        report.add("deform.closed", closed, witness, anchor="deform.closed")
        report.add("deform.fibrewise", fib, witness, anchor="deform.fibrewise")
        report.add("deform.pullback_closed_agrees", closed == b_closed,
                   {"closed": closed, "pullback_closed": b_closed}, anchor="deform.pullback")
        report.add("deform.deformed_dirac", dirac_ok is not False, witness, anchor="deform.dirac")
    return res


@dataclass
class NormalizerDeformation:
    omega: dict
    values_in_intersection: bool
    bilinear: bool
    tx_condition: bool
    coboundary_relation: bool | None
    deformation: DeformationReport | None


def falling_on_A(A: ProjAlgebroid, X: OmniSec):
    fp = falling_section(X)

    def op(coords):
        c = A.coords(fp(A.section(coords)))
        if c is None:
            raise ValueError("falling operator leaves A: not in the normalizer of b^{-1}(A)")
        return c
    return op


def _omega_from_falling(A, down, f, g):
    s = vadd(A.bracket(down(f), g), A.bracket(f, down(g)))
    s = vsub(s, down(A.bracket(f, g)))
    return vscale(HALF, s)


def deformation_from_normalizer(A: ProjAlgebroid, X: OmniSec, report: Report | None = None,
                                multiplier: Poly | None = None) -> NormalizerDeformation:
    fp = falling_section(X)
    for i, a in enumerate(A.frame):
        if not A.contains(fp(a)):
            raise ValueError(f"X does not preserve sections of A (frame element {i})")
    down = falling_on_A(A, X)
    n = A.n
    units = [A.unit(i) for i in range(n)]
    vals = {}
    in_int = True
    for i, j in combinations(range(n), 2):
        c = _omega_from_falling(A, down, units[i], units[j])
        if not is_zero_vec(A.anchor(c)):
            in_int = False
        vals[(i, j)] = c
    # bundle-map check: multiply one slot by a polynomial
    f = multiplier or Poly.var(A.d, 0) + 1
    bilinear = all(_omega_from_falling(A, down, vscale(f, units[i]), units[j]) ==
                   vscale(f, vals[(i, j)]) for i, j in combinations(range(n), 2))

    def T(a, b):
        s = vsub(vadd(A.bracket(down(a), b), A.bracket(a, down(b))), down(A.bracket(a, b)))
        return vsub(down(s), A.bracket(down(a), down(b)))

    tx = True
    for i, j, k in combinations(range(n), 3):
        acc = zvec(A.d, n)
        for a, b, c in ((units[i], units[j], units[k]), (units[j], units[k], units[i]),
                        (units[k], units[i], units[j])):
            acc = vadd(acc, vadd(A.bracket(T(a, b), c), T(A.bracket(a, b), c)))
        if not is_zero_vec(acc):
            tx = False
            break

    omega_e = {k: A.section(v).u for k, v in vals.items()}
    cob = None
    dep = None
    if in_int and bilinear:
        L = lift_bundle(A)
        frame = L.frame()
        w = lambda l: omega_X(X, l)  # noqa: E731
        Om = FrameOmega(A, vals)
        cob = True
        for l1, l2 in combinations(frame, 2):
            lhs = A.section(Om(A.coords(b_proj(l1)), A.coords(b_proj(l2)))).u
            if lhs != d_L_one(w, l1, l2):
                cob = False
                break
        dep = deformation_check(A, omega_e)
    res = NormalizerDeformation(omega_e, in_int, bilinear, tx, cob, dep)
    if report is not None:
        report.add("omega.values_in_intersection", in_int, anchor="deform.omega_values")
        report.add("omega.bundle_map", bilinear, anchor="deform.omega_bilinear")
        report.add("omega.coboundary_relation", cob is not False, anchor="deform.coboundary")
        report.add("omega.tx_agrees_with_deformation",
                   dep is None or (dep.closed and dep.fibrewise) == tx, anchor="deform.tx")
        report.add("omega.tx_condition", tx, anchor="deform.tx_condition")
    return res


# ---------------------------------------------------------------------------
# Lie bialgebroids over a chart: E with (rho, c), its dual with (rho*, c*)


def _sec_bracket(alg: AnchorAlgebroid, u, v) -> tuple:
    """[u, v] for sections of E (coefficient vectors)."""
    return alg.bracket(u, v)


def _anchor_apply(alg: AnchorAlgebroid, u, f: Poly) -> Poly:
    return apply_field(alg.anchor(u), f)


def _wedge_sections(secs, d) -> dict:
    """Multivector of the wedge of coefficient vectors."""
    out = {(): Poly.const(d, 1)}
    for s in secs:
        nxt = {}
        for key, c in out.items():
            for i, f in enumerate(s):
                if not f.terms or i in key:
                    continue
                lst = list(key) + [i]
                sign = 1
                # move i into sorted position
                for k in key:
                    if k > i:
                        sign = -sign
                nk = tuple(sorted(lst))
                nxt[nk] = nxt.get(nk, Poly.zero(d)) + c * f * sign
        out = {k: v for k, v in nxt.items() if v.terms}
    return out


def _mv_add(p, q, s=1):
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, v * 0) + v * s
    return {k: v for k, v in out.items() if v.terms}


def _decomposables(P: dict, r: int, d: int):
    """Yield (list of coefficient vectors) whose wedges sum to P."""
    for key, c in P.items():
        vecs = []
        for pos, i in enumerate(key):
            f = c if pos == 0 else Poly.const(d, 1)
            vecs.append(tuple(f if k == i else Poly.zero(d) for k in range(r)))
        yield vecs


def gerstenhaber(alg: AnchorAlgebroid, P, Q, p: int, q: int) -> dict | Poly:
    """Bracket of multivectors (dicts) or functions (degree 0) for the algebroid E."""
    d, r = alg.d, alg.r
    if p == 0 and q == 0:
        return Poly.zero(d)
    if p == 0:
        # graded skew symmetry: [f, Q] = -(-1)^(q-1) [Q, f]
        sign = -((-1) ** (q - 1))
        res = gerstenhaber(alg, Q, P, q, 0)
        return _scale_mv(res, sign) if isinstance(res, dict) else res * sign
    if q == 0:
        out = {}
        for vecs in _decomposables(P, r, d):
            for i, X in enumerate(vecs):
                rest = vecs[:i] + vecs[i + 1:]
                sign = (-1) ** (p - 1 - i)
                g = _anchor_apply(alg, X, Q)
                if g.terms:
                    out = _mv_add(out, _scale_mv(_wedge_sections(rest, d), g * sign))
        return out if p > 1 else out.get((), Poly.zero(d))
    out = {}
    for xs in _decomposables(P, r, d):
        for ys in _decomposables(Q, r, d):
            for i, X in enumerate(xs):
                for j, Y in enumerate(ys):
                    br = _sec_bracket(alg, X, Y)
                    if is_zero_vec(br):
                        continue
                    sign = (-1) ** (i + j)
                    rest = [br] + xs[:i] + xs[i + 1:] + ys[:j] + ys[j + 1:]
                    out = _mv_add(out, _wedge_sections(rest, d), sign)
    return out


def _scale_mv(P: dict, f) -> dict:
    return {k: v * f for k, v in P.items() if (v * f).terms}


def _vec_to_mv(u) -> dict:
    return {(i,): f for i, f in enumerate(u) if f.terms}


def d_star_function(dual: AnchorAlgebroid, f: Poly) -> dict:
    """d_* f = sum_i rho*(eps^i)(f) e_i."""
    return {(i,): apply_field(dual.anchor_of(i), f) for i in range(dual.n)
            if apply_field(dual.anchor_of(i), f).terms}


def d_star_section(dual: AnchorAlgebroid, u) -> dict:
    """(d_* u)(eps^a, eps^b) = rho*_a(u^b) - rho*_b(u^a) - <[eps^a, eps^b]_*, u>."""
    out = {}
    for a, b in combinations(range(dual.n), 2):
        v = apply_field(dual.anchor_of(a), u[b]) - apply_field(dual.anchor_of(b), u[a])
        s = dual.struct(a, b)
        for i in range(dual.n):
            if s[i].terms and u[i].terms:
                v = v - s[i] * u[i]
        if v.terms:
            out[(a, b)] = v
    return out


@dataclass
class BialgebroidReport:
    cond_sections: bool
    cond_mixed: bool
    cond_functions: bool
    witness: dict | None = None

    @property
    def ok(self) -> bool:
        return self.cond_sections and self.cond_mixed and self.cond_functions


def _as_mv(x, d):
    if isinstance(x, dict):
        return x
    return {(): x} if x.terms else {}


def bialgebroid_check(E: AnchorAlgebroid, Estar: AnchorAlgebroid,
                      report: Report | None = None) -> BialgebroidReport:
    for name, alg in (("E", E), ("dual", Estar)):
        if alg.m != alg.r:
            raise ValueError(f"{name}: a Lie algebroid on the whole bundle is required")
        if not check_projective_algebroid(alg).ok:
            raise ValueError(f"{name}: not a Lie algebroid")
    if (E.d, E.r) != (Estar.d, Estar.r):
        raise ValueError("E and its dual must share (d, r)")
    d, r = E.d, E.r
    witness = None

    def dstar(P, p):
        if p == 0:
            return d_star_function(Estar, P)
        return d_star_section(Estar, _mv_to_vec(P, r, d))

    # sections: d_*[e_i, e_j] = [d_* e_i, e_j] + [e_i, d_* e_j]
    secs = True
    for i, j in combinations(range(r), 2):
        ei, ej = _vec_to_mv(E.unit(i)), _vec_to_mv(E.unit(j))
        lhs = dstar(gerstenhaber(E, ei, ej, 1, 1), 1)
        rhs = _mv_add(gerstenhaber(E, dstar(ei, 1), ej, 2, 1), gerstenhaber(E, ei, dstar(ej, 1), 1, 2))
        if _mv_add(lhs, rhs, -1):
            secs = False
            witness = witness or {"sections": (i, j)}
    # mixed: d_*[u, f] = [d_* u, f] + [u, d_* f] on (e_i, t_a)
    mixed = True
    for i in range(r):
        for a in range(d):
            ei = _vec_to_mv(E.unit(i))
            f = Poly.var(d, a)
            lhs = _as_mv(dstar(gerstenhaber(E, ei, f, 1, 0), 0), d)
            rhs = _mv_add(_as_mv(gerstenhaber(E, dstar(ei, 1), f, 2, 0), d),
                          _as_mv(gerstenhaber(E, ei, dstar(f, 0), 1, 1), d))
            if _mv_add(lhs, rhs, -1):
                mixed = False
                witness = witness or {"mixed": (i, a)}
    # functions: 0 = [d_* f, g] - [f, d_* g] on (t_a, t_b)
    funcs = True
    for a in range(d):
        for b in range(a, d):
            f, g = Poly.var(d, a), Poly.var(d, b)
            v = gerstenhaber(E, dstar(f, 0), g, 1, 0) - gerstenhaber(E, f, dstar(g, 0), 0, 1)
            if v.terms:
                funcs = False
                witness = witness or {"functions": (a, b)}
    res = BialgebroidReport(secs, mixed, funcs, witness)
    if report is not None:
        report.add("bialgebroid.sections", secs, witness, anchor="bialgebroid.sections")
        report.add("bialgebroid.mixed", mixed, witness, anchor="bialgebroid.mixed")
        report.add("bialgebroid.functions", funcs, witness, anchor="bialgebroid.functions")
    return res


def _mv_to_vec(P, r, d):
    return tuple(P.get((i,), Poly.zero(d)) for i in range(r))
