"""Reducible Dirac structures over a chart and their projective algebroids.

A :class:`DiracPres` is spanned over polynomials by one lifted section per
frame element of A plus the image of a frame of A^0. Every check reduces to
the membership test, which solves for polynomial coefficients explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from .algebroids import ProjAlgebroid
from .exact import Poly
from .report import Report
from .sections import (DerSec, HomSec, JetSec, OmniSec, TauSec, a_embed, apply_field, apply_field_vec, b_proj,
                       dorfman, field_bracket, gamma0, is_zero_mat, is_zero_vec, jacobian, matvec,
                       msub, omni_pairing_sec, pmat, vadd, vscale, vsub, zmat, zvec)


@dataclass(frozen=True)
class Connection:
    """Connection on E: nabla_{d/dt_a} v = d v/dt_a + theta[a] v."""

    theta: tuple

    @classmethod
    def flat(cls, d: int, r: int) -> Connection:
        return cls(tuple(zmat(d, r, r) for _ in range(d)))

    @classmethod
    def make(cls, d: int, theta) -> Connection:
        return cls(tuple(pmat(d, t) for t in theta))

    def matrix(self, x, d: int, r: int) -> tuple:
        """theta(x) = sum_a x^a theta[a]."""
        m = zmat(d, r, r)
        for a, xa in enumerate(x):
            if xa.terms:
                m = tuple(vadd(row, vscale(xa, trow)) for row, trow in zip(m, self.theta[a]))
        return m

    def covariant(self, x, v, d: int) -> tuple:
        r = len(v)
        return vadd(apply_field_vec(x, v), matvec(self.matrix(x, d, r), v, d))

    def lift_tau(self, t: TauSec) -> OmniSec:
        """Horizontal lift of y + v: derivation nabla_y, jet of v for this connection."""
        d, r = t.shape
        if all(is_zero_mat(th) for th in self.theta):
            return gamma0(t)
        phi = self.matrix(t.x, d, r)
        cols = [vscale(-1, matvec(self.theta[a], t.u, d)) for a in range(d)]
        eta = tuple(tuple(cols[a][k] for a in range(d)) for k in range(r))
        return OmniSec(DerSec(t.x, phi, d), JetSec(t.u, eta, d))


@dataclass
class DiracPres:
    base: ProjAlgebroid
    lift_frame: list
    a0_frame: list
    name: str = ""
    origin: str = "lift"
    meta: dict = field(default_factory=dict)

    @property
    def d(self):
        return self.base.d

    @property
    def r(self):
        return self.base.r

    def frame(self) -> list:
        return list(self.lift_frame) + [a_embed(h) for h in self.a0_frame]

    def rank(self) -> int:
        return len(self.lift_frame) + len(self.a0_frame)


def omega_gamma(A: ProjAlgebroid, a: TauSec, b: TauSec, conn: Connection | None = None) -> tuple:
    """[a,b]_A - [x,y] - nabla_x v + nabla_y u, an E-valued skew form on A."""
    conn = conn or Connection.flat(A.d, A.r)
    ca, cb = A.coords(a), A.coords(b)
    if ca is None or cb is None:
        raise ValueError("omega_gamma arguments must be sections of A")
    br = A.section(A.bracket(ca, cb))
    tm = vsub(br.x, field_bracket(a.x, b.x))
    if not is_zero_vec(tm):
        raise ValueError("anchor is not a bracket morphism; tangent residual is nonzero")
    return vadd(vsub(br.u, conn.covariant(a.x, b.u, A.d)), conn.covariant(b.x, a.u, A.d))


def _frame_omega(A: ProjAlgebroid, conn) -> dict:
    return {(i, j): omega_gamma(A, A.frame[i], A.frame[j], conn)
            for i in range(A.n) for j in range(A.n)}


def omega_hom(A: ProjAlgebroid, i: int, omegas: dict) -> HomSec:
    """The bundle map t -> Omega(a_i, p_A t)."""
    d, r = A.d, A.r

    def value(t):
        coeffs = A.p_A(t)
        acc = zvec(d, r)
        for j, f in enumerate(coeffs):
            if f.terms:
                acc = vadd(acc, vscale(f, omegas[(i, j)]))
        return acc

    ycols = [value(TauSec(tuple(Poly.const(d, 1 if k == a else 0) for k in range(d)), zvec(d, r), d))
             for a in range(d)]
    pcols = [value(TauSec(zvec(d, d), tuple(Poly.const(d, 1 if q == k else 0) for q in range(r)), d))
             for k in range(r)]
    y = tuple(tuple(ycols[a][k] for a in range(d)) for k in range(r))
    phi = tuple(tuple(pcols[q][k] for q in range(r)) for k in range(r))
    return HomSec(phi, y, d)


def lift_bundle(A: ProjAlgebroid, conn: Connection | None = None, name: str = "") -> DiracPres:
    conn = conn or Connection.flat(A.d, A.r)
    omegas = _frame_omega(A, conn)
    frame = [conn.lift_tau(a) + a_embed(omega_hom(A, i, omegas)) for i, a in enumerate(A.frame)]
    return DiracPres(A.shape_only(), frame, A.a0_frame(), name=name, origin="lift")


def membership_L(X: OmniSec, L: DiracPres) -> bool:
    return membership_witness(X, L) is None


def membership_witness(X: OmniSec, L: DiracPres):
    """None if X is a section of L, otherwise a short reason."""
    base = L.base
    coords = base.coords(b_proj(X))
    if coords is None:
        return {"reason": "projection leaves A", "projection": b_proj(X)}
    rest = X
    for f, s in zip(coords, L.lift_frame):
        if f.terms:
            rest = rest - s.scale(f)
    if not (is_zero_vec(rest.der.x) and is_zero_vec(rest.jet.u)):
        return {"reason": "lift frame does not project onto the A frame"}
    h = HomSec(rest.der.Phi, rest.jet.eta, X.nvars)
    bad = [i for i, a in enumerate(base.frame) if not is_zero_vec(h(a))]
    if bad:
        return {"reason": "remainder is not in the annihilator of A", "frame_index": bad[0],
                "value": h(base.frame[bad[0]])}
    return None


def isotropy_check(L: DiracPres) -> dict | None:
    frame = L.frame()
    for i, j in combinations(range(len(frame)), 2):
        v = omni_pairing_sec(frame[i], frame[j])
        if not is_zero_vec(v):
            return {"pair": (i, j), "pairing": v}
    for i, X in enumerate(frame):
        v = omni_pairing_sec(X, X)
        if not is_zero_vec(v):
            return {"pair": (i, i), "pairing": v}
    return None


def dirac_closure_check(L: DiracPres, report: Report | None = None) -> Report:
    report = report or Report("check-dirac")
    d, r = L.d, L.r
    report.add("isotropic", (w := isotropy_check(L)) is None, w, anchor="dirac.isotropic")
    expected = (1 - r) * L.base.n + r * r + r * d
    report.add("maximal_rank", L.rank() == expected,
               {"rank": L.rank(), "expected": expected}, anchor="dirac.rank")
    frame = L.frame()
    ns = len(L.lift_frame)
    labels = {(True, True): "closure.lift_lift", (True, False): "closure.lift_annihilator",
              (False, True): "closure.annihilator_lift", (False, False): "closure.annihilator_annihilator"}
    first = {v: None for v in labels.values()}
    for i, j in product(range(len(frame)), repeat=2):
        label = labels[(i < ns, j < ns)]
        if first[label] is not None:
            continue
        w = membership_witness(dorfman(frame[i], frame[j]), L)
        if w is not None:
            first[label] = {"pair": (i, j), **w}
    for label in labels.values():
        report.add(label, first[label] is None, first[label], anchor="dirac.closure")
    return report


def is_dirac_bundle(L: DiracPres) -> bool:
    return dirac_closure_check(L).ok


def reduce_bundle(L: DiracPres, check: bool = True) -> ProjAlgebroid:
    if check:
        rep = dirac_closure_check(L)
        if not rep.ok:
            raise ValueError(f"not a Dirac structure: {[c.name for c in rep.failures()]}")
    base = L.base
    structure = {}
    for i, j in combinations(range(base.n), 2):
        t = b_proj(dorfman(L.lift_frame[i], L.lift_frame[j]))
        coords = base.coords(t)
        if coords is None:
            raise ValueError(f"bracket of lifts {i},{j} leaves A")
        structure[(i, j)] = coords
    return base.with_structure(structure)


def same_dirac(L1: DiracPres, L2: DiracPres) -> bool:
    """Equality of spans, tested by mutual frame membership."""
    if (L1.d, L1.r) != (L2.d, L2.r) or L1.rank() != L2.rank():
        return False
    return all(membership_L(X, L2) for X in L1.frame()) and \
        all(membership_L(X, L1) for X in L2.frame())


# ---------------------------------------------------------------------------
# normalizer, falling operator and derivations


def normalizer_membership(X: OmniSec, L: DiracPres) -> bool:
    return all(membership_L(dorfman(X, Y), L) for Y in L.frame())


@dataclass(frozen=True)
class FallingParts:
    x: tuple
    XE: DerSec
    XM: tuple

    def __call__(self, t: TauSec) -> TauSec:
        n = t.nvars
        return TauSec(field_bracket(self.x, t.x), vadd(self.XE.act(t.u), matvec(self.XM, t.x, n)), n)


def falling_section(X: OmniSec) -> FallingParts:
    n = X.nvars
    return FallingParts(X.der.x, X.der, msub(X.jet.eta, jacobian(X.jet.u, n)))


def from_falling(x, Phi, XM, d: int) -> OmniSec:
    """The canonical section with the given falling data (jet value zero)."""
    r = len(Phi)
    return OmniSec(DerSec(tuple(x), Phi, d), JetSec(zvec(d, r), tuple(XM), d))


def kappa_kernel(Y: OmniSec, A: ProjAlgebroid) -> bool:
    """Y lies in a(A^0) + image of the jet differential."""
    if not is_zero_vec(Y.der.x):
        return False
    fp = falling_section(Y)
    h = HomSec(Y.der.Phi, fp.XM, Y.nvars)
    return A.in_a0(h)


@dataclass
class Derivation:
    """Symbol x and values on the frame of A (as sections of TM + E)."""

    x: tuple
    values: list

    def apply(self, A: ProjAlgebroid, coords) -> TauSec:
        t = TauSec.zero(A.d, A.r)
        for f, a, v in zip(coords, A.frame, self.values):
            if f.terms:
                t = t + a.scale(apply_field(self.x, f)) + v.scale(f)
        return t


def inner_derivation(A: ProjAlgebroid, coords) -> Derivation:
    return Derivation(A.anchor(coords), [A.section(A.bracket(coords, A.unit(i))) for i in range(A.n)])


def derivation_check(A: ProjAlgebroid, delta: Derivation) -> dict | None:
    """None if delta is a derivation of A; otherwise a witness."""
    coords = []
    for i, v in enumerate(delta.values):
        c = A.coords(v)
        if c is None:
            return {"reason": "value leaves A", "frame_index": i}
        coords.append(c)
    for i in range(A.n):
        lhs = field_bracket(delta.x, A.anchor_of(i))
        if A.anchor(coords[i]) != lhs:
            return {"reason": "anchor law", "frame_index": i}
    for i, j in combinations(range(A.n), 2):
        lhs = A.coords(delta.apply(A, A.struct(i, j)))
        rhs = vadd(A.bracket(coords[i], A.unit(j)), A.bracket(A.unit(i), coords[j]))
        if lhs != rhs:
            return {"reason": "bracket law", "pair": (i, j)}
    return None


def extend_derivation(A: ProjAlgebroid, delta: Derivation, shift: HomSec | None = None):
    """delta on A, the flat action of its symbol on the complement, plus an optional shift."""
    d = A.d

    def ext(t: TauSec) -> TauSec:
        fa, _ = A.decompose(t)
        a_part = A.section(fa)
        q = t - a_part
        out = delta.apply(A, fa) + TauSec(field_bracket(delta.x, q.x), apply_field_vec(delta.x, q.u), d)
        if shift is not None:
            out = out + TauSec(zvec(d, d), shift(t), d)
        return out
    return ext


def lift_derivation(A: ProjAlgebroid, delta: Derivation, shift: HomSec | None = None) -> OmniSec:
    w = derivation_check(A, delta)
    if w is not None:
        raise ValueError(f"not a derivation: {w}")
    d, r = A.d, A.r
    ext = extend_derivation(A, delta, shift)
    one, zero = Poly.const(d, 1), Poly.zero(d)
    e_vals = [ext(TauSec(zvec(d, d), tuple(one if q == k else zero for q in range(r)), d)).u
              for k in range(r)]
    t_vals = [ext(TauSec(tuple(one if b == a else zero for b in range(d)), zvec(d, r), d)).u
              for a in range(d)]
    phi = tuple(tuple(e_vals[q][k] for q in range(r)) for k in range(r))
    xm = tuple(tuple(t_vals[a][k] for a in range(d)) for k in range(r))
    return from_falling(delta.x, phi, xm, d)


def lift_derivation_report(A: ProjAlgebroid, delta: Derivation, L: DiracPres | None = None,
                           shift: HomSec | None = None) -> tuple[OmniSec, Report]:
    report = Report("derivations")
    L = L or lift_bundle(A)
    X = lift_derivation(A, delta)
    report.add("normalizer_membership", normalizer_membership(X, L), anchor="derivation.normalizer")
    fall = falling_section(X)
    bad = None
    for i, a in enumerate(A.frame):
        expected = delta.apply(A, A.unit(i))
        if fall(a) != expected:
            bad = {"frame_index": i}
            break
    report.add("falling_agrees_on_frame", bad is None, bad, anchor="derivation.falling")
    if shift is not None:
        X2 = lift_derivation(A, delta, shift)
        report.add("kappa_kernel", kappa_kernel(X - X2, A), anchor="derivation.kappa")
    return X, report
