"""Polynomial sections of the omni-Lie algebroid over one chart.

Derivations of E = M x Q^r are trivialized as ``(x, Phi)`` (vector field
plus matrix) and jets as ``(u, eta)`` (value plus its Hom(TM, E) part), both
relative to the flat connection of the chart. With that choice the jet of a
section v is ``(v, Jv)`` where ``Jv[k][a] = d v^k / d t_a``.

Vector-valued things are tuples of :class:`Poly`; matrices are tuples of row
tuples. ``d`` is the number of base coordinates and ``r`` the fibre rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exact import DimensionError, Poly

HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# small helpers on tuples of polynomials


def pvec(nvars: int, values) -> tuple:
    return tuple(v if isinstance(v, Poly) else Poly.const(nvars, v) for v in values)


def pmat(nvars: int, rows) -> tuple:
    return tuple(pvec(nvars, row) for row in rows)


def zvec(nvars: int, n: int) -> tuple:
    z = Poly.zero(nvars)
    return (z,) * n


def zmat(nvars: int, rows: int, cols: int) -> tuple:
    return (zvec(nvars, cols),) * rows


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(f, a):
    return tuple(f * x for x in a)


def madd(a, b):
    return tuple(vadd(x, y) for x, y in zip(a, b))


def msub(a, b):
    return tuple(vsub(x, y) for x, y in zip(a, b))


def mscale(f, a):
    return tuple(vscale(f, row) for row in a)


def _dot(row, vec, nvars):
    acc = Poly.zero(nvars)
    for p, q in zip(row, vec):
        if p.terms and q.terms:
            acc = acc + p * q
    return acc


def matvec(m, v, nvars: int) -> tuple:
    return tuple(_dot(row, v, nvars) for row in m)


def matmul(a, b, nvars: int) -> tuple:
    cols = list(zip(*b)) if b else []
    ncols = len(b[0]) if b else 0
    if not cols:
        return tuple(zvec(nvars, ncols) for _ in a)
    return tuple(tuple(_dot(row, col, nvars) for col in cols) for row in a)


def commutator(a, b, nvars: int) -> tuple:
    return msub(matmul(a, b, nvars), matmul(b, a, nvars))


def apply_field(x, f: Poly) -> Poly:
    """x(f) = sum_a x^a df/dt_a."""
    acc = Poly.zero(f.nvars)
    if not f.terms:
        return acc
    for a, xa in enumerate(x):
        if xa.terms:
            acc = acc + xa * f.diff(a)
    return acc


def apply_field_vec(x, v) -> tuple:
    return tuple(apply_field(x, f) for f in v)


def apply_field_mat(x, m) -> tuple:
    return tuple(apply_field_vec(x, row) for row in m)


def jacobian(v, d: int) -> tuple:
    """Jv[k][a] = d v^k / d t_a."""
    return tuple(tuple(f.diff(a) for a in range(d)) for f in v)


def field_bracket(x1, x2) -> tuple:
    return tuple(apply_field(x1, f2) - apply_field(x2, f1) for f1, f2 in zip(x1, x2))


def is_zero_vec(v) -> bool:
    return all(not p.terms for p in v)


def is_zero_mat(m) -> bool:
    return all(is_zero_vec(row) for row in m)


# ---------------------------------------------------------------------------
# section types


def _dims_match(*pairs):
    first = pairs[0]
    for p in pairs[1:]:
        if p != first:
            raise DimensionError(f"shape mismatch: (d, r) = {first} vs {p}")


@dataclass(frozen=True)
class DerSec:
    """Derivation v -> x(v) + Phi v of E."""

    x: tuple
    Phi: tuple
    nvars: int

    @classmethod
    def make(cls, nvars: int, x, Phi) -> DerSec:
        x, Phi = pvec(nvars, x), pmat(nvars, Phi)
        if len(x) != nvars:
            raise DimensionError(f"vector field needs {nvars} components, got {len(x)}")
        if any(len(row) != len(Phi) for row in Phi):
            raise DimensionError("Phi must be square")
        return cls(x, Phi, nvars)

    @classmethod
    def zero(cls, d: int, r: int) -> DerSec:
        return cls(zvec(d, d), zmat(d, r, r), d)

    @property
    def shape(self):
        return (self.nvars, len(self.Phi))

    def act(self, v) -> tuple:
        return vadd(apply_field_vec(self.x, v), matvec(self.Phi, v, self.nvars))

    def __add__(self, o):
        return DerSec(vadd(self.x, o.x), madd(self.Phi, o.Phi), self.nvars)

    def __sub__(self, o):
        return DerSec(vsub(self.x, o.x), msub(self.Phi, o.Phi), self.nvars)

    def scale(self, f) -> DerSec:
        return DerSec(vscale(f, self.x), mscale(f, self.Phi), self.nvars)

    def is_zero(self) -> bool:
        return is_zero_vec(self.x) and is_zero_mat(self.Phi)


@dataclass(frozen=True)
class JetSec:
    """First jet of E: value ``u`` and Hom(TM, E) part ``eta`` (r x d)."""

    u: tuple
    eta: tuple
    nvars: int

    @classmethod
    def make(cls, nvars: int, u, eta) -> JetSec:
        u, eta = pvec(nvars, u), pmat(nvars, eta)
        if len(eta) != len(u) or any(len(row) != nvars for row in eta):
            raise DimensionError(f"eta must be {len(u)}x{nvars}")
        return cls(u, eta, nvars)

    @classmethod
    def zero(cls, d: int, r: int) -> JetSec:
        return cls(zvec(d, r), zmat(d, r, d), d)

    @property
    def shape(self):
        return (self.nvars, len(self.u))

    def __add__(self, o):
        return JetSec(vadd(self.u, o.u), madd(self.eta, o.eta), self.nvars)

    def __sub__(self, o):
        return JetSec(vsub(self.u, o.u), msub(self.eta, o.eta), self.nvars)

    def scale(self, f) -> JetSec:
        return JetSec(vscale(f, self.u), mscale(f, self.eta), self.nvars)

    def is_zero(self) -> bool:
        return is_zero_vec(self.u) and is_zero_mat(self.eta)


@dataclass(frozen=True)
class TauSec:
    """Section y + v of TM + E."""

    x: tuple
    u: tuple
    nvars: int

    @classmethod
    def make(cls, nvars: int, x, u) -> TauSec:
        x = pvec(nvars, x)
        if len(x) != nvars:
            raise DimensionError(f"vector field needs {nvars} components, got {len(x)}")
        return cls(x, pvec(nvars, u), nvars)

    @classmethod
    def zero(cls, d: int, r: int) -> TauSec:
        return cls(zvec(d, d), zvec(d, r), d)

    @property
    def shape(self):
        return (self.nvars, len(self.u))

    def __add__(self, o):
        return TauSec(vadd(self.x, o.x), vadd(self.u, o.u), self.nvars)

    def __sub__(self, o):
        return TauSec(vsub(self.x, o.x), vsub(self.u, o.u), self.nvars)

    def scale(self, f) -> TauSec:
        return TauSec(vscale(f, self.x), vscale(f, self.u), self.nvars)

    def is_zero(self) -> bool:
        return is_zero_vec(self.x) and is_zero_vec(self.u)


@dataclass(frozen=True)
class HomSec:
    """Bundle map TM + E -> E, y + v |-> Phi v + Y y."""

    Phi: tuple
    y: tuple
    nvars: int

    @classmethod
    def make(cls, nvars: int, Phi, y) -> HomSec:
        Phi, y = pmat(nvars, Phi), pmat(nvars, y)
        if len(y) != len(Phi) or any(len(row) != nvars for row in y):
            raise DimensionError(f"y must be {len(Phi)}x{nvars}")
        return cls(Phi, y, nvars)

    @classmethod
    def zero(cls, d: int, r: int) -> HomSec:
        return cls(zmat(d, r, r), zmat(d, r, d), d)

    @property
    def shape(self):
        return (self.nvars, len(self.Phi))

    def __call__(self, t: TauSec) -> tuple:
        return vadd(matvec(self.Phi, t.u, self.nvars), matvec(self.y, t.x, self.nvars))

    def compose(self, o: HomSec) -> HomSec:
        """self after o, with o's values read inside E."""
        return HomSec(matmul(self.Phi, o.Phi, self.nvars), matmul(self.Phi, o.y, self.nvars), self.nvars)

    def __add__(self, o):
        return HomSec(madd(self.Phi, o.Phi), madd(self.y, o.y), self.nvars)

    def __sub__(self, o):
        return HomSec(msub(self.Phi, o.Phi), msub(self.y, o.y), self.nvars)

    def scale(self, f) -> HomSec:
        return HomSec(mscale(f, self.Phi), mscale(f, self.y), self.nvars)

    def is_zero(self) -> bool:
        return is_zero_mat(self.Phi) and is_zero_mat(self.y)


@dataclass(frozen=True)
class OmniSec:
    der: DerSec
    jet: JetSec

    @classmethod
    def make(cls, nvars: int, x, Phi, u, eta) -> OmniSec:
        return cls(DerSec.make(nvars, x, Phi), JetSec.make(nvars, u, eta))

    @classmethod
    def zero(cls, d: int, r: int) -> OmniSec:
        return cls(DerSec.zero(d, r), JetSec.zero(d, r))

    @property
    def shape(self):
        return self.der.shape

    @property
    def nvars(self):
        return self.der.nvars

    def __add__(self, o):
        return OmniSec(self.der + o.der, self.jet + o.jet)

    def __sub__(self, o):
        return OmniSec(self.der - o.der, self.jet - o.jet)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, f) -> OmniSec:
        return OmniSec(self.der.scale(f), self.jet.scale(f))

    def is_zero(self) -> bool:
        return self.der.is_zero() and self.jet.is_zero()

    def components(self) -> tuple:
        """Flat tuple of every coefficient polynomial, in a fixed order."""
        out = list(self.der.x)
        for row in self.der.Phi:
            out.extend(row)
        out.extend(self.jet.u)
        for row in self.jet.eta:
            out.extend(row)
        return tuple(out)


# ---------------------------------------------------------------------------
# operations


def der_bracket(d1: DerSec, d2: DerSec) -> DerSec:
    _dims_match(d1.shape, d2.shape)
    n = d1.nvars
    x = field_bracket(d1.x, d2.x)
    phi = msub(apply_field_mat(d1.x, d2.Phi), apply_field_mat(d2.x, d1.Phi))
    phi = madd(phi, commutator(d1.Phi, d2.Phi, n))
    return DerSec(x, phi, n)


def jet_pairing(m: JetSec, d: DerSec) -> tuple:
    """E-valued pairing Phi u + eta x."""
    _dims_match(m.shape, d.shape)
    n = m.nvars
    return vadd(matvec(d.Phi, m.u, n), matvec(m.eta, d.x, n))


def jet_prolong(v) -> JetSec:
    v = tuple(v)
    if not v:
        raise DimensionError("cannot infer the base dimension of an empty section")
    d = v[0].nvars
    return JetSec(v, jacobian(v, d), d)


def jet_prolong_rank(v, d: int) -> JetSec:
    return JetSec(tuple(v), jacobian(v, d), d)


def lie_derivative(der: DerSec, m: JetSec) -> JetSec:
    _dims_match(der.shape, m.shape)
    n = m.nvars
    x, phi = der.x, der.Phi
    u = vadd(apply_field_vec(x, m.u), matvec(phi, m.u, n))
    eta = madd(apply_field_mat(x, m.eta), matmul(phi, m.eta, n))
    # column a of (D Phi)u is (d_a Phi) u
    cols = [matvec(tuple(tuple(p.diff(a) for p in row) for row in phi), m.u, n) for a in range(n)]
    dphi_u = tuple(tuple(cols[a][k] for a in range(n)) for k in range(len(m.u)))
    eta = madd(eta, dphi_u)
    eta = madd(eta, matmul(m.eta, jacobian(x, n), n))
    return JetSec(u, eta, n)


def dorfman(X: OmniSec, Y: OmniSec) -> OmniSec:
    _dims_match(X.shape, Y.shape)
    der = der_bracket(X.der, Y.der)
    jet = lie_derivative(X.der, Y.jet) - lie_derivative(Y.der, X.jet)
    w = jet_pairing(X.jet, Y.der)
    jet = jet + jet_prolong_rank(w, X.nvars)
    return OmniSec(der, jet)


def omni_pairing_sec(X: OmniSec, Y: OmniSec) -> tuple:
    _dims_match(X.shape, Y.shape)
    s = vadd(jet_pairing(Y.jet, X.der), jet_pairing(X.jet, Y.der))
    return vscale(HALF, s)


def anchor(X: OmniSec) -> DerSec:
    return X.der


def b_proj(X: OmniSec) -> TauSec:
    return TauSec(X.der.x, X.jet.u, X.nvars)


def a_embed(h: HomSec) -> OmniSec:
    d, r = h.shape
    return OmniSec(DerSec(zvec(d, d), h.Phi, d), JetSec(zvec(d, r), h.y, d))


def jet_d(v, d: int) -> OmniSec:
    """The section (0, 0; v, Jv)."""
    r = len(v)
    return OmniSec(DerSec.zero(d, r), jet_prolong_rank(tuple(v), d))


def gamma0(t: TauSec) -> OmniSec:
    """Flat chart lift of y + v: (y, 0; v, 0)."""
    d, r = t.shape
    return OmniSec(DerSec(t.x, zmat(d, r, r), d), JetSec(t.u, zmat(d, r, d), d))


def df_tensor(f: Poly, w, d: int) -> JetSec:
    """df (x) w as a jet: (0, eta) with eta[k][a] = w^k df/dt_a."""
    grad = [f.diff(a) for a in range(d)]
    return JetSec(zvec(d, len(w)), tuple(tuple(wk * g for g in grad) for wk in w), d)


def omni_scale(f: Poly, X: OmniSec) -> OmniSec:
    return X.scale(f)


def falling(X: OmniSec, t: TauSec) -> TauSec:
    """Falling operator: b of the bracket of X with the flat lift of t."""
    return b_proj(dorfman(X, gamma0(t)))


def falling_parts(X: OmniSec) -> tuple:
    """(x, X_E, X_M) with falling(X)(y+v) = [x,y] + X_E(v) + X_M y."""
    n = X.nvars
    xm = msub(X.jet.eta, jacobian(X.jet.u, n))
    return X.der.x, X.der, xm


def falling_from_parts(x, XE: DerSec, XM, t: TauSec) -> TauSec:
    n = t.nvars
    return TauSec(field_bracket(x, t.x), vadd(XE.act(t.u), matvec(XM, t.x, n)), n)


def tau_bracket_commutator(op1, op2, t: TauSec) -> TauSec:
    return op1(op2(t)) - op2(op1(t))


# ---------------------------------------------------------------------------
# E-valued forms on derivations, evaluated on the frame d/dt_a, E_pq


def der_frame(d: int, r: int) -> list[DerSec]:
    """d/dt_1..d/dt_d, then the matrix units E_pq row-major."""
    out = []
    for a in range(d):
        x = [Poly.zero(d)] * d
        x[a] = Poly.const(d, 1)
        out.append(DerSec(tuple(x), zmat(d, r, r), d))
    for p in range(r):
        for q in range(r):
            m = [[0] * r for _ in range(r)]
            m[p][q] = 1
            out.append(DerSec(zvec(d, d), pmat(d, m), d))
    return out


def _frame_bracket(d: int, r: int, i: int, j: int) -> dict:
    """[f_i, f_j] in frame coordinates; only matrix units fail to commute."""
    if i < d or j < d:
        return {}
    p, q = divmod(i - d, r)
    s, t = divmod(j - d, r)
    out = {}
    if q == s:
        k = d + p * r + t
        out[k] = out.get(k, 0) + 1
    if t == p:
        k = d + s * r + q
        out[k] = out.get(k, 0) - 1
    return {k: v for k, v in out.items() if v}


def _frame_act(d: int, r: int, i: int, w) -> tuple:
    if i < d:
        return tuple(f.diff(i) for f in w)
    p, q = divmod(i - d, r)
    z = Poly.zero(d)
    return tuple(w[q] if k == p else z for k in range(r))


def _sorted_key(idx):
    """(sign, sorted tuple) for an index tuple, sign 0 on repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


@dataclass(frozen=True)
class FrameForm:
    """An E-valued k-form on derivations, stored on increasing frame tuples."""

    k: int
    d: int
    r: int
    values: dict

    def value(self, idx) -> tuple:
        sign, key = _sorted_key(idx)
        if not sign:
            return zvec(self.d, self.r)
        v = self.values.get(key)
        if v is None:
            return zvec(self.d, self.r)
        return v if sign == 1 else vscale(-1, v)

    def is_zero(self) -> bool:
        return all(is_zero_vec(v) for v in self.values.values())

    def __eq__(self, other):
        if not isinstance(other, FrameForm) or (self.k, self.d, self.r) != (other.k, other.d, other.r):
            return NotImplemented
        keys = set(self.values) | set(other.values)
        return all(self.value(k) == other.value(k) for k in keys)

    def __hash__(self):
        return hash((self.k, self.d, self.r))

    def __sub__(self, other):
        keys = set(self.values) | set(other.values)
        return FrameForm(self.k, self.d, self.r, {k: vsub(self.value(k), other.value(k)) for k in keys})


FORM_MAX_DEGREE = 2


def form_from_function(v, d: int, r: int) -> FrameForm:
    return FrameForm(0, d, r, {(): tuple(v)})


def form_from_jet(m: JetSec) -> FrameForm:
    """A jet as the 1-form der |-> <m, der>."""
    d, r = m.shape
    frame = der_frame(d, r)
    return FrameForm(1, d, r, {(i,): jet_pairing(m, f) for i, f in enumerate(frame)})


def jet_d_form(w: FrameForm) -> FrameForm:
    """Exterior differential of E-valued forms on derivations, degree 0..2."""
    k, d, r = w.k, w.d, w.r
    if not 0 <= k <= FORM_MAX_DEGREE:
        raise ValueError(f"form degree {k} outside 0..{FORM_MAX_DEGREE}")
    n = d + r * r
    out = {}
    for idx in combinations(range(n), k + 1):
        acc = zvec(d, r)
        for i in range(k + 1):
            rest = idx[:i] + idx[i + 1:]
            term = _frame_act(d, r, idx[i], w.value(rest))
            acc = vadd(acc, term) if i % 2 == 0 else vsub(acc, term)
        for i, j in combinations(range(k + 1), 2):
            br = _frame_bracket(d, r, idx[i], idx[j])
            if not br:
                continue
            rest = idx[:i] + idx[i + 1:j] + idx[j + 1:]
            sgn = -1 if (i + j) % 2 else 1
            for l, coef in br.items():
                acc = vadd(acc, vscale(sgn * coef, w.value((l,) + rest)))
        if not is_zero_vec(acc):
            out[idx] = acc
    return FrameForm(k + 1, d, r, out)
