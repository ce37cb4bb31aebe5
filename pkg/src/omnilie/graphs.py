"""Dirac structures given as graphs.

* The graph of a skew map from derivations to jets, fixed by lambda: TM -> E
  and an E-valued two-form beta on TM.
* The graph of the jet-to-derivation map induced by a Lie algebroid on E.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .algebroids import AnchorAlgebroid, FormAlgebroid
from .dirac import DiracPres, dirac_closure_check
from .exact import Poly
from .report import Report
from .sections import (DerSec, FrameForm, HomSec, JetSec, OmniSec, apply_field, apply_field_vec,
                       der_bracket, der_frame, df_tensor, jet_d_form, jet_pairing,
                       jet_prolong_rank, lie_derivative, pmat, pvec, vscale, zmat, zvec)


@dataclass(frozen=True)
class LambdaHat:
    """Skew map derivations -> jets.

    On d/dt_a it returns (lambda_a, beta_a) with beta_a[:, b] = beta(a, b); on a
    matrix Phi it returns (0, -Phi lambda).
    """

    d: int
    r: int
    lam: tuple
    beta: dict

    @classmethod
    def make(cls, d: int, r: int, lam, beta: dict | None = None) -> LambdaHat:
        lam = pmat(d, lam)
        clean = {}
        for (a, b), v in (beta or {}).items():
            v = pvec(d, v)
            if a == b:
                if any(p.terms for p in v):
                    raise ValueError("skewness: beta(a, a) must vanish")
                continue
            key, val = ((a, b), v) if a < b else ((b, a), vscale(-1, v))
            if key in clean and clean[key] != val:
                raise ValueError(f"skewness: conflicting beta entries for {key}")
            clean[key] = val
        return cls(d, r, lam, {k: v for k, v in clean.items() if any(p.terms for p in v)})

    @classmethod
    def coboundary(cls, d: int, r: int, lam) -> LambdaHat:
        """beta = -(d lambda), the form for which the graph is a lift."""
        lam = pmat(d, lam)
        beta = {}
        for a, b in combinations(range(d), 2):
            beta[(a, b)] = tuple(-(lam[k][b].diff(a) - lam[k][a].diff(b)) for k in range(r))
        return cls.make(d, r, lam, beta)

    def beta_value(self, a: int, b: int) -> tuple:
        if a == b:
            return zvec(self.d, self.r)
        if a < b:
            return self.beta.get((a, b), zvec(self.d, self.r))
        return vscale(-1, self.beta.get((b, a), zvec(self.d, self.r)))

    def lam_column(self, a: int) -> tuple:
        return tuple(row[a] for row in self.lam)

    def images(self) -> list[JetSec]:
        """Images of the derivation frame d/dt_a, E_pq."""
        d, r = self.d, self.r
        out = []
        for a in range(d):
            eta = tuple(tuple(self.beta_value(a, b)[k] for b in range(d)) for k in range(r))
            out.append(JetSec(self.lam_column(a), eta, d))
        for p in range(r):
            for q in range(r):
                eta = tuple(tuple(-self.lam[q][b] if k == p else Poly.zero(d) for b in range(d))
                            for k in range(r))
                out.append(JetSec(zvec(d, r), eta, d))
        return out

    def two_form(self) -> FrameForm:
        """(D1, D2) -> <image(D1), D2> on the derivation frame."""
        d, r = self.d, self.r
        frame = der_frame(d, r)
        imgs = self.images()
        vals = {}
        for i, j in combinations(range(len(frame)), 2):
            vals[(i, j)] = jet_pairing(imgs[i], frame[j])
        return FrameForm(2, d, r, vals)


def lambda_hat_from_images(d: int, r: int, images) -> LambdaHat:
    """Validate frame images (skew, value-free on matrices) and extract lambda, beta."""
    frame = der_frame(d, r)
    n = len(frame)
    if len(images) != n:
        raise ValueError(f"expected {n} frame images")
    for i in range(n):
        for j in range(i, n):
            s = jet_pairing(images[i], frame[j])
            t = jet_pairing(images[j], frame[i])
            if any((p + q).terms for p, q in zip(s, t)):
                raise ValueError(f"skewness: frame pair ({i},{j}) is not skew")
    for i in range(d, n):
        if any(p.terms for p in images[i].u):
            raise ValueError("matrix part must map to Hom(TM, E): value component nonzero")
    lam = tuple(tuple(images[a].u[k] for a in range(d)) for k in range(r))
    beta = {(a, b): tuple(images[a].eta[k][b] for k in range(r)) for a, b in combinations(range(d), 2)}
    return LambdaHat.make(d, r, lam, beta)


def graph_lambda(lh: LambdaHat, name: str = "") -> DiracPres:
    d, r = lh.d, lh.r
    base = FormAlgebroid(d, r, lh.lam)
    imgs = lh.images()
    frame = der_frame(d, r)
    lift = [OmniSec(frame[a], imgs[a]) for a in range(d)]
    a0 = [HomSec(frame[d + i].Phi, imgs[d + i].eta, d) for i in range(r * r)]
    return DiracPres(base, lift, a0, name=name, origin="graph-lambda")


def lambda_alpha_form(lh: LambdaHat) -> FrameForm:
    """The one-form D -> lambda(symbol of D)."""
    d, r = lh.d, lh.r
    vals = {(a,): lh.lam_column(a) for a in range(d)}
    return FrameForm(1, d, r, vals)


@dataclass(frozen=True)
class LambdaReport:
    closure: bool
    cocycle: bool
    coboundary_form: bool

    @property
    def all_agree(self) -> bool:
        return self.closure == self.cocycle == self.coboundary_form


def graph_lambda_equivalence(lh: LambdaHat, report: Report | None = None) -> LambdaReport:
    L = graph_lambda(lh)
    closure = dirac_closure_check(L).ok
    omega = lh.two_form()
    cocycle = jet_d_form(omega).is_zero()
    target = jet_d_form(lambda_alpha_form(lh))
    neg = FrameForm(2, lh.d, lh.r, {k: vscale(-1, v) for k, v in target.values.items()})
    cob = omega == neg
    res = LambdaReport(closure, cocycle, cob)
    if report is not None:
        report.add("graph_lambda.closure", closure, anchor="graph_lambda.closure")
        report.add("graph_lambda.cocycle", cocycle, anchor="graph_lambda.cocycle")
        report.add("graph_lambda.coboundary_form", cob, anchor="graph_lambda.coboundary")
        report.add("graph_lambda.all_agree", res.all_agree, anchor="graph_lambda.agree")
    return res


# ---------------------------------------------------------------------------
# graph of a Lie algebroid structure on E


@dataclass(frozen=True)
class PiMap:
    """Jets -> derivations induced by anchor rho (d x r) and structure functions c."""

    d: int
    r: int
    rho: tuple
    c: tuple  # c[i][j] = vector of [e_i, e_j]

    @classmethod
    def from_algebroid(cls, A: AnchorAlgebroid) -> PiMap:
        if A.m != A.r:
            raise ValueError("the jet map needs a Lie algebroid on all of E")
        n = A.n
        c = tuple(tuple(A.struct(i, j) for j in range(n)) for i in range(n))
        return cls(A.d, A.r, A.rho_matrix, c)

    def C(self, i: int) -> tuple:
        """(C_i)[k][j] = c_ij^k, the matrix of [e_i, .]."""
        r = self.r
        return tuple(tuple(self.c[i][j][k] for j in range(r)) for k in range(r))

    def anchor_vec(self, u) -> tuple:
        d = self.d
        return tuple(sum((self.rho[a][k] * u[k] for k in range(self.r)), Poly.zero(d)) for a in range(d))

    def __call__(self, m: JetSec) -> DerSec:
        d, r = self.d, self.r
        x = self.anchor_vec(m.u)
        phi = zmat(d, r, r)
        for k in range(r):
            if m.u[k].terms:
                Ck = self.C(k)
                phi = tuple(tuple(p + m.u[k] * q for p, q in zip(r1, r2)) for r1, r2 in zip(phi, Ck))
        # minus eta composed with rho: (eta rho)[j][k] = sum_a eta[j][a] rho[a][k]
        for j in range(r):
            for a in range(d):
                e = m.eta[j][a]
                if not e.terms:
                    continue
                row = tuple(phi[j][k] - e * self.rho[a][k] for k in range(r))
                phi = phi[:j] + (row,) + phi[j + 1:]
        return DerSec(x, phi, d)


def pi_bracket(m: JetSec, n: JetSec, pi: PiMap) -> JetSec:
    pm, pn = pi(m), pi(n)
    w = jet_pairing(n, pm)
    return lie_derivative(pm, n) - lie_derivative(pn, m) - jet_prolong_rank(w, pi.d)


def jet_generators(d: int, r: int) -> list[JetSec]:
    """Jets of e_i, then dt_a (x) e_j."""
    out = []
    one, zero = Poly.const(d, 1), Poly.zero(d)
    for i in range(r):
        out.append(JetSec(tuple(one if k == i else zero for k in range(r)), zmat(d, r, d), d))
    for a in range(d):
        for j in range(r):
            eta = tuple(tuple(one if (k == j and b == a) else zero for b in range(d)) for k in range(r))
            out.append(JetSec(zvec(d, r), eta, d))
    return out


def graph_pi(pi: PiMap, name: str = "") -> DiracPres:
    """Graph of pi, presented over the anchor algebroid's subbundle."""
    d, r = pi.d, pi.r
    gens = jet_generators(d, r)
    base = AnchorAlgebroid(d, r, pi.rho)
    lift = [OmniSec(pi(g), g) for g in gens[:r]]
    a0 = []
    for g in gens[r:]:
        D = pi(g)
        a0.append(HomSec(D.Phi, g.eta, d))
    return DiracPres(base, lift, a0, name=name, origin="graph-pi")


def pi_morphism_check(pi: PiMap) -> dict | None:
    """pi of the pi-bracket equals the commutator, on jet generator pairs."""
    gens = jet_generators(pi.d, pi.r)
    for i, j in combinations(range(len(gens)), 2):
        lhs = pi(pi_bracket(gens[i], gens[j], pi))
        rhs = der_bracket(pi(gens[i]), pi(gens[j]))
        if lhs != rhs:
            return {"pair": (i, j)}
    return None


def algebroid_bracket_vec(pi: PiMap, u, v) -> tuple:
    """[u, v] for sections of E under (rho, c)."""
    d, r = pi.d, pi.r
    out = zvec(d, r)
    for i in range(r):
        if not u[i].terms:
            continue
        for j in range(r):
            if v[j].terms:
                out = tuple(o + u[i] * v[j] * cc for o, cc in zip(out, pi.c[i][j]))
    out = tuple(o + p for o, p in zip(out, apply_field_vec(pi.anchor_vec(u), v)))
    out = tuple(o - p for o, p in zip(out, apply_field_vec(pi.anchor_vec(v), u)))
    return out


def pi_formulas(pi: PiMap, u, v, f: Poly, g: Poly) -> dict:
    """The three bracket formulas on jets of sections and on df (x) v terms."""
    d = pi.d
    uv = algebroid_bracket_vec(pi, u, v)
    ju, jv = jet_prolong_rank(u, d), jet_prolong_rank(v, d)
    one = pi_bracket(ju, jv, pi) == jet_prolong_rank(uv, d)
    rho_u_f = apply_field(pi.anchor_vec(u), f)
    two = pi_bracket(ju, df_tensor(f, v, d), pi) == df_tensor(rho_u_f, v, d) + df_tensor(f, uv, d)
    lhs = pi_bracket(df_tensor(f, u, d), df_tensor(g, v, d), pi)
    rhs = df_tensor(f, v, d).scale(apply_field(pi.anchor_vec(u), g)) - \
        df_tensor(g, u, d).scale(apply_field(pi.anchor_vec(v), f))
    three = lhs == rhs
    return {"jet_jet": one, "jet_form": two, "form_form": three}

