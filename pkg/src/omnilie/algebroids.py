"""Projective Lie algebroids A inside TM + E over one chart.

Every presentation exposes a free polynomial frame ``a_1..a_n`` of A, the
structure functions ``[a_i, a_j] = sum_k S[i,j][k] a_k``, a polynomial
splitting TM + E = A + C and a frame of the annihilator A^0 inside
Hom(TM + E, E). Four presentations are supported:

* ``full``: A = TM + E with connection matrices, curvature and fibre bracket.
* ``anchor``: the graph of an anchor rho: F -> TM over a constant subspace F of
  Q^r, with structure functions on F (a Lie algebroid when F = Q^r).
* ``form``: the graph of lambda: TM -> E.
* ``line``: the span of one section whose designated component is 1.
"""

from __future__ import annotations

import random
from itertools import combinations

from .exact import DimensionError, Poly, Subspace, monomials, rank, solve
from .report import Report
from .sections import (HomSec, TauSec, apply_field, field_bracket, is_zero_vec, pmat, pvec,
                       vadd, vscale, vsub, zmat, zvec)

RANK_SAMPLE_POINTS = 5


def _unit_vec(d: int, n: int, i: int) -> tuple:
    return tuple(Poly.const(d, 1 if k == i else 0) for k in range(n))


class ProjAlgebroid:
    kind = "abstract"

    def __init__(self, d: int, r: int, frame, structure: dict):
        self.d, self.r = d, r
        self.frame = tuple(frame)
        n = len(self.frame)
        clean = {}
        for (i, j), v in structure.items():
            v = pvec(d, v)
            if len(v) != n:
                raise DimensionError(f"structure function ({i},{j}) has {len(v)} entries, expected {n}")
            if i == j:
                if not is_zero_vec(v):
                    raise ValueError(f"skewness: bracket of frame element {i} with itself is nonzero")
                continue
            key, val = ((i, j), v) if i < j else ((j, i), vscale(-1, v))
            if key in clean and clean[key] != val:
                raise ValueError(f"skewness: conflicting entries for frame pair {key}")
            clean[key] = val
        self.structure = {k: v for k, v in clean.items() if not is_zero_vec(v)}

    # -- frame data ---------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.frame)

    def anchor_of(self, i: int) -> tuple:
        return self.frame[i].x

    def struct(self, i: int, j: int) -> tuple:
        if i == j:
            return zvec(self.d, self.n)
        if i < j:
            return self.structure.get((i, j), zvec(self.d, self.n))
        return vscale(-1, self.structure.get((j, i), zvec(self.d, self.n)))

    def section(self, coords) -> TauSec:
        t = TauSec.zero(self.d, self.r)
        for f, a in zip(coords, self.frame):
            if f.terms:
                t = t + a.scale(f)
        return t

    def anchor(self, coords) -> tuple:
        x = zvec(self.d, self.d)
        for f, a in zip(coords, self.frame):
            if f.terms:
                x = vadd(x, vscale(f, a.x))
        return x

    def unit(self, i: int) -> tuple:
        return _unit_vec(self.d, self.n, i)

    def bracket(self, f, g) -> tuple:
        """Bracket of sum f_i a_i and sum g_j a_j, in frame coordinates."""
        n, d = self.n, self.d
        out = list(zvec(d, n))
        for i in range(n):
            if not f[i].terms:
                continue
            rho_i = self.anchor_of(i)
            for j in range(n):
                if not g[j].terms:
                    continue
                if i != j:
                    s = self.struct(i, j)
                    fg = f[i] * g[j]
                    for k in range(n):
                        if s[k].terms:
                            out[k] = out[k] + fg * s[k]
                out[j] = out[j] + f[i] * apply_field(rho_i, g[j])
        for j in range(n):
            if not g[j].terms:
                continue
            rho_j = self.anchor_of(j)
            for i in range(n):
                if f[i].terms:
                    out[i] = out[i] - g[j] * apply_field(rho_j, f[i])
        return tuple(out)

    def bracket_sections(self, a: TauSec, b: TauSec) -> TauSec:
        fa, fb = self.coords(a), self.coords(b)
        if fa is None or fb is None:
            raise ValueError("bracket arguments are not sections of A")
        return self.section(self.bracket(fa, fb))

    # -- splitting ------------------------------------------------------------

    def decompose(self, t: TauSec) -> tuple:
        """(A-coordinates, C-coordinates) of t."""
        raise NotImplementedError

    def complement_frame(self) -> list:
        raise NotImplementedError

    def a0_frame(self) -> list:
        raise NotImplementedError

    def coords(self, t: TauSec):
        fa, fc = self.decompose(t)
        return fa if is_zero_vec(fc) else None

    def contains(self, t: TauSec) -> bool:
        return self.coords(t) is not None

    def in_a0(self, h: HomSec) -> bool:
        return all(is_zero_vec(h(a)) for a in self.frame)

    def p_A(self, t: TauSec) -> tuple:
        return self.decompose(t)[0]

    # -- construction helpers -----------------------------------------------

    def with_structure(self, structure: dict) -> ProjAlgebroid:
        raise NotImplementedError

    def shape_only(self) -> ProjAlgebroid:
        """Same subbundle with the bracket forgotten (zero structure functions)."""
        return self.with_structure({})

    def same_subbundle(self, other: ProjAlgebroid) -> bool:
        return (self.d, self.r) == (other.d, other.r) and \
            all(other.contains(a) for a in self.frame) and all(self.contains(a) for a in other.frame)

    def key(self):
        return (self.kind, self.d, self.r, self.frame,
                tuple(sorted(self.structure.items())))

    def __eq__(self, other):
        if not isinstance(other, ProjAlgebroid):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash((self.kind, self.d, self.r, self.frame))

    def __repr__(self):
        return f"{type(self).__name__}(d={self.d}, r={self.r}, n={self.n})"

    def frame_matrix_at(self, point) -> list[list]:
        rows = []
        for a in self.frame:
            rows.append([p.eval(point) for p in a.x] + [p.eval(point) for p in a.u])
        return rows


# ---------------------------------------------------------------------------
# presentations


class FullAlgebroid(ProjAlgebroid):
    """A = TM + E: frame d/dt_a then e_k.

    ``gamma[a]`` is the r x r matrix of [d/dt_a, e_j] = sum_k gamma[a][k][j] e_k,
    ``curvature[(a,b)]`` the E-part of [d/dt_a, d/dt_b], ``fibre[(i,j)]`` the
    vector [e_i, e_j].
    """

    kind = "full"

    def __init__(self, d: int, r: int, gamma=None, curvature=None, fibre=None, structure=None):
        frame = [TauSec(_unit_vec(d, d, a), zvec(d, r), d) for a in range(d)]
        frame += [TauSec(zvec(d, d), _unit_vec(d, r, k), d) for k in range(r)]
        if structure is None:
            structure = {}
            z = zvec(d, d)
            for a, b in combinations(range(d), 2):
                R = pvec(d, (curvature or {}).get((a, b), [0] * r))
                structure[(a, b)] = z + R
            for a in range(d):
                G = pmat(d, gamma[a]) if gamma else zmat(d, r, r)
                for j in range(r):
                    structure[(a, d + j)] = z + tuple(G[k][j] for k in range(r))
            for (i, j), v in (fibre or {}).items():
                structure[(d + i, d + j)] = z + pvec(d, v)
        super().__init__(d, r, frame, structure)

    @property
    def gamma(self) -> list:
        d, r = self.d, self.r
        return [tuple(tuple(self.struct(a, d + j)[d + k] for j in range(r)) for k in range(r))
                for a in range(d)]

    @property
    def curvature(self) -> dict:
        return {(a, b): self.struct(a, b)[self.d:] for a, b in combinations(range(self.d), 2)}

    @property
    def fibre(self) -> dict:
        d = self.d
        return {(i, j): self.struct(d + i, d + j)[d:] for i, j in combinations(range(self.r), 2)}

    def decompose(self, t):
        return t.x + t.u, ()

    def complement_frame(self):
        return []

    def a0_frame(self):
        return []

    def with_structure(self, structure):
        return FullAlgebroid(self.d, self.r, structure=structure)


class AnchorAlgebroid(ProjAlgebroid):
    """Frame a_i = rho_i + f_i with f_i the reduced basis of a constant F."""

    kind = "anchor"

    def __init__(self, d: int, r: int, rho, structure: dict | None = None, subspace=None):
        F = Subspace(r, subspace) if subspace is not None else Subspace.full(r)
        basis = [list(v) for v in F.basis]
        m = len(basis)
        rho = pmat(d, rho)  # d x m, column i is the anchor of a_i
        if len(rho) != d or any(len(row) != m for row in rho):
            raise DimensionError(f"anchor must be a {d}x{m} matrix")
        self.F = F
        self.rho_matrix = rho
        frame = [TauSec(tuple(rho[a][i] for a in range(d)), pvec(d, basis[i]), d) for i in range(m)]
        # complement: standard basis vectors at the non-pivot positions
        comp = [k for k in range(r) if k not in F.pivots]
        self.comp_vectors = [[1 if q == k else 0 for q in range(r)] for k in comp]
        cols = basis + self.comp_vectors
        # B has columns f_1..f_m, f'_1..; store its inverse
        B = [[cols[c][k] for c in range(r)] for k in range(r)]
        self.B = B
        self.Binv = [solve(B, [1 if k == j else 0 for k in range(r)], r) for j in range(r)]
        self.Binv = [[self.Binv[j][i] for j in range(r)] for i in range(r)]
        super().__init__(d, r, frame, structure or {})

    @property
    def m(self) -> int:
        return self.F.dim

    def _split_u(self, u):
        r = self.r
        coeffs = []
        for i in range(r):
            acc = Poly.zero(self.d)
            for k in range(r):
                c = self.Binv[i][k]
                if c and u[k].terms:
                    acc = acc + u[k] * c
            coeffs.append(acc)
        return tuple(coeffs[:self.m]), tuple(coeffs[self.m:])

    def decompose(self, t):
        alpha, beta = self._split_u(t.u)
        rest = vsub(t.x, self.anchor(alpha))
        return alpha, rest + beta

    def complement_frame(self):
        d, r = self.d, self.r
        out = [TauSec(_unit_vec(d, d, a), zvec(d, r), d) for a in range(d)]
        out += [TauSec(zvec(d, d), pvec(d, v), d) for v in self.comp_vectors]
        return out

    def a0_frame(self):
        d, r, m = self.d, self.r, self.m
        out = []

        def build(y, Z):
            # Phi B = [-y rho_1 .. -y rho_m | Z]
            cols = []
            for i in range(m):
                rho_i = self.frame[i].x
                cols.append(tuple(-sum((y[k][a] * rho_i[a] for a in range(d)), Poly.zero(d))
                                  for k in range(r)))
            for j in range(r - m):
                cols.append(tuple(Z[k][j] for k in range(r)))
            phi = tuple(tuple(sum((cols[c][k] * self.Binv[c][q] for c in range(r)), Poly.zero(d))
                              for q in range(r)) for k in range(r))
            return HomSec(phi, y, d)

        for k in range(r):
            for a in range(d):
                y = [[0] * d for _ in range(r)]
                y[k][a] = 1
                out.append(build(pmat(d, y), zmat(d, r, r - m)))
        for k in range(r):
            for j in range(r - m):
                Z = [[0] * (r - m) for _ in range(r)]
                Z[k][j] = 1
                out.append(build(zmat(d, r, d), pmat(d, Z)))
        return out

    def with_structure(self, structure):
        return AnchorAlgebroid(self.d, self.r, self.rho_matrix, structure,
                               [list(v) for v in self.F.basis] if self.F.dim < self.r else None)

    def key(self):
        return super().key() + (self.F,)


class FormAlgebroid(ProjAlgebroid):
    """Graph of lambda: TM -> E, frame d/dt_a + lambda_a."""

    kind = "form"

    def __init__(self, d: int, r: int, lam, structure: dict | None = None):
        lam = pmat(d, lam)
        if len(lam) != r or any(len(row) != d for row in lam):
            raise DimensionError(f"lambda must be an {r}x{d} matrix")
        self.lam = lam
        frame = [TauSec(_unit_vec(d, d, a), tuple(lam[k][a] for k in range(r)), d) for a in range(d)]
        super().__init__(d, r, frame, structure or {})

    def lam_column(self, a: int) -> tuple:
        return tuple(row[a] for row in self.lam)

    def decompose(self, t):
        rest = t.u
        for a in range(self.d):
            if t.x[a].terms:
                rest = vsub(rest, vscale(t.x[a], self.lam_column(a)))
        return t.x, rest

    def complement_frame(self):
        d, r = self.d, self.r
        return [TauSec(zvec(d, d), _unit_vec(d, r, k), d) for k in range(r)]

    def a0_frame(self):
        d, r = self.d, self.r
        out = []
        for p in range(r):
            for q in range(r):
                phi = [[0] * r for _ in range(r)]
                phi[p][q] = 1
                phi = pmat(d, phi)
                y = tuple(tuple(-self.lam[q][a] if k == p else Poly.zero(d) for a in range(d))
                          for k in range(r))
                out.append(HomSec(phi, y, d))
        return out

    def with_structure(self, structure):
        return FormAlgebroid(self.d, self.r, self.lam, structure)


class LineAlgebroid(ProjAlgebroid):
    """Span of a single section whose component ``designated`` is 1.

    Components are indexed over (x, u) concatenated, x first.
    """

    kind = "line"

    def __init__(self, d: int, r: int, generator: TauSec, designated: int):
        comps = generator.x + generator.u
        if not 0 <= designated < d + r:
            raise DimensionError(f"designated component {designated} out of range")
        if comps[designated] != Poly.const(d, 1):
            raise ValueError("designated component of the generator must be identically 1")
        self.designated = designated
        super().__init__(d, r, [generator], {})

    def decompose(self, t):
        comps = t.x + t.u
        f = comps[self.designated]
        gen = self.frame[0].x + self.frame[0].u
        rest = tuple(c - f * g for k, (c, g) in enumerate(zip(comps, gen)) if k != self.designated)
        return (f,), rest

    def complement_frame(self):
        d, r = self.d, self.r
        out = []
        for k in range(d + r):
            if k == self.designated:
                continue
            v = _unit_vec(d, d + r, k)
            out.append(TauSec(v[:d], v[d:], d))
        return out

    def a0_frame(self):
        d, r = self.d, self.r
        gen = self.frame[0].x + self.frame[0].u
        k0 = self.designated
        out = []
        for c in range(d + r):
            if c == k0:
                continue
            for p in range(r):
                H = [[Poly.zero(d)] * (d + r) for _ in range(r)]
                H[p][c] = Poly.const(d, 1)
                H[p][k0] = -gen[c]
                y = tuple(tuple(H[k][a] for a in range(d)) for k in range(r))
                phi = tuple(tuple(H[k][d + q] for q in range(r)) for k in range(r))
                out.append(HomSec(phi, y, d))
        return out

    def with_structure(self, structure):
        if any(not is_zero_vec(v) for v in structure.values()):
            raise ValueError("a rank-one frame has no structure functions")
        return LineAlgebroid(self.d, self.r, self.frame[0], self.designated)


# ---------------------------------------------------------------------------
# checks


def jacobiator(A: ProjAlgebroid, f, g, h) -> tuple:
    b = A.bracket
    return vadd(vadd(b(b(f, g), h), b(b(g, h), f)), b(b(h, f), g))


_FULL_LABELS = {3: "C3.cyclic_curvature", 2: "C2.curvature_identity",
                1: "C1.derivation", 0: "C0.fibre_jacobi"}


def check_projective_algebroid(A: ProjAlgebroid, seed: int = 0, report: Report | None = None) -> Report:
    report = report or Report("check-projective-algebroid", seed=seed)
    d, n = A.d, A.n
    # constant rank: origin plus seeded sample points
    rng = random.Random(seed)
    points = [[0] * d] + [[rng.randint(-5, 5) for _ in range(d)] for _ in range(RANK_SAMPLE_POINTS)]
    bad = next((p for p in points if rank(A.frame_matrix_at(p), d + A.r) != n), None)
    report.add("constant_rank", bad is None, bad, anchor="algebroid.rank")

    # anchor is a morphism of brackets on the frame
    bad = None
    for i, j in combinations(range(n), 2):
        lhs = A.anchor(A.struct(i, j))
        rhs = field_bracket(A.anchor_of(i), A.anchor_of(j))
        if lhs != rhs:
            bad = {"pair": (i, j), "residual": vsub(lhs, rhs)}
            break
    report.add("anchor_morphism", bad is None, bad, anchor="algebroid.anchor")

    # Jacobi on frame triples, grouped by type for the full presentation
    groups: dict = {}
    for i, j, k in combinations(range(n), 3):
        J = jacobiator(A, A.unit(i), A.unit(j), A.unit(k))
        if A.kind == "full":
            label = _FULL_LABELS[sum(1 for t in (i, j, k) if t < d)]
        else:
            label = "frame_jacobi"
        groups.setdefault(label, None)
        if not is_zero_vec(J) and groups[label] is None:
            groups[label] = {"triple": (i, j, k), "jacobiator": J}
    if A.kind == "full":
        for label in sorted(_FULL_LABELS.values()):
            groups.setdefault(label, None)
    else:
        groups.setdefault("frame_jacobi", None)
    for label in sorted(groups):
        report.add(label, groups[label] is None, groups[label], anchor=f"algebroid.{label}")

    # Jacobi with polynomial multipliers in every slot
    bad = None
    triples = list(combinations(range(n), 3)) or [(0, 0, 0)] * (1 if n else 0)
    for i, j, k in triples[:6]:
        f, g, h = (Poly(d, {e: rng.randint(-3, 3) for e in monomials(d, 1)}) for _ in range(3))
        J = jacobiator(A, vscale(f, A.unit(i)), vscale(g, A.unit(j)), vscale(h, A.unit(k)))
        if not is_zero_vec(J):
            bad = {"triple": (i, j, k), "jacobiator": J}
            break
    report.add("jacobi_with_multipliers", bad is None, bad, anchor="algebroid.jacobi_functions")
    return report
