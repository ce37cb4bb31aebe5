"""The omni-Lie algebra gl(V) + V over V = Q^r.

Elements are pairs ``(A, u)``; the flat coordinate vector is ``A`` row-major
followed by ``u`` (length r^2 + r). That ordering is part of the model file
format.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exact import DimensionError, Subspace, _norm, kernel, solve
from .lie import (LieStruct, Rep, ce_differential, derivations, require_jacobi,
                  rep_violation)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class OmniElt:
    endo: tuple
    vec: tuple

    def __init__(self, endo, vec):
        r = len(vec)
        if len(endo) != r or any(len(row) != r for row in endo):
            raise DimensionError(f"endomorphism must be {r}x{r}")
        object.__setattr__(self, "endo", tuple(tuple(_norm(Fraction(x)) for x in row) for row in endo))
        object.__setattr__(self, "vec", tuple(_norm(Fraction(x)) for x in vec))

    @property
    def r(self) -> int:
        return len(self.vec)

    def flatten(self) -> list:
        return [x for row in self.endo for x in row] + list(self.vec)

    @classmethod
    def unflatten(cls, v, r: int) -> OmniElt:
        if len(v) != r * r + r:
            raise DimensionError(f"expected {r * r + r} coordinates, got {len(v)}")
        return cls([v[i * r:(i + 1) * r] for i in range(r)], v[r * r:])

    @classmethod
    def zero(cls, r: int) -> OmniElt:
        return cls([[0] * r for _ in range(r)], [0] * r)

    def __add__(self, other):
        return OmniElt.unflatten([x + y for x, y in zip(self.flatten(), other.flatten())], self.r)

    def __sub__(self, other):
        return OmniElt.unflatten([x - y for x, y in zip(self.flatten(), other.flatten())], self.r)

    def scale(self, s) -> OmniElt:
        return OmniElt.unflatten([s * x for x in self.flatten()], self.r)


def ambient(r: int) -> int:
    return r * r + r


def _mm(a, b):
    r = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(r)) for j in range(r)] for i in range(r)]


def _mv(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def _check_pair(x: OmniElt, y: OmniElt):
    if x.r != y.r:
        raise DimensionError(f"rank mismatch: {x.r} vs {y.r}")


def omni_bracket(x: OmniElt, y: OmniElt) -> OmniElt:
    """{(A,u),(B,v)} = ([A,B], Av)."""
    _check_pair(x, y)
    ab, ba = _mm(x.endo, y.endo), _mm(y.endo, x.endo)
    return OmniElt([[p - q for p, q in zip(r1, r2)] for r1, r2 in zip(ab, ba)], _mv(x.endo, y.vec))


def omni_pairing(x: OmniElt, y: OmniElt) -> tuple:
    """<<(A,u),(B,v)>> = (Av + Bu)/2, a vector in V."""
    _check_pair(x, y)
    return tuple(_norm(HALF * (p + q)) for p, q in zip(_mv(x.endo, y.vec), _mv(y.endo, x.vec)))


def jet_d(u) -> OmniElt:
    """The image of u under the jet differential, (0, u)."""
    r = len(u)
    return OmniElt([[0] * r for _ in range(r)], u)


def anchor_b(x: OmniElt) -> tuple:
    return x.vec


def falling_point(x: OmniElt) -> tuple:
    """At a point the falling operator of (A,u) is A acting on V."""
    return x.endo


def basis_elements(s: Subspace, r: int) -> list[OmniElt]:
    return [OmniElt.unflatten(list(v), r) for v in s.basis]


def _rank_of(s: Subspace) -> int:
    n = s.ambient_dim
    r = int(round((-1 + (1 + 4 * n) ** 0.5) / 2))
    if r * r + r != n:
        raise DimensionError(f"Q^{n} is not gl(V)+V for any V")
    return r


def _pairing_matrix(y: OmniElt) -> list[list]:
    """Matrix of X -> <<X, y>> on flat coordinates (r rows)."""
    r = y.r
    n = ambient(r)
    rows = []
    for k in range(r):
        row = [0] * n
        # (A v)_k / 2 with A the unknown endo
        for j in range(r):
            if y.vec[j]:
                row[k * r + j] += HALF * y.vec[j]
        # (B u)_k / 2 with u the unknown vec
        for j in range(r):
            if y.endo[k][j]:
                row[r * r + j] += HALF * y.endo[k][j]
        rows.append(row)
    return rows


def orthogonal_complement(s: Subspace) -> Subspace:
    r = _rank_of(s)
    eqs = []
    for y in basis_elements(s, r):
        eqs.extend(_pairing_matrix(y))
    eqs = [row for row in eqs if any(row)]
    n = ambient(r)
    if not eqs:
        return Subspace.full(n)
    return Subspace(n, kernel(eqs, n))


@dataclass(frozen=True)
class PointDirac:
    r: int
    space: Subspace

    def __post_init__(self):
        if self.space.ambient_dim != ambient(self.r):
            raise DimensionError("subspace does not live in gl(V)+V")

    @property
    def dim(self) -> int:
        return self.space.dim

    def elements(self) -> list[OmniElt]:
        return basis_elements(self.space, self.r)

    def projection(self) -> Subspace:
        return Subspace(self.r, [e.vec for e in self.elements()])


@dataclass(frozen=True)
class DiracReport:
    isotropic: bool
    maximal: bool
    closed: bool
    dim_formula: bool
    w: int
    dim: int
    witness: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.isotropic and self.maximal and self.closed and self.dim_formula


def is_dirac(space: Subspace) -> DiracReport:
    r = _rank_of(space)
    elts = basis_elements(space, r)
    witness = None
    isotropic = True
    for i, j in combinations(range(len(elts)), 2):
        if any(omni_pairing(elts[i], elts[j])):
            isotropic = False
            witness = witness or ("pairing", i, j)
    for i, x in enumerate(elts):
        if any(omni_pairing(x, x)):
            isotropic = False
            witness = witness or ("pairing", i, i)
    maximal = orthogonal_complement(space) == space
    closed = True
    for i, x in enumerate(elts):
        for j, y in enumerate(elts):
            if not space.contains(omni_bracket(x, y).flatten()):
                closed = False
                witness = witness or ("bracket", i, j)
                break
        if not closed:
            break
    w = Subspace(r, [e.vec for e in elts]).dim
    dim_formula = space.dim == (1 - r) * w + r * r
    return DiracReport(isotropic, maximal, closed, dim_formula, w, space.dim, witness)


def lift_point(W: Subspace, c: LieStruct) -> PointDirac:
    """L = {(D,u) : u in W, D w = [u,w] for all w in W}.

    ``c`` is the bracket in the canonical basis of ``W``.
    """
    r = W.ambient_dim
    wdim = W.dim
    if c.n != wdim:
        raise DimensionError(f"bracket has dimension {c.n}, subspace has {wdim}")
    require_jacobi(c)
    n = ambient(r)
    basis = [list(v) for v in W.basis]
    # unknowns: D (r*r, row-major) then coefficients a (wdim); u = sum a_i w_i
    nv = r * r + wdim
    eqs = []
    for j, wj in enumerate(basis):
        for k in range(r):
            row = [0] * nv
            for q in range(r):
                if wj[q]:
                    row[k * r + q] += wj[q]
            for i in range(wdim):
                # [w_i, w_j]_k = sum_l c_ij^l w_l[k]
                val = sum(c.c[i][j][l] * basis[l][k] for l in range(wdim))
                if val:
                    row[r * r + i] -= val
            if any(row):
                eqs.append(row)
    sols = kernel(eqs, nv) if eqs else [[1 if i == j else 0 for j in range(nv)] for i in range(nv)]
    vecs = []
    for s in sols:
        u = [sum(s[r * r + i] * basis[i][k] for i in range(wdim)) for k in range(r)]
        vecs.append(list(s[:r * r]) + u)
    return PointDirac(r, Subspace(n, vecs))


def preimage(L: PointDirac, v) -> OmniElt | None:
    """Some element of L whose V-component is v."""
    elts = L.elements()
    r = L.r
    if not elts:
        return None if any(v) else OmniElt.zero(r)
    cols = [e.vec for e in elts]
    a = [[cols[j][k] for j in range(len(elts))] for k in range(r)]
    sol = solve(a, list(v), len(elts))
    if sol is None:
        return None
    return OmniElt.unflatten([sum(s * x for s, x in zip(sol, col)) for col in zip(*[e.flatten() for e in elts])], r)


def reduce_point(L: PointDirac, preimages=None) -> tuple[Subspace, LieStruct]:
    """Projection W of L to V with the quotient bracket in W's canonical basis.

    ``preimages`` optionally fixes the chosen lifts of the basis of W.
    """
    rep = is_dirac(L.space)
    if not rep.ok:
        raise ValueError(f"not a Dirac structure: {rep}")
    W = L.projection()
    wb = [list(v) for v in W.basis]
    lifts = preimages if preimages is not None else [preimage(L, w) for w in wb]
    br = {}
    for i, j in combinations(range(len(wb)), 2):
        vec = omni_bracket(lifts[i], lifts[j]).vec
        coords = W.coordinates(vec)
        if coords is None:
            raise ValueError("bracket leaves the projection; not closed")
        br[(i, j)] = coords
    return W, LieStruct.from_brackets(len(wb), br)


def normalizer_point(L: PointDirac) -> Subspace:
    """{X : {X, l} in L for every l in L}."""
    r = L.r
    n = ambient(r)
    ann = L.space.annihilator()
    elts = L.elements()
    eqs = []
    units = [OmniElt.unflatten([1 if i == k else 0 for i in range(n)], r) for k in range(n)]
    for y in elts:
        images = [omni_bracket(u, y).flatten() for u in units]  # linear in X
        for f in ann:
            row = [sum(fi * img[i] for i, fi in enumerate(f) if fi) for img in images]
            if any(row):
                eqs.append(row)
    if not eqs:
        return Subspace.full(n)
    return Subspace(n, kernel(eqs, n))


def annihilator_dim(W: Subspace) -> int:
    """dim of {h in gl(V) : h(W) = 0}."""
    return W.ambient_dim * (W.ambient_dim - W.dim)


def normalizer_exact_count(L: PointDirac) -> tuple[int, int]:
    """(dim N_L, dim W^0 + r + dim Der(W))."""
    W, c = reduce_point(L)
    return normalizer_point(L).dim, annihilator_dim(W) + L.r + derivations(c).der.dim


# ---------------------------------------------------------------------------
# the Lie algebra L and its representation on V


def dirac_lie_algebra(L: PointDirac) -> tuple[LieStruct, Rep]:
    elts = L.elements()
    m = len(elts)
    br = {}
    for i, j in combinations(range(m), 2):
        coords = L.space.coordinates(omni_bracket(elts[i], elts[j]).flatten())
        if coords is None:
            raise ValueError("L is not closed under the bracket")
        br[(i, j)] = coords
    return LieStruct.from_brackets(m, br), Rep(L.r, [e.endo for e in elts])


@dataclass(frozen=True)
class OmegaReport:
    is_cocycle: bool
    in_normalizer: bool
    is_coboundary: bool
    witness: tuple | None
    identity_holds: bool


def omega_cochain(x: OmniElt, L: PointDirac) -> list:
    """Flat 1-cochain l_i -> <<X, l_i>>."""
    return [c for e in L.elements() for c in omni_pairing(x, e)]


def omega_cochain_check(x: OmniElt, L: PointDirac) -> OmegaReport:
    c, rep = dirac_lie_algebra(L)
    if rep_violation(rep, c) is not None:
        raise ValueError("endomorphism parts do not represent L")
    r = L.r
    m = c.n
    omega = omega_cochain(x, L)
    d1 = ce_differential(1, rep, c)
    dw = [sum(a * b for a, b in zip(row, omega)) for row in d1]
    is_cocycle = not any(dw)
    # d omega_X (l_i, l_j) = -<<{X, l_i}, l_j>>
    elts = L.elements()
    identity = True
    for t, (i, j) in enumerate(combinations(range(m), 2)):
        rhs = omni_pairing(omni_bracket(x, elts[i]), elts[j])
        if any(dw[t * r + k] + rhs[k] for k in range(r)):
            identity = False
    d0 = ce_differential(0, rep, c)
    sol = solve(d0, omega, r) if d0 else (None if any(omega) else [])
    in_norm = normalizer_point(L).contains(x.flatten())
    return OmegaReport(is_cocycle, in_norm, sol is not None,
                       tuple(_norm(s) for s in sol) if sol is not None else None, identity)
