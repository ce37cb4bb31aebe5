"""Finite-dimensional Lie algebras given by structure constants.

Conventions: ``c[i][j][k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.
A linear map ``N`` on the algebra is a matrix with ``N[k][j]`` the
coefficient of ``e_k`` in ``N(e_j)``. Cochains of degree ``k`` with values in
an ``r``-dimensional module are flattened subset-major: the increasing index
tuples in lexicographic order, each followed by its ``r`` components.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exact import DimensionError, Subspace, _norm, kernel, rank, solve, zeros

MAX_CE_DEGREE = 3


class JacobiError(ValueError):
    def __init__(self, triple, message=None):
        self.triple = triple
        super().__init__(message or f"Jacobi identity fails on basis triple {triple}")


class LieStruct:
    """Structure constants of a Lie bracket on Q^n (skewness enforced)."""

    __slots__ = ("n", "c")

    def __init__(self, n: int, c=None):
        self.n = n
        if c is None:
            c = [[[0] * n for _ in range(n)] for _ in range(n)]
        if len(c) != n or any(len(row) != n or any(len(v) != n for v in row) for row in c):
            raise DimensionError(f"structure constants must be {n}x{n}x{n}")
        self.c = tuple(tuple(tuple(_norm(Fraction(x)) for x in v) for v in row) for row in c)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.c[i][j][k] != -self.c[j][i][k]:
                        raise ValueError(f"skewness: c[{i}][{j}][{k}] != -c[{j}][{i}][{k}]")

    @classmethod
    def from_brackets(cls, n: int, brackets: dict) -> LieStruct:
        """Build from ``{(i, j): vector}`` for i < j."""
        c = [[[0] * n for _ in range(n)] for _ in range(n)]
        for (i, j), vec in brackets.items():
            for k, x in enumerate(vec):
                c[i][j][k] = x
                c[j][i][k] = -Fraction(x)
        return cls(n, c)

    @classmethod
    def abelian(cls, n: int) -> LieStruct:
        return cls(n)

    def __eq__(self, other):
        return isinstance(other, LieStruct) and self.n == other.n and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        nz = {(i, j): [self.c[i][j][k] for k in range(self.n)]
              for i in range(self.n) for j in range(i + 1, self.n)
              if any(self.c[i][j])}
        return f"LieStruct(n={self.n}, {nz})"

    def bracket(self, u, v) -> list:
        n = self.n
        out = [0] * n
        for i in range(n):
            if u[i] == 0:
                continue
            for j in range(n):
                if v[j] == 0 or i == j:
                    continue
                f = u[i] * v[j]
                cij = self.c[i][j]
                for k in range(n):
                    if cij[k]:
                        out[k] += f * cij[k]
        return [_norm(x) for x in out]

    def ad(self, u) -> list[list]:
        """Matrix of ad_u."""
        n = self.n
        cols = [self.bracket(u, _unit(n, j)) for j in range(n)]
        return [[cols[j][k] for j in range(n)] for k in range(n)]

    def adjoint_rep(self) -> Rep:
        return Rep(self.n, [self.ad(_unit(self.n, i)) for i in range(self.n)])

    def trivial_rep(self, r: int) -> Rep:
        return Rep(r, [[[0] * r for _ in range(r)] for _ in range(self.n)])

    def scaled(self, s) -> LieStruct:
        return LieStruct(self.n, [[[s * x for x in v] for v in row] for row in self.c])

    def plus(self, other: LieStruct, eps=1) -> LieStruct:
        return LieStruct(self.n, [[[x + eps * y for x, y in zip(v, w)] for v, w in zip(r1, r2)]
                                  for r1, r2 in zip(self.c, other.c)])


def _unit(n, i):
    v = [0] * n
    v[i] = 1
    return v


def _matmul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    return [[_norm(sum(a[i][k] * b[k][j] for k in range(m))) for j in range(p)] for i in range(n)]


def _commutator(a, b):
    ab, ba = _matmul(a, b), _matmul(b, a)
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]


def _apply(mat, v):
    return [_norm(sum(x * y for x, y in zip(row, v))) for row in mat]


def jacobi_violation(c: LieStruct):
    """First basis triple (i<j<k) whose Jacobiator is nonzero, else None."""
    n = c.n
    units = [_unit(n, i) for i in range(n)]
    for i, j, k in combinations(range(n), 3):
        a, b, d = units[i], units[j], units[k]
        s1 = c.bracket(a, c.bracket(b, d))
        s2 = c.bracket(b, c.bracket(d, a))
        s3 = c.bracket(d, c.bracket(a, b))
        if any(x + y + z for x, y, z in zip(s1, s2, s3)):
            return (i, j, k)
    return None


def check_jacobi(c: LieStruct) -> bool:
    return jacobi_violation(c) is None


def require_jacobi(c: LieStruct) -> None:
    bad = jacobi_violation(c)
    if bad is not None:
        raise JacobiError(bad)


@dataclass(frozen=True)
class Rep:
    """Matrices rho_i acting on Q^r, one per basis element of the algebra."""

    r: int
    mats: tuple

    def __init__(self, r: int, mats):
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "mats", tuple(tuple(tuple(_norm(Fraction(x)) for x in row)
                                                     for row in m) for m in mats))
        for m in self.mats:
            if len(m) != r or any(len(row) != r for row in m):
                raise DimensionError(f"representation matrices must be {r}x{r}")

    def of(self, u) -> list[list]:
        out = [[0] * self.r for _ in range(self.r)]
        for i, x in enumerate(u):
            if x:
                m = self.mats[i]
                for p in range(self.r):
                    for q in range(self.r):
                        out[p][q] += x * m[p][q]
        return out


def rep_violation(rep: Rep, c: LieStruct):
    """First pair (i<j) with rho[e_i,e_j] != [rho_i, rho_j], else None."""
    if len(rep.mats) != c.n:
        raise DimensionError("representation has the wrong number of matrices")
    for i, j in combinations(range(c.n), 2):
        lhs = rep.of(list(c.c[i][j]))
        rhs = _commutator(rep.mats[i], rep.mats[j])
        if any(x != y for r1, r2 in zip(lhs, rhs) for x, y in zip(r1, r2)):
            return (i, j)
    return None


def _perm_sign(seq):
    """Sign of the permutation sorting ``seq`` and the sorted tuple, or (0, None)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0, None
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign, tuple(sorted(seq))


def cochain_basis(n: int, k: int) -> list[tuple]:
    return list(combinations(range(n), k))


def ce_differential(k: int, rep: Rep, c: LieStruct) -> list[list]:
    """Matrix of d_k : C^k(g, V) -> C^{k+1}(g, V)."""
    if not 0 <= k <= MAX_CE_DEGREE:
        raise ValueError(f"cochain degree {k} outside 0..{MAX_CE_DEGREE}")
    bad = rep_violation(rep, c)
    if bad is not None:
        raise ValueError(f"not a representation: fails on pair {bad}")
    n, r = c.n, rep.r
    src = cochain_basis(n, k)
    tgt = cochain_basis(n, k + 1)
    src_index = {s: i for i, s in enumerate(src)}
    mat = zeros(len(tgt) * r, len(src) * r)
    for ti, xs in enumerate(tgt):
        row0 = ti * r
        # sum_i (-1)^i rho(x_i) w(x_0..^x_i..x_k)
        for i, xi in enumerate(xs):
            rest = xs[:i] + xs[i + 1:]
            col0 = src_index[rest] * r
            sgn = -1 if i % 2 else 1
            rho = rep.mats[xi]
            for p in range(r):
                for q in range(r):
                    if rho[p][q]:
                        mat[row0 + p][col0 + q] += sgn * rho[p][q]
        # sum_{i<j} (-1)^{i+j} w([x_i,x_j], ...)
        for i in range(len(xs)):
            for j in range(i + 1, len(xs)):
                rest = xs[:i] + xs[i + 1:j] + xs[j + 1:]
                sgn = -1 if (i + j) % 2 else 1
                for l, coef in enumerate(c.c[xs[i]][xs[j]]):
                    if not coef:
                        continue
                    s, key = _perm_sign((l,) + rest)
                    if not s:
                        continue
                    col0 = src_index[key] * r
                    for p in range(r):
                        mat[row0 + p][col0 + p] += sgn * s * coef
    return [[_norm(x) for x in row] for row in mat]


def _cochain_dim(n, k, r):
    return len(cochain_basis(n, k)) * r


def cohomology_dims(rep: Rep, c: LieStruct, top: int = 2) -> tuple:
    """(h^0, ..., h^top) with h^k = nullity(d_k) - rank(d_{k-1})."""
    dims = []
    prev_rank = 0
    for k in range(top + 1):
        cols = _cochain_dim(c.n, k, rep.r)
        dk = ce_differential(k, rep, c)
        rk = rank(dk, cols) if dk else 0
        dims.append(cols - rk - prev_rank)
        prev_rank = rk
    return tuple(dims)


def flatten_matrix(m) -> list:
    return [x for row in m for x in row]


def unflatten_matrix(v, n: int) -> list[list]:
    return [list(v[i * n:(i + 1) * n]) for i in range(n)]


@dataclass(frozen=True)
class Derivations:
    der: Subspace
    inn: Subspace
    ext_dim: int


def derivations(c: LieStruct) -> Derivations:
    """Derivation algebra as a subspace of gl(n) (row-major flattening)."""
    n = c.n
    eqs = []
    # unknown D[k][j] at index k*n + j
    for i, j in combinations(range(n), 2):
        for m in range(n):
            row = [0] * (n * n)
            # D[e_i,e_j] component m: sum_l c_ij^l D[m][l]
            for l in range(n):
                if c.c[i][j][l]:
                    row[m * n + l] += c.c[i][j][l]
            # -[D e_i, e_j]_m = -sum_l D[l][i] c_lj^m
            # -[e_i, D e_j]_m = -sum_l D[l][j] c_il^m
            for l in range(n):
                if c.c[l][j][m]:
                    row[l * n + i] -= c.c[l][j][m]
                if c.c[i][l][m]:
                    row[l * n + j] -= c.c[i][l][m]
            if any(row):
                eqs.append(row)
    der_basis = kernel(eqs, n * n) if eqs else [_unit(n * n, i) for i in range(n * n)]
    der = Subspace(n * n, der_basis)
    inn = Subspace(n * n, [flatten_matrix(c.ad(_unit(n, i))) for i in range(n)])
    return Derivations(der, inn, der.dim - inn.dim)


def is_derivation(mat, c: LieStruct) -> bool:
    return derivations(c).der.contains(flatten_matrix(mat))


# ---------------------------------------------------------------------------
# Nijenhuis operators


def deformed_bracket(N, c: LieStruct) -> LieStruct:
    """[a,b]_N = [Na,b] + [a,Nb] - N[a,b]."""
    n = c.n
    cols = [[N[k][j] for k in range(n)] for j in range(n)]
    br = {}
    for i, j in combinations(range(n), 2):
        ei, ej = _unit(n, i), _unit(n, j)
        v = [x + y - z for x, y, z in zip(c.bracket(cols[i], ej), c.bracket(ei, cols[j]),
                                          _apply(N, c.bracket(ei, ej)))]
        br[(i, j)] = v
    return LieStruct.from_brackets(n, br)


def nijenhuis_torsion(N, c: LieStruct, a, b) -> list:
    cn = deformed_bracket(N, c)
    return [x - y for x, y in zip(_apply(N, cn.bracket(a, b)), c.bracket(_apply(N, a), _apply(N, b)))]


@dataclass(frozen=True)
class NijenhuisReport:
    torsion_zero: bool
    weak_condition: bool
    deformed_jacobi: bool
    torsion_witness: tuple | None = None
    weak_witness: tuple | None = None
    jacobi_witness: tuple | None = None


def nijenhuis_check(N, c: LieStruct) -> NijenhuisReport:
    n = c.n
    if len(N) != n or any(len(row) != n for row in N):
        raise DimensionError(f"operator must be {n}x{n}")
    units = [_unit(n, i) for i in range(n)]
    T = {}
    torsion_witness = None
    for i in range(n):
        for j in range(n):
            T[(i, j)] = nijenhuis_torsion(N, c, units[i], units[j])
            if torsion_witness is None and any(T[(i, j)]):
                torsion_witness = (i, j)

    def t_apply(u, v):
        # T^N is bilinear
        out = [0] * n
        for i in range(n):
            if u[i]:
                for j in range(n):
                    if v[j]:
                        for k in range(n):
                            out[k] += u[i] * v[j] * T[(i, j)][k]
        return out

    weak_witness = None
    for i, j, k in combinations(range(n), 3):
        total = [0] * n
        for a, b, d in ((i, j, k), (j, k, i), (k, i, j)):
            ea, eb, ed = units[a], units[b], units[d]
            s1 = c.bracket(ea, T[(b, d)])
            s2 = t_apply(ea, c.bracket(eb, ed))
            total = [x + y + z for x, y, z in zip(total, s1, s2)]
        if any(total):
            weak_witness = (i, j, k)
            break
    jacobi_witness = jacobi_violation(deformed_bracket(N, c))
    return NijenhuisReport(
        torsion_zero=torsion_witness is None,
        weak_condition=weak_witness is None,
        deformed_jacobi=jacobi_witness is None,
        torsion_witness=torsion_witness,
        weak_witness=weak_witness,
        jacobi_witness=jacobi_witness,
    )


# ---------------------------------------------------------------------------
# deformations by a skew map Omega : g x g -> g


@dataclass(frozen=True)
class DeformationReport:
    closed: bool
    fibrewise_lie: bool
    closed_witness: tuple | None = None
    fibrewise_witness: tuple | None = None
    family_jacobi: tuple = field(default_factory=tuple)


DEFORMATION_EPSILONS = (1, -1, 2)


def deformation_2cocycle_check(c: LieStruct, omega: LieStruct) -> DeformationReport:
    """``omega`` is given as structure constants of the skew map."""
    if omega.n != c.n:
        raise DimensionError("deformation map has the wrong size")
    n = c.n
    units = [_unit(n, i) for i in range(n)]
    closed_witness = None
    for i, j, k in combinations(range(n), 3):
        total = [0] * n
        for a, b, d in ((i, j, k), (j, k, i), (k, i, j)):
            ea, eb, ed = units[a], units[b], units[d]
            s1 = omega.bracket(c.bracket(ea, eb), ed)
            s2 = c.bracket(omega.bracket(ea, eb), ed)
            total = [x + y + z for x, y, z in zip(total, s1, s2)]
        if any(total):
            closed_witness = (i, j, k)
            break
    fib_witness = jacobi_violation(omega)
    family = ()
    if closed_witness is None and fib_witness is None:
        family = tuple((eps, check_jacobi(c.plus(omega, eps))) for eps in DEFORMATION_EPSILONS)
    return DeformationReport(closed_witness is None, fib_witness is None,
                             closed_witness, fib_witness, family)


# ---------------------------------------------------------------------------
# algebraic Schouten bracket on the exterior algebra of g
# multivectors are dicts {increasing index tuple: coefficient}


def wedge(p: dict, q: dict) -> dict:
    out = {}
    for ka, a in p.items():
        for kb, b in q.items():
            s, key = _perm_sign(ka + kb)
            if s:
                out[key] = out.get(key, 0) + s * a * b
    return {k: _norm(v) for k, v in out.items() if v}


def _vec_to_mv(v) -> dict:
    return {(i,): x for i, x in enumerate(v) if x}


def _mv_add(p, q, s=1):
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + s * v
    return {k: _norm(v) for k, v in out.items() if v}


def mv_degree(p: dict) -> int | None:
    degs = {len(k) for k in p}
    if len(degs) > 1:
        raise ValueError("inhomogeneous multivector")
    return degs.pop() if degs else None


def schouten_bracket(P: dict, Q: dict, c: LieStruct) -> dict:
    """Graded extension of the Lie bracket to Lambda g.

    [x1..xp, y1..yq] = sum (-1)^(i+j) [xi,yj] x1..^xi..xp y1..^yj..yq.
    Scalars (degree 0) bracket to zero.
    """
    out = {}
    for kx, a in P.items():
        for ky, b in Q.items():
            if len(kx) + len(ky) - 1 > MAX_CE_DEGREE:
                raise ValueError("multivector degree beyond the supported range")
            if not kx or not ky:
                continue
            for i, xi in enumerate(kx):
                rx = kx[:i] + kx[i + 1:]
                for j, yj in enumerate(ky):
                    ry = ky[:j] + ky[j + 1:]
                    sgn = -1 if (i + j) % 2 else 1
                    br = _vec_to_mv(c.c[xi][yj])
                    term = wedge(wedge(br, {rx: 1}), {ry: 1})
                    out = _mv_add(out, term, sgn * a * b)
    return out


def co_differential(cstar: LieStruct, P: dict) -> dict:
    """d_* on Lambda^k g induced by the bracket on g*, trivial coefficients."""
    n = cstar.n
    k = mv_degree(P)
    if k is None:
        return {}
    # (d P)(xi_0..xi_k) = sum_{a<b} (-1)^{a+b} P([xi_a, xi_b], ...)
    out = {}
    for xs in combinations(range(n), k + 1):
        total = 0
        for a in range(len(xs)):
            for b in range(a + 1, len(xs)):
                rest = xs[:a] + xs[a + 1:b] + xs[b + 1:]
                sgn = -1 if (a + b) % 2 else 1
                for l, coef in enumerate(cstar.c[xs[a]][xs[b]]):
                    if not coef:
                        continue
                    s, key = _perm_sign((l,) + rest)
                    if s:
                        total += sgn * s * coef * P.get(key, 0)
        if total:
            out[xs] = _norm(total)
    return out


def check_lie_bialgebra(c: LieStruct, cstar: LieStruct) -> bool:
    return bialgebra_violation(c, cstar) is None


def bialgebra_violation(c: LieStruct, cstar: LieStruct):
    """First basis pair violating d_*[u,v] = [d_*u,v] + [u,d_*v], else None."""
    if c.n != cstar.n:
        raise DimensionError("g and g* must have the same dimension")
    for s in (c, cstar):
        require_jacobi(s)
    n = c.n
    for i, j in combinations(range(n), 2):
        u, v = {(i,): 1}, {(j,): 1}
        lhs = co_differential(cstar, schouten_bracket(u, v, c))
        rhs = _mv_add(schouten_bracket(co_differential(cstar, u), v, c),
                      schouten_bracket(u, co_differential(cstar, v), c))
        if _mv_add(lhs, rhs, -1):
            return (i, j)
    return None


def coboundary_witness(c: LieStruct, cstar: LieStruct) -> dict | None:
    """Some tau in Lambda^2 g with d_* = [tau, .] on g, or None."""
    n = c.n
    pairs = list(combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    rows, rhs = [], []
    for u in range(n):
        target = co_differential(cstar, {(u,): 1})
        images = [schouten_bracket({p: 1}, {(u,): 1}, c) for p in pairs]
        for key in pairs:
            rows.append([img.get(key, 0) for img in images])
            rhs.append(target.get(key, 0))
    if not pairs:
        return {}
    sol = solve(rows, rhs, len(pairs))
    if sol is None:
        return None
    return {p: sol[index[p]] for p in pairs if sol[index[p]]}
