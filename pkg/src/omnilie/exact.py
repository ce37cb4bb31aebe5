"""Exact rational scalars, sparse polynomials, matrices and subspaces.

Coefficients are ``int`` or :class:`fractions.Fraction`; both compare and
hash consistently, and integer arithmetic is kept whenever possible because
it is several times faster than ``Fraction`` arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

Rat = Fraction


class DimensionError(ValueError):
    pass


def as_rat(value) -> Fraction | int:
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return value
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class Poly:
    """Sparse polynomial in ``nvars`` variables with exact coefficients.

    ``terms`` maps exponent tuples to nonzero coefficients. Instances are
    treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != nvars:
                    raise DimensionError(f"exponent {exp} does not have length {nvars}")
                c = _norm(as_rat(c))
                if c != 0:
                    clean[tuple(exp)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, nvars: int) -> Poly:
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> Poly:
        c = _norm(as_rat(c))
        return cls._raw(nvars, {(0,) * nvars: c} if c != 0 else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> Poly:
        exp = [0] * nvars
        exp[i] = 1
        return cls._raw(nvars, {tuple(exp): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> Poly:
        return cls(len(exp), {tuple(exp): c})

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise DimensionError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = _norm(as_rat(other))
            if c == 0:
                return Poly._raw(self.nvars, {})
            if c == 1:
                return self
            return Poly._raw(self.nvars, {e: _norm(v * c) for e, v in self.terms.items()})
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return Poly._raw(self.nvars, {})
        out: dict = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = get(e, 0) + c1 * c2
        return Poly._raw(self.nvars, {e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (Fraction(1) / as_rat(other))

    def diff(self, a: int) -> Poly:
        if not 0 <= a < self.nvars:
            raise DimensionError(f"no variable t{a + 1} in a {self.nvars}-variable polynomial")
        out = {}
        for e, c in self.terms.items():
            k = e[a]
            if k:
                ne = e[:a] + (k - 1,) + e[a + 1:]
                out[ne] = c * k
        return Poly._raw(self.nvars, out)

    def eval(self, point: Sequence) -> Fraction | int:
        if len(point) != self.nvars:
            raise DimensionError(f"point of length {len(point)} for {self.nvars} variables")
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x**k
            total += v
        return _norm(total) if isinstance(total, Fraction) else total

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * self.nvars, 0)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            return self == Poly.const(self.nvars, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-k for k in kv[0])))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"t{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def monomials(nvars: int, max_degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree <= max_degree, graded then lex."""
    out = []
    for deg in range(max_degree + 1):
        degs = []
        for combo in combinations_with_replacement(range(nvars), deg):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            degs.append(tuple(e))
        out.extend(sorted(set(degs), reverse=True))
    return out


# ---------------------------------------------------------------------------
# dense rational matrices (lists of rows)


def zeros(rows: int, cols: int) -> list[list]:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> list[list]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    if len(a[0]) != inner:
        raise DimensionError("matmul shape mismatch")
    cols = len(b[0]) if b else 0
    return [[_norm(sum(a[i][k] * b[k][j] for k in range(inner))) for j in range(cols)]
            for i in range(len(a))]


def matvec(a, v):
    return [_norm(sum(x * y for x, y in zip(row, v))) for row in a]


def transpose(a, cols: int | None = None):
    if not a:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*a)]


def rref(m: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(rank, reduced, pivots)`` where ``reduced`` holds only the
    nonzero rows.
    """
    rows = [[Fraction(x) for x in row] for row in m]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        if pv != 1:
            rows[r] = [x / pv for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    reduced = [[_norm(x) for x in row] for row in rows[:r]]
    return r, reduced, pivots


def kernel(m: Sequence[Sequence], ncols: int) -> list[list]:
    """Basis of {v : m v = 0}, one vector per free column."""
    rank, red, pivots = rref(m, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(red, pivots):
            v[p] = _norm(-row[f])
        basis.append(v)
    return basis


def rank(m: Sequence[Sequence], ncols: int | None = None) -> int:
    return rref(m, ncols)[0]


def solve(a: Sequence[Sequence], b: Sequence, ncols: int) -> list | None:
    """One solution of a x = b, or None when inconsistent."""
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    rk, red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [0] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def rref_result(m: Sequence[Sequence], ncols: int | None = None):
    """``(rank, reduced, kernel_basis)``: the rref contract of the core API."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    rk, red, _ = rref(m, ncols)
    return rk, red, kernel(m, ncols)


class Subspace:
    """Linear subspace of Q^N stored by the RREF basis of its row span."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in Q^{ambient_dim}")
        self.ambient_dim = ambient_dim
        _, red, piv = rref(vecs, ambient_dim) if vecs else (0, [], [])
        self.basis = tuple(tuple(row) for row in red)
        self.pivots = tuple(piv)

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, identity(n))

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(Q^{self.ambient_dim}, dim={self.dim})"

    def _check(self, other: Subspace):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(f"ambient mismatch: {self.ambient_dim} vs {other.ambient_dim}")

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionError(f"vector of length {len(v)} in Q^{self.ambient_dim}")
        # reduce against the pivoted basis
        w = list(v)
        for row, p in zip(self.basis, self.pivots):
            f = w[p]
            if f != 0:
                w = [x - f * y for x, y in zip(w, row)]
        return all(x == 0 for x in w)

    def coordinates(self, v: Sequence) -> list | None:
        """Coefficients of v in the canonical basis, or None if v is outside."""
        if not self.contains(v):
            return None
        return [v[p] for p in self.pivots]

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace(self.ambient_dim, list(self.basis) + list(other.basis))

    def annihilator(self) -> list[list]:
        """Rows f with f . v = 0 for every v in the subspace."""
        return kernel(self.basis, self.ambient_dim)

    def intersection(self, other: Subspace) -> Subspace:
        self._check(other)
        eqs = self.annihilator() + other.annihilator()
        return Subspace(self.ambient_dim, kernel(eqs, self.ambient_dim) if eqs else identity(self.ambient_dim))

    def issubset(self, other: Subspace) -> bool:
        return all(other.contains(v) for v in self.basis)


def subspace_lattice(u: Subspace, w: Subspace) -> tuple[Subspace, Subspace]:
    return u + w, u.intersection(w)


def membership(v: Sequence, s: Subspace) -> bool:
    return s.contains(v)
