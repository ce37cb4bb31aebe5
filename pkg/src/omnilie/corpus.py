"""Seeded random inputs.

The generator is part of the command-line contract: a ``random.Random(seed)``
instance draws every coefficient with ``randint(-3, 3)``, walking monomials in
the order of :func:`omnilie.exact.monomials` and section components in the
order ``x, Phi (row-major), u, eta (row-major)``.
"""

from __future__ import annotations

import random

from .exact import Poly, Subspace, kernel, monomials
from .omni_point import OmniElt
from .sections import DerSec, HomSec, JetSec, OmniSec, TauSec

COEFF_RANGE = 3


def rng_for(seed: int) -> random.Random:
    return random.Random(seed)


def random_rat(rng: random.Random) -> int:
    return rng.randint(-COEFF_RANGE, COEFF_RANGE)


def random_poly(rng: random.Random, d: int, deg: int) -> Poly:
    return Poly(d, {e: random_rat(rng) for e in monomials(d, deg)})


def random_vec(rng, d, n, deg) -> tuple:
    return tuple(random_poly(rng, d, deg) for _ in range(n))


def random_mat(rng, d, rows, cols, deg) -> tuple:
    return tuple(random_vec(rng, d, cols, deg) for _ in range(rows))


def random_der(rng, d, r, deg) -> DerSec:
    return DerSec(random_vec(rng, d, d, deg), random_mat(rng, d, r, r, deg), d)


def random_jet(rng, d, r, deg) -> JetSec:
    return JetSec(random_vec(rng, d, r, deg), random_mat(rng, d, r, d, deg), d)


def random_omni(rng, d, r, deg) -> OmniSec:
    return OmniSec(random_der(rng, d, r, deg), random_jet(rng, d, r, deg))


def random_tau(rng, d, r, deg) -> TauSec:
    return TauSec(random_vec(rng, d, d, deg), random_vec(rng, d, r, deg), d)


def random_hom(rng, d, r, deg) -> HomSec:
    return HomSec(random_mat(rng, d, r, r, deg), random_mat(rng, d, r, d, deg), d)


def random_point(rng, r) -> OmniElt:
    return OmniElt.unflatten([random_rat(rng) for _ in range(r * r + r)], r)


def random_matrix_q(rng, rows, cols) -> list[list[int]]:
    return [[random_rat(rng) for _ in range(cols)] for _ in range(rows)]


def random_subspace(rng, r: int, w: int) -> Subspace:
    """A w-dimensional subspace of Q^r, redrawn until the rank is w."""
    while True:
        S = Subspace(r, random_matrix_q(rng, w, r))
        if S.dim == w:
            return S


def random_isotropic(rng, r: int, w: int | None = None):
    """Seeded maximal isotropic subspace of gl(V) + V.

    Draws W of dimension w and a skew map B: W x W -> V; half of the time B
    takes values in W. Returns (L, W, B) with L = {(D, u) : u in W,
    D w_j = B(u, w_j)} and B as {(i, j): vector} on the canonical basis of W.
    """
    w = rng.randint(0, r) if w is None else w
    W = random_subspace(rng, r, w) if w else Subspace.zero(r)
    basis = [list(v) for v in W.basis]
    inside = rng.random() < 0.5
    B = {}
    for i in range(w):
        for j in range(i + 1, w):
            if inside:
                coeffs = [random_rat(rng) for _ in range(w)]
                B[(i, j)] = [sum(c * b[k] for c, b in zip(coeffs, basis)) for k in range(r)]
            else:
                B[(i, j)] = [random_rat(rng) for _ in range(r)]

    def b(i, j):
        if i == j:
            return [0] * r
        return B[(i, j)] if i < j else [-x for x in B[(j, i)]]

    # unknowns: D (r*r row-major) then coefficients a (w) with u = sum a_i w_i
    nv = r * r + w
    eqs = []
    for j in range(w):
        for k in range(r):
            row = [0] * nv
            for q in range(r):
                row[k * r + q] += basis[j][q]
            for i in range(w):
                row[r * r + i] -= b(i, j)[k]
            if any(row):
                eqs.append(row)
    sols = kernel(eqs, nv) if eqs else [[1 if i == j else 0 for j in range(nv)] for i in range(nv)]
    vecs = []
    for sol in sols:
        u = [sum(sol[r * r + i] * basis[i][k] for i in range(w)) for k in range(r)]
        vecs.append(list(sol[:r * r]) + u)
    return Subspace(r * r + r, vecs), W, B
