"""Independent reference computations, written directly in sympy.

None of these reuse the library's linear algebra or bracket code.
"""

from __future__ import annotations

from itertools import combinations, product

import sympy as sp
from sympy.combinatorics import Permutation


def perm_sign(p) -> int:
    return Permutation(list(p)).signature()


def bracket_fn(c):
    """[x, y] for coordinate lists under structure constants c[i][j][k]."""
    n = len(c)

    def br(x, y):
        return [sum(x[i] * y[j] * c[i][j][k] for i in range(n) for j in range(n)) for k in range(n)]

    return br


def brute_jacobi(c) -> bool:
    n = len(c)
    br = bracket_fn(c)
    units = [[int(i == k) for k in range(n)] for i in range(n)]
    for x, y, z in product(units, repeat=3):
        terms = [br(x, br(y, z)), br(y, br(z, x)), br(z, br(x, y))]
        if any(sum(t[k] for t in terms) != 0 for k in range(n)):
            return False
    return True


# ---------------------------------------------------------------------------
# Chevalley-Eilenberg cohomology from cochains evaluated on ordered tuples


def _cochain_value(basis_key, k_index, tuple_args, r):
    """Value of the basis cochain (I, k) on an ordered tuple of basis indices."""
    I = basis_key
    if sorted(tuple_args) != list(I):
        return [0] * r
    # sign of the permutation taking I to tuple_args
    perm = [I.index(a) for a in tuple_args]
    s = perm_sign(perm)
    return [s if q == k_index else 0 for q in range(r)]


def ce_matrix(c, rho, k: int):
    """sympy matrix of d: C^k -> C^{k+1}, columns = basis cochains, rows = (increasing J, component)."""
    n = len(c)
    r = len(rho[0]) if rho else 0
    src = [(I, q) for I in combinations(range(n), k) for q in range(r)]
    tgt = list(combinations(range(n), k + 1))
    M = sp.zeros(len(tgt) * r, len(src))
    for col, (I, q) in enumerate(src):
        def w(args):
            return _cochain_value(I, q, list(args), r)
        for t, J in enumerate(tgt):
            val = [0] * r
            for i in range(k + 1):
                rest = J[:i] + J[i + 1:]
                wv = w(rest)
                act = [sum(rho[J[i]][p][s] * wv[s] for s in range(r)) for p in range(r)]
                val = [a + (-1) ** i * b for a, b in zip(val, act)]
            for i in range(k + 1):
                for j in range(i + 1, k + 1):
                    rest = J[:i] + J[i + 1:j] + J[j + 1:]
                    for l in range(n):
                        coef = c[J[i]][J[j]][l]
                        if coef:
                            wv = w((l,) + rest)
                            val = [a + (-1) ** (i + j) * coef * b for a, b in zip(val, wv)]
            for p in range(r):
                M[t * r + p, col] = val[p]
    return M


def ce_cohomology(c, rho, top: int = 2) -> list[int]:
    n = len(c)
    r = len(rho[0])
    dims = []
    prev = 0
    for k in range(top + 1):
        size = len(list(combinations(range(n), k))) * r
        M = ce_matrix(c, rho, k)
        rk = M.rank() if M.shape[0] and M.shape[1] else 0
        dims.append(size - rk - prev)
        prev = rk
    return dims


def adjoint(c):
    n = len(c)
    return [[[c[i][j][k] for j in range(n)] for k in range(n)] for i in range(n)]


def derivation_dim(c) -> int:
    n = len(c)
    D = sp.Matrix(n, n, lambda i, j: sp.Symbol(f"D{i}_{j}"))
    br = bracket_fn(c)
    eqs = []
    for i, j in combinations(range(n), 2):
        ei = sp.Matrix([int(a == i) for a in range(n)])
        ej = sp.Matrix([int(a == j) for a in range(n)])
        lhs = D * sp.Matrix(br(list(ei), list(ej)))
        rhs = sp.Matrix(br(list(D * ei), list(ej))) + sp.Matrix(br(list(ei), list(D * ej)))
        eqs.extend(list(lhs - rhs))
    syms = list(D)
    if not eqs:
        return n * n
    A, _ = sp.linear_eq_to_matrix(eqs, syms)
    return n * n - A.rank()


# ---------------------------------------------------------------------------
# gl(V) + V at a point: bracket ([A, B], A v), pairing A v + B u


def point_bracket(X, Y):
    A, u = X
    B, v = Y
    return (A * B - B * A, A * v)


def point_split(vec, r):
    A = sp.Matrix(r, r, list(vec[: r * r]))
    u = sp.Matrix(list(vec[r * r:]))
    return A, u


def point_flat(X):
    A, u = X
    return list(A) + list(u)


def normalizer_dim(basis, r) -> int:
    """dim {X : {X, l} in L for all l}, with L spanned by ``basis`` (flat vectors)."""
    n = r * r + r
    L = sp.Matrix([[sp.Rational(x) for x in v] for v in basis]) if basis else sp.zeros(0, n)
    ann = L.nullspace() if L.shape[0] else [sp.eye(n)[:, i] for i in range(n)]
    xs = sp.symbols(f"x0:{n}")
    X = point_split(xs, r)
    eqs = []
    for v in basis:
        img = point_flat(point_bracket(X, point_split([sp.Rational(a) for a in v], r)))
        for f in ann:
            eqs.append(sum(f[i] * img[i] for i in range(n)))
    eqs = [e for e in eqs if e != 0]
    if not eqs:
        return n
    A, _ = sp.linear_eq_to_matrix(eqs, xs)
    return n - A.rank()


def isotropic_closed_oracle(W_basis, B, r) -> bool:
    """Closure of {(D,u) : u in W, D w_j = B(u, w_j)}: B lands in W and is a Lie bracket there."""
    w = len(W_basis)
    if w == 0:
        return True
    Wm = sp.Matrix([[sp.Rational(x) for x in v] for v in W_basis]).T  # r x w
    coords = {}
    for (i, j), val in B.items():
        sol = _solve_exact(Wm, sp.Matrix([sp.Rational(x) for x in val]))
        if sol is None:
            return False
        coords[(i, j)] = sol
    c = [[[0] * w for _ in range(w)] for _ in range(w)]
    for (i, j), sol in coords.items():
        for k in range(w):
            c[i][j][k] = sol[k]
            c[j][i][k] = -sol[k]
    return brute_jacobi(c)


def _solve_exact(M, b):
    aug = M.row_join(b)
    if aug.rank() != M.rank():
        return None
    sol, params = M.gauss_jordan_solve(b)
    return list(sol.subs({p: 0 for p in params}))


# ---------------------------------------------------------------------------
# Lie bialgebras through the Drinfeld double


def drinfeld_double_is_lie(c, cs) -> bool:
    """g + g* with [x, xi] = ad*_x xi - ad*_xi x is a Lie algebra."""
    n = len(c)
    N = 2 * n
    D = [[[0] * N for _ in range(N)] for _ in range(N)]
    for i, j, k in product(range(n), repeat=3):
        D[i][j][k] = c[i][j][k]
        D[n + i][n + j][n + k] = cs[i][j][k]
    for i, a in product(range(n), repeat=2):
        for b in range(n):
            # ad*_{e_i} eps_a = -sum_b c[i][b][a] eps_b
            D[i][n + a][n + b] += -c[i][b][a]
        for j in range(n):
            # -ad*_{eps_a} e_i = sum_j cs[a][j][i] e_j
            D[i][n + a][j] += cs[a][j][i]
        for t in range(N):
            D[n + a][i][t] = -D[i][n + a][t]
    return brute_jacobi(D)



# ---------------------------------------------------------------------------
# Dorfman bracket from operators: derivations act on sympy column vectors, jets
# are recovered from their pairing with the derivation frame


def der_act(D, v, ts):
    x, Phi = D
    return sp.Matrix([sum(x[a] * sp.diff(v[k], ts[a]) for a in range(len(ts))) for k in range(len(v))]) + Phi * v


def der_from_operator(op, ts, r):
    """(x, Phi) of a first-order operator with scalar symbol, read off from test sections."""
    e = [sp.Matrix([int(q == k) for q in range(r)]) for k in range(r)]
    Phi = sp.Matrix.hstack(*[sp.expand(op(ek)) for ek in e])
    x = [sp.expand(op(ts[a] * e[0])[0] - ts[a] * op(e[0])[0]) for a in range(len(ts))]
    return x, Phi


def der_commutator(D, R, ts, r):
    return der_from_operator(lambda v: der_act(D, der_act(R, v, ts), ts) - der_act(R, der_act(D, v, ts), ts), ts, r)


def jet_pair(m, D):
    u, eta = m
    x, Phi = D
    return Phi * u + eta * sp.Matrix(x)


def jet_from_pairing(fn, ts, r):
    d = len(ts)
    zero_x = [sp.Integer(0)] * d
    u = sp.Matrix([fn((zero_x, sp.Matrix(r, r, lambda i, j: int(i == j == q))))[q] for q in range(r)])
    cols = [fn(([sp.Integer(int(b == a)) for b in range(d)], sp.zeros(r, r))) for a in range(d)]
    return sp.expand(u), sp.expand(sp.Matrix.hstack(*cols))


def lie_derivative_oracle(D, m, ts, r):
    return jet_from_pairing(lambda R: der_act(D, jet_pair(m, R), ts) - jet_pair(m, der_commutator(D, R, ts, r)),
                            ts, r)


def dorfman_oracle(X, Y, ts):
    (D, mu), (R, nu) = X, Y
    r = D[1].shape[0]
    br = der_commutator(D, R, ts, r)
    l1 = lie_derivative_oracle(D, nu, ts, r)
    l2 = lie_derivative_oracle(R, mu, ts, r)
    w = jet_pair(mu, R)
    jw = (w, sp.Matrix.hstack(*[sp.diff(w, t) for t in ts]))
    jet = (sp.expand(l1[0] - l2[0] + jw[0]), sp.expand(l1[1] - l2[1] + jw[1]))
    return br, jet
