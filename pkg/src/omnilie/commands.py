"""Command implementations: each maps a model (and flags) to a Report."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import omni_point as op
from .algebroids import AnchorAlgebroid, check_projective_algebroid
from .axioms import axiom_suite
from .corpus import random_omni, random_poly, random_vec, rng_for
from .deform import bialgebroid_check, deformation_check, omega_X_cocycle_report
from .catalog import ENTRIES
from .dirac import (dirac_closure_check, inner_derivation, lift_bundle, lift_derivation_report,
                    reduce_bundle, same_dirac)
from .exact import matmul
from .graphs import (LambdaHat, PiMap, graph_lambda, graph_lambda_equivalence, graph_pi,
                     pi_formulas, pi_morphism_check)
from .lie import (bialgebra_violation, cohomology_dims, ce_differential, deformation_2cocycle_check,
                  derivations, jacobi_violation, nijenhuis_check, rep_violation)
from .modelfile import (ModelFile, model_from_algebroid, model_from_dirac, model_from_lie,
                        model_from_point)
from .report import Report
from .sections import jet_d

COMMANDS = ("check-lie", "check-dirac", "lift", "reduce", "normalizer", "derivations", "cohomology",
            "deform", "bialgebra", "graph-lambda", "pi-bracket", "verify-axioms", "catalog")

# commands that run without a model file
MODEL_FREE = ("verify-axioms", "catalog", "graph-lambda")

# cohomology is computed up to this degree
COHOMOLOGY_TOP = 3


class InputError(ValueError):
    """Bad command input; maps to exit code 2."""


@dataclass
class Flags:
    seed: int = 1
    d: int = 2
    r: int = 2
    deg: int = 2
    count: int | None = None
    name: str | None = None

    def count_or(self, default: int) -> int:
        return default if self.count is None else self.count


def _need(model: ModelFile | None, cmd: str, kinds: tuple) -> ModelFile:
    if model is None:
        raise InputError(f"{cmd} needs --model (one of: {', '.join(kinds)})")
    if model.kind not in kinds:
        raise InputError(f"{cmd} does not accept a {model.kind!r} model (expected {', '.join(kinds)})")
    return model


def _report(cmd: str, model: ModelFile | None, flags: Flags, **params) -> Report:
    if model is not None and model.name:
        params["model"] = model.name
    return Report(cmd, seed=flags.seed, params=params)


# ---------------------------------------------------------------------------
# check-lie


def cmd_check_lie(model, flags) -> Report:
    m = _need(model, "check-lie", ("lie", "algebroid"))
    rep = _report("check-lie", m, flags)
    obj = m.build()
    if m.kind == "lie":
        c, rho = obj["lie"], obj["rep"]
        w = jacobi_violation(c)
        rep.add("jacobi", w is None, w and {"triple": w}, anchor="lie.jacobi")
        v = rep_violation(rho, c) if w is None else None
        rep.add("representation", w is None and v is None, v and {"pair": v}, anchor="lie.representation")
        return rep
    check_projective_algebroid(obj["algebroid"], seed=flags.seed, report=rep)
    return rep


# ---------------------------------------------------------------------------
# check-dirac


def _point_dirac_checks(space, rep: Report):
    res = op.is_dirac(space)
    rep.add("isotropic", res.isotropic, res.witness if not res.isotropic else None, anchor="dirac.isotropic")
    rep.add("maximal", res.maximal, {"dim": res.dim, "w": res.w}, anchor="dirac.maximal")
    rep.add("closed", res.closed, res.witness if not res.closed else None, anchor="dirac.closed")
    rep.add("dimension_formula", res.dim_formula, {"dim": res.dim, "w": res.w}, anchor="dirac.dimension")
    return res


def cmd_check_dirac(model, flags) -> Report:
    m = _need(model, "check-dirac", ("omni-point", "dirac", "algebroid", "lambda", "lie"))
    rep = _report("check-dirac", m, flags)
    obj = m.build()
    if m.kind == "omni-point":
        _point_dirac_checks(obj.space, rep)
    elif m.kind == "lie":
        c, W = obj["lie"], obj["subspace"]
        if W is None:
            raise InputError("a lie model needs a subspace (or n = r) to be lifted")
        w = jacobi_violation(c)
        rep.add("jacobi", w is None, w and {"triple": w}, anchor="lie.jacobi")
        if w is None:
            _point_dirac_checks(op.lift_point(W, c).space, rep)
    elif m.kind == "dirac":
        dirac_closure_check(obj, rep)
    elif m.kind == "algebroid":
        A = obj["algebroid"]
        _lift_checks(A, obj["connection"], rep)
    else:
        dirac_closure_check(graph_lambda(obj), rep)
    return rep


def _lift_checks(A, conn, rep: Report):
    alg = check_projective_algebroid(A)
    rep.add("algebroid", alg.ok, [c.name for c in alg.failures()] or None, anchor="algebroid")
    if not alg.ok:
        return None
    L = lift_bundle(A, conn)
    dirac_closure_check(L, rep)
    return L


# ---------------------------------------------------------------------------
# lift and reduce


def cmd_lift(model, flags) -> Report:
    m = _need(model, "lift", ("lie", "algebroid"))
    rep = _report("lift", m, flags)
    obj = m.build()
    if m.kind == "lie":
        c, W = obj["lie"], obj["subspace"]
        if W is None:
            raise InputError("a lie model needs a subspace (or n = r) to be lifted")
        w = jacobi_violation(c)
        rep.add("jacobi", w is None, w and {"triple": w}, anchor="lie.jacobi")
        if w is not None:
            return rep
        L = op.lift_point(W, c)
        res = _point_dirac_checks(L.space, rep)
        if res.ok:
            W2, c2 = op.reduce_point(L)
            rep.add("round_trip", (W2, c2) == (W, c), anchor="lift.round_trip")
        rep.payload = model_from_point(L, name=_derived(m.name, "lift")).to_data()
        return rep
    A = obj["algebroid"]
    L = _lift_checks(A, obj["connection"], rep)
    if L is None:
        return rep
    if rep.ok:
        rep.add("round_trip", reduce_bundle(L, check=False) == A, anchor="lift.round_trip")
        if obj["connection"] is not None:
            rep.add("connection_independent", same_dirac(L, lift_bundle(A)), anchor="lift.connection")
    rep.payload = model_from_dirac(L, name=_derived(m.name, "lift")).to_data()
    return rep


def _derived(name: str, suffix: str) -> str:
    return f"{name}:{suffix}" if name else ""


def cmd_reduce(model, flags) -> Report:
    m = _need(model, "reduce", ("omni-point", "dirac"))
    rep = _report("reduce", m, flags)
    obj = m.build()
    if m.kind == "omni-point":
        res = _point_dirac_checks(obj.space, rep)
        if not res.ok:
            return rep
        W, c = op.reduce_point(obj)
        rep.add("round_trip", op.lift_point(W, c).space == obj.space, anchor="reduce.round_trip")
        rep.payload = model_from_lie(c, obj.r, "trivial", W, name=_derived(m.name, "reduce")).to_data()
        return rep
    dirac_closure_check(obj, rep)
    if not rep.ok:
        return rep
    A = reduce_bundle(obj, check=False)
    alg = check_projective_algebroid(A)
    rep.add("reduced_algebroid", alg.ok, [c.name for c in alg.failures()] or None, anchor="algebroid")
    rep.add("round_trip", same_dirac(lift_bundle(A), obj), anchor="reduce.round_trip")
    rep.payload = model_from_algebroid(A, name=_derived(m.name, "reduce")).to_data()
    return rep


# ---------------------------------------------------------------------------
# normalizer and derivations


def point_normalizer_corpus(L, seed: int, count: int) -> list:
    """Seeded elements: even indices from the normalizer, odd ones unrestricted."""
    rng = rng_for(seed)
    N = op.normalizer_point(L).basis
    out = []
    for i in range(count):
        if i % 2 == 0 and N:
            coeffs = [rng.randint(-3, 3) for _ in N]
            flat = [sum(c * v[k] for c, v in zip(coeffs, N)) for k in range(op.ambient(L.r))]
            out.append(op.OmniElt.unflatten(flat, L.r))
        else:
            out.append(op.OmniElt.unflatten([rng.randint(-3, 3) for _ in range(op.ambient(L.r))], L.r))
    return out


def cmd_normalizer(model, flags) -> Report:
    m = _need(model, "normalizer", ("omni-point", "dirac", "algebroid"))
    rep = _report("normalizer", m, flags)
    obj = m.build()
    if m.kind == "omni-point":
        res = op.is_dirac(obj.space)
        rep.add("dirac", res.ok, None, anchor="dirac")
        if not res.ok:
            return rep
        dimN, expected = op.normalizer_exact_count(obj)
        rep.add("exactness", dimN == expected, {"dim_normalizer": dimN, "expected": expected},
                anchor="normalizer.exactness")
        count = flags.count_or(100)
        agree = ident = None
        for i, X in enumerate(point_normalizer_corpus(obj, flags.seed, count)):
            o = op.omega_cochain_check(X, obj)
            if agree is None and o.is_cocycle != o.in_normalizer:
                agree = {"sample": i, "cocycle": o.is_cocycle, "normalizer": o.in_normalizer}
            if ident is None and not o.identity_holds:
                ident = {"sample": i}
        rep.add("cocycle_iff_normalizer", agree is None, agree, anchor="normalizer.cocycle")
        rep.add("omega_bracket_identity", ident is None, ident, anchor="normalizer.identity")
        rep.params["count"] = count
        rep.payload = {"dim_normalizer": dimN, "expected": expected}
        return rep
    if m.kind == "algebroid":
        L = _lift_checks(obj["algebroid"], obj["connection"], rep)
        if L is None:
            return rep
    else:
        L = obj
        dirac_closure_check(L, rep)
    if not rep.ok:
        return rep
    count = flags.count_or(4)
    rng = rng_for(flags.seed)
    d, r = L.d, L.r
    frame = L.frame()
    for i in range(count):
        if i % 2 == 0:
            # sections of L plus a jet differential lie in the normalizer
            X = jet_d(random_vec(rng, d, r, 1), d)
            for Y in frame:
                X = X + Y.scale(random_poly(rng, d, 0))
        else:
            X = random_omni(rng, d, r, 1)
        sub = omega_X_cocycle_report(X, L)
        rep.extend(sub, prefix=f"sample[{i}].")
    rep.params["count"] = count
    return rep


def cmd_derivations(model, flags) -> Report:
    m = _need(model, "derivations", ("lie", "omni-point", "algebroid"))
    rep = _report("derivations", m, flags)
    obj = m.build()
    if m.kind in ("lie", "omni-point"):
        if m.kind == "lie":
            c = obj["lie"]
            w = jacobi_violation(c)
            rep.add("jacobi", w is None, w and {"triple": w}, anchor="lie.jacobi")
            if w is not None:
                return rep
        else:
            res = op.is_dirac(obj.space)
            rep.add("dirac", res.ok, anchor="dirac")
            if not res.ok:
                return rep
            _, c = op.reduce_point(obj)
        der = derivations(c)
        rep.add("inner_are_derivations", der.inn.issubset(der.der), anchor="derivations.inner")
        n = c.n
        bad = None
        for v in der.der.basis:
            D = [list(v[i * n:(i + 1) * n]) for i in range(n)]
            if _derivation_defect(D, c):
                bad = {"derivation": v}
                break
        rep.add("basis_satisfies_leibniz", bad is None, bad, anchor="derivations.leibniz")
        payload = {"derivations": der.der.dim, "inner": der.inn.dim, "outer": der.ext_dim}
        if m.kind == "omni-point":
            dimN, expected = op.normalizer_exact_count(obj)
            rep.add("normalizer_exactness", dimN == expected,
                    {"dim_normalizer": dimN, "expected": expected}, anchor="normalizer.exactness")
            payload["dim_normalizer"] = dimN
        rep.payload = payload
        return rep
    A = obj["algebroid"]
    L = _lift_checks(A, obj["connection"], rep)
    if L is None or not rep.ok:
        return rep
    # a seeded annihilator element shifts the extension; the two lifts differ in the kernel
    rng = rng_for(flags.seed)
    a0 = A.a0_frame()
    shift = a0[rng.randrange(len(a0))] if a0 else None
    for i in range(A.n):
        delta = inner_derivation(A, A.unit(i))
        _, sub = lift_derivation_report(A, delta, L, shift=shift)
        rep.extend(sub, prefix=f"inner[{i}].")
    return rep


def _derivation_defect(D, c) -> bool:
    n = c.n
    for i, j in combinations(range(n), 2):
        ei = [1 if k == i else 0 for k in range(n)]
        ej = [1 if k == j else 0 for k in range(n)]
        Dv = lambda v: [sum(D[k][l] * v[l] for l in range(n)) for k in range(n)]  # noqa: E731
        lhs = Dv(c.bracket(ei, ej))
        rhs = [a + b for a, b in zip(c.bracket(Dv(ei), ej), c.bracket(ei, Dv(ej)))]
        if lhs != rhs:
            return True
    return False


# ---------------------------------------------------------------------------
# cohomology


def cmd_cohomology(model, flags) -> Report:
    m = _need(model, "cohomology", ("lie", "omni-point"))
    rep = _report("cohomology", m, flags)
    obj = m.build()
    if m.kind == "lie":
        c, rho = obj["lie"], obj["rep"]
        w = jacobi_violation(c)
        rep.add("jacobi", w is None, w and {"triple": w}, anchor="lie.jacobi")
        v = rep_violation(rho, c) if w is None else None
        rep.add("representation", w is None and v is None, v and {"pair": v}, anchor="lie.representation")
        if not rep.ok:
            return rep
    else:
        res = op.is_dirac(obj.space)
        rep.add("dirac", res.ok, anchor="dirac")
        if not res.ok:
            return rep
        c, rho = op.dirac_lie_algebra(obj)
    for k in range(COHOMOLOGY_TOP):
        dk = ce_differential(k, rho, c)
        dk1 = ce_differential(k + 1, rho, c)
        sq = matmul(dk1, dk) if dk and dk1 else []
        rep.add(f"d_squared_zero[{k}]", not any(x for row in sq for x in row), anchor="cohomology.d2")
    dims = cohomology_dims(rho, c, COHOMOLOGY_TOP)
    rep.payload = {f"h{k}": h for k, h in enumerate(dims)}
    return rep


# ---------------------------------------------------------------------------
# deformations and bialgebras


def cmd_deform(model, flags) -> Report:
    m = _need(model, "deform", ("deformation", "lie"))
    rep = _report("deform", m, flags)
    obj = m.build()
    if "algebroid" in obj and m.kind == "deformation":
        A = obj["algebroid"]
        alg = check_projective_algebroid(A)
        rep.add("algebroid", alg.ok, [c.name for c in alg.failures()] or None, anchor="algebroid")
        if alg.ok:
            res = deformation_check(A, obj["omega"], rep)
            rep.payload = {"closed": res.closed, "fibrewise": res.fibrewise,
                           "pullback_closed": res.b_star_closed, "deformed_dirac": res.deformed_dirac_ok}
        return rep
    c = obj["lie"]
    w = jacobi_violation(c)
    rep.add("jacobi", w is None, w and {"triple": w}, anchor="lie.jacobi")
    if w is not None:
        return rep
    cocycle = obj.get("cocycle")
    if cocycle is not None:
        res = deformation_2cocycle_check(c, cocycle)
        rep.add("cocycle.closed", res.closed, res.closed_witness and {"triple": res.closed_witness},
                anchor="deform.closed")
        rep.add("cocycle.fibrewise_lie", res.fibrewise_lie,
                res.fibrewise_witness and {"triple": res.fibrewise_witness}, anchor="deform.fibrewise")
        bad = [eps for eps, ok in res.family_jacobi if not ok]
        rep.add("cocycle.family_jacobi", not bad, bad or None, anchor="deform.family")
    for i, N in enumerate(obj.get("nijenhuis", [])):
        res = nijenhuis_check(N, c)
        rep.add(f"nijenhuis[{i}].weak_iff_jacobi", res.weak_condition == res.deformed_jacobi,
                anchor="nijenhuis.weak")
        rep.add(f"nijenhuis[{i}].deformed_jacobi", res.deformed_jacobi,
                res.jacobi_witness and {"triple": res.jacobi_witness,
                                        "weak_triple": res.weak_witness}, anchor="nijenhuis.jacobi")
    if not rep.checks[1:]:
        raise InputError("deform needs omega, a cocycle or Nijenhuis operators")
    return rep


def cmd_bialgebra(model, flags) -> Report:
    m = _need(model, "bialgebra", ("bialgebroid",))
    rep = _report("bialgebra", m, flags)
    obj = m.build()
    if "algebroid" in obj:
        E, Es = obj["algebroid"], obj["dual"]
        for name, A in (("algebroid", E), ("dual", Es)):
            alg = check_projective_algebroid(A)
            rep.add(f"{name}.lie_algebroid", alg.ok, [c.name for c in alg.failures()] or None,
                    anchor="algebroid")
        if rep.ok:
            bialgebroid_check(E, Es, rep)
        return rep
    g, gs = obj["lie"], obj["dual_lie"]
    for name, c in (("lie", g), ("dual_lie", gs)):
        w = jacobi_violation(c)
        rep.add(f"{name}.jacobi", w is None, w and {"triple": w}, anchor="lie.jacobi")
    if rep.ok:
        v = bialgebra_violation(g, gs)
        rep.add("bialgebra.compatibility", v is None, v and {"pair": v}, anchor="bialgebra.cocycle")
    return rep


# ---------------------------------------------------------------------------
# graphs


def lambda_corpus(seed: int, d: int, r: int, deg: int, count: int) -> tuple[list, list]:
    """``count`` coboundary maps and ``count`` maps with a random non-coboundary beta."""
    rng = rng_for(seed)
    cob, other = [], []
    for _ in range(count):
        lam = [random_vec(rng, d, d, deg) for _ in range(r)]
        cob.append(LambdaHat.coboundary(d, r, lam))
    for _ in range(count):
        lam = [random_vec(rng, d, d, deg) for _ in range(r)]
        ref = LambdaHat.coboundary(d, r, lam)
        while True:
            beta = {(a, b): random_vec(rng, d, r, deg) for a, b in combinations(range(d), 2)}
            lh = LambdaHat.make(d, r, lam, beta)
            if lh.beta != ref.beta:
                break
        other.append(lh)
    return cob, other


def cmd_graph_lambda(model, flags) -> Report:
    if model is not None:
        m = _need(model, "graph-lambda", ("lambda",))
        rep = _report("graph-lambda", m, flags)
        graph_lambda_equivalence(m.build(), rep)
        return rep
    d, r, deg = flags.d, flags.r, flags.deg
    if d < 2:
        raise InputError("non-coboundary examples need d >= 2")
    count = flags.count_or(20)
    rep = _report("graph-lambda", None, flags, d=d, r=r, deg=deg, count=count)
    cob, other = lambda_corpus(flags.seed, d, r, deg, count)
    results = {"coboundary": [], "random": []}
    for label, family, want in (("coboundary", cob, True), ("random", other, False)):
        bad = agree = None
        for i, lh in enumerate(family):
            res = graph_lambda_equivalence(lh)
            results[label].append(res.closure)
            if agree is None and not res.all_agree:
                agree = {"sample": i, "closure": res.closure, "cocycle": res.cocycle,
                         "coboundary": res.coboundary_form}
            if bad is None and res.closure != want:
                bad = {"sample": i}
        rep.add(f"{label}.expected_outcome", bad is None, bad, anchor="graph_lambda.outcome")
        rep.add(f"{label}.three_tests_agree", agree is None, agree, anchor="graph_lambda.agree")
    rep.payload = {k: sum(v) for k, v in results.items()}
    return rep


def cmd_pi_bracket(model, flags) -> Report:
    m = _need(model, "pi-bracket", ("algebroid",))
    A = m.build()["algebroid"]
    if not isinstance(A, AnchorAlgebroid) or A.m != A.r:
        raise InputError("pi-bracket needs an anchor algebroid on all of E")
    rep = _report("pi-bracket", m, flags)
    alg = check_projective_algebroid(A)
    morph = pi_morphism_check(PiMap.from_algebroid(A))
    rep.add("jacobi", alg.ok, [c.name for c in alg.failures()] or None, anchor="algebroid")
    rep.add("morphism", morph is None, morph, anchor="pi.morphism")
    rep.add("morphism_iff_jacobi", alg.ok == (morph is None), anchor="pi.morphism_iff_jacobi")
    if not alg.ok:
        return rep
    pi = PiMap.from_algebroid(A)
    rep.add("graph_equals_lift", same_dirac(graph_pi(pi), lift_bundle(A)), anchor="pi.graph")
    rng = rng_for(flags.seed)
    d, r = A.d, A.r
    count = flags.count_or(3)
    first = {"jet_jet": None, "jet_form": None, "form_form": None}
    for i in range(count):
        u, v = random_vec(rng, d, r, 1), random_vec(rng, d, r, 1)
        f, g = random_poly(rng, d, 2), random_poly(rng, d, 2)
        for k, ok in pi_formulas(pi, u, v, f, g).items():
            if not ok and first[k] is None:
                first[k] = {"sample": i}
    for k, w in first.items():
        rep.add(f"formula.{k}", w is None, w, anchor=f"pi.{k}")
    rep.params["count"] = count
    return rep


# ---------------------------------------------------------------------------
# model-free commands


def cmd_verify_axioms(model, flags) -> Report:
    if model is not None:
        raise InputError("verify-axioms does not take a model")
    count = flags.count_or(200)
    return axiom_suite(flags.seed, flags.d, flags.r, flags.deg, count)


def cmd_catalog(model, flags) -> Report:
    if model is not None:
        raise InputError("catalog does not take a model")
    names = list(ENTRIES)
    if flags.name is not None:
        if flags.name not in ENTRIES:
            raise InputError(f"no catalog entry named {flags.name!r}")
        names = [flags.name]
    rep = Report("catalog", seed=flags.seed)
    listing = []
    for name in names:
        e = ENTRIES[name]
        m = e.build()
        sub = run_command(e.command, m, Flags(seed=flags.seed))
        rep.add(f"{name}:{e.command}", sub.ok, [c.name for c in sub.failures()] or None,
                anchor=f"catalog.{name}")
        listing.append({"name": name, "kind": m.kind, "command": e.command, "description": e.description})
    # a single entry carries its full model document
    rep.payload = m.to_data() if flags.name is not None else listing
    return rep


HANDLERS = {
    "check-lie": cmd_check_lie,
    "check-dirac": cmd_check_dirac,
    "lift": cmd_lift,
    "reduce": cmd_reduce,
    "normalizer": cmd_normalizer,
    "derivations": cmd_derivations,
    "cohomology": cmd_cohomology,
    "deform": cmd_deform,
    "bialgebra": cmd_bialgebra,
    "graph-lambda": cmd_graph_lambda,
    "pi-bracket": cmd_pi_bracket,
    "verify-axioms": cmd_verify_axioms,
    "catalog": cmd_catalog,
}


def run_command(cmd: str, model: ModelFile | None = None, flags: Flags | None = None) -> Report:
    if cmd not in HANDLERS:
        raise InputError(f"unknown command {cmd!r}")
    return HANDLERS[cmd](model, flags or Flags())

