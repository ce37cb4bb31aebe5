"""Built-in example models, each paired with the command that checks it."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .algebroids import AnchorAlgebroid, FormAlgebroid, FullAlgebroid, LineAlgebroid
from .dirac import lift_bundle
from .exact import Poly, Subspace
from .graphs import LambdaHat
from .lie import LieStruct
from .modelfile import (ModelFile, model_from_algebroid, model_from_bialgebra, model_from_bialgebroid,
                        model_from_deformation, model_from_dirac, model_from_lambda, model_from_lie,
                        model_from_point)
from .omni_point import lift_point
from .sections import TauSec


def _t(d: int, i: int) -> Poly:
    return Poly.var(d, i)


def abelian(n: int) -> LieStruct:
    return LieStruct.abelian(n)


def aff1() -> LieStruct:
    """[e1, e2] = e2."""
    return LieStruct.from_brackets(2, {(0, 1): [0, 1]})


def sl2() -> LieStruct:
    """Basis h, e, f with [h, e] = 2e, [h, f] = -2f, [e, f] = h."""
    return LieStruct.from_brackets(3, {(0, 1): [0, 2, 0], (0, 2): [0, 0, -2], (1, 2): [1, 0, 0]})


AFF1_NIJENHUIS = ([[1, 0], [0, 2]], [[0, 0], [1, 0]], [[3, 0], [0, 3]])
SL2_NIJENHUIS = ([[0, 0, 0], [0, 1, 0], [0, 0, 0]], [[0, 0, 1], [0, 0, 0], [0, 0, 0]],
                 [[-2, 0, 0], [0, -2, 0], [0, 0, -2]])


def full_curved() -> FullAlgebroid:
    """TM + E over Q^2 with fibre aff(1), connection ad(w_a) and curvature R_12.

    With ad(w) = ((0, 0), (-w2, w1)), w_1 = (t2, 0), w_2 = (0, t1) and
    R_12 = (-1, 1 + t1 t2) the three compatibility conditions hold.
    """
    t1, t2 = _t(2, 0), _t(2, 1)
    gamma = [[[0, 0], [0, t2]], [[0, 0], [-t1, 0]]]
    return FullAlgebroid(2, 2, gamma=gamma, curvature={(0, 1): [-1, 1 + t1 * t2]},
                         fibre={(0, 1): [0, 1]})


def full_flat_semidirect() -> FullAlgebroid:
    """TM + (M x aff(1)) with the flat connection d + ad(e1)."""
    return FullAlgebroid(1, 2, gamma=[[[0, 0], [0, 1]]], fibre={(0, 1): [0, 1]})


def anchor_line() -> AnchorAlgebroid:
    """Lie algebroid on the trivial line bundle over Q with anchor t."""
    return AnchorAlgebroid(1, 1, [[_t(1, 0)]])


def anchor_plane() -> AnchorAlgebroid:
    """Rank-two Lie algebroid over Q: anchor (t, 0), [e1, e2] = e2."""
    return AnchorAlgebroid(1, 2, [[_t(1, 0), 0]], {(0, 1): [0, 1]})


def anchor_subbundle() -> AnchorAlgebroid:
    """Projective algebroid over the proper subbundle F = span(e1, e2 + e3)."""
    return AnchorAlgebroid(1, 3, [[_t(1, 0), 0]], {(0, 1): [0, 1]}, subspace=[[1, 0, 0], [0, 1, 1]])


def line_jacobi() -> LineAlgebroid:
    """Rank-one projective algebroid spanned by t2 d/dt1 + t1^2 d/dt2 + e."""
    t1, t2 = _t(2, 0), _t(2, 1)
    return LineAlgebroid(2, 1, TauSec.make(2, [t2, t1 * t1], [1]), designated=2)


def form_graph() -> FormAlgebroid:
    t1, t2 = _t(2, 0), _t(2, 1)
    return FormAlgebroid(2, 1, [[t1 * t2, t1 + t2 * t2]])


def lambda_poly() -> LambdaHat:
    t1, t2 = _t(2, 0), _t(2, 1)
    return LambdaHat.coboundary(2, 2, [[t1 * t2, 1 - t2], [t1 * t1, 2 * t1 + t2]])


def heisenberg() -> tuple:
    """Flat abelian TM + E of rank 3 over Q; omega(e1, e2) = e3 on frame indices 1, 2."""
    return FullAlgebroid(1, 3), {(1, 2): [0, 0, 1]}


def bialgebra_line() -> tuple:
    """E = trivial line bundle with anchor d/dt; E* with zero anchor and bracket."""
    return AnchorAlgebroid(1, 1, [[1]]), AnchorAlgebroid(1, 1, [[0]])


@dataclass(frozen=True)
class Entry:
    name: str
    command: str
    build: Callable[[], ModelFile]
    description: str


def _entries() -> list[Entry]:
    full2 = Subspace.full(2)
    plane_line = Subspace(2, [[1, 0]])
    return [
        Entry("abelian-n2", "cohomology",
              lambda: model_from_lie(abelian(2), 2, "trivial", name="abelian-n2",
                                     description="abelian Q^2 acting trivially on Q^2"),
              "abelian Lie algebra of dimension 2, trivial representation"),
        Entry("aff1", "check-lie",
              lambda: model_from_lie(aff1(), 2, "adjoint", nijenhuis=AFF1_NIJENHUIS, name="aff1",
                                     description="[e1, e2] = e2 with its adjoint representation"),
              "affine Lie algebra of the line, adjoint representation"),
        Entry("sl2", "check-lie",
              lambda: model_from_lie(sl2(), 3, "adjoint", nijenhuis=SL2_NIJENHUIS, name="sl2",
                                     description="sl(2) in the basis h, e, f, adjoint representation"),
              "sl(2), adjoint representation"),
        Entry("aff1-lift", "check-dirac",
              lambda: model_from_point(lift_point(full2, aff1()), name="aff1-lift",
                                       description="Dirac structure of gl(V) + V lifting aff(1) on V = Q^2"),
              "pointwise Dirac structure lifting aff(1)"),
        Entry("sl2-lift", "check-dirac",
              lambda: model_from_point(lift_point(Subspace.full(3), sl2()), name="sl2-lift",
                                       description="Dirac structure of gl(V) + V lifting sl(2) on V = Q^3"),
              "pointwise Dirac structure lifting sl(2)"),
        Entry("line-in-plane-lift", "check-dirac",
              lambda: model_from_point(lift_point(plane_line, abelian(1)), name="line-in-plane-lift",
                                       description="lift of the line span(e1) inside V = Q^2"),
              "pointwise Dirac structure over a proper subspace"),
        Entry("graph-lambda-poly", "graph-lambda",
              lambda: model_from_lambda(lambda_poly(), coboundary=True, name="graph-lambda-poly",
                                        description="graph of -d(lambda o symbol) for a polynomial lambda"),
              "graph of a coboundary skew map from derivations to jets"),
        Entry("form-d2r1", "check-lie",
              lambda: model_from_algebroid(form_graph(), name="form-d2r1",
                                           description="graph of a polynomial E-valued one-form"),
              "projective algebroid given by the graph of a one-form"),
        Entry("anchor-d1r1", "check-lie",
              lambda: model_from_algebroid(anchor_line(), name="anchor-d1r1",
                                           description="Lie algebroid on a line bundle with anchor t d/dt"),
              "Lie algebroid on a line bundle"),
        Entry("anchor-d1r2", "pi-bracket",
              lambda: model_from_algebroid(anchor_plane(), name="anchor-d1r2",
                                           description="rank-two Lie algebroid with anchor (t, 0)"),
              "Lie algebroid structure on all of E, used for the jet bracket"),
        Entry("line-bundle-jacobi", "check-dirac",
              lambda: model_from_algebroid(line_jacobi(), name="line-bundle-jacobi",
                                           description="rank-one projective algebroid on a line bundle"),
              "rank-one projective algebroid over a line bundle"),
        Entry("full-flat-semidirect", "check-lie",
              lambda: model_from_algebroid(full_flat_semidirect(), name="full-flat-semidirect",
                                           description="TM + E with fibre aff(1) and flat connection d + ad(e1)"),
              "full presentation, flat connection by derivations"),
        Entry("full-curved", "check-lie",
              lambda: model_from_algebroid(full_curved(), name="full-curved",
                                           description="TM + E with connection and curvature satisfying "
                                                       "the compatibility conditions"),
              "full presentation with curvature"),
        Entry("subbundle-f-lift", "check-dirac",
              lambda: model_from_dirac(lift_bundle(anchor_subbundle()), name="subbundle-f-lift",
                                       description="lifted Dirac structure of a projective algebroid "
                                                   "over F = span(e1, e2 + e3)"),
              "Dirac structure lifting a projective algebroid on a proper subbundle"),
        Entry("heisenberg-deformation", "deform",
              lambda: model_from_deformation(*heisenberg(), name="heisenberg-deformation",
                                             description="omega(e1, e2) = e3 on the flat abelian TM + E"),
              "deformation of the flat abelian full algebroid"),
        Entry("bialgebra-trivial", "bialgebra",
              lambda: model_from_bialgebroid(*bialgebra_line(), name="bialgebra-trivial",
                                             description="line bundle with anchor d/dt paired with the "
                                                         "zero structure on the dual"),
              "Lie bialgebroid with a trivial side"),
        Entry("bialgebra-aff1-trivial", "bialgebra",
              lambda: model_from_bialgebra(aff1(), abelian(2), name="bialgebra-aff1-trivial",
                                           description="aff(1) with the abelian dual"),
              "Lie bialgebra with an abelian dual"),
    ]


ENTRIES = {e.name: e for e in _entries()}


def catalog() -> list[ModelFile]:
    return [e.build() for e in ENTRIES.values()]


def get(name: str) -> ModelFile:
    if name not in ENTRIES:
        raise KeyError(f"no catalog entry named {name!r}")
    return ENTRIES[name].build()
