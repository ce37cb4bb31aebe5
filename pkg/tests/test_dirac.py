import pytest

from omnilie import catalog
from omnilie.algebroids import AnchorAlgebroid, check_projective_algebroid
from omnilie.corpus import random_omni, random_poly, random_tau, random_vec, rng_for
from omnilie.deform import omega_X_cocycle_report
from omnilie.dirac import (Connection, dirac_closure_check, falling_section, inner_derivation,
                           lift_bundle, lift_derivation, lift_derivation_report, membership_L, reduce_bundle,
                           same_dirac)
from omnilie.sections import b_proj, dorfman, jet_d, omni_pairing_sec

ALGEBROIDS = [catalog.full_curved, catalog.full_flat_semidirect, catalog.anchor_line, catalog.anchor_plane,
              catalog.anchor_subbundle, catalog.line_jacobi, catalog.form_graph]


@pytest.fixture(scope="module", params=ALGEBROIDS, ids=lambda f: f.__name__)
def lifted(request):
    A = request.param()
    return A, lift_bundle(A)


def test_lift_is_dirac(lifted):
    _, L = lifted
    assert dirac_closure_check(L).ok


def test_lift_is_isotropic_pairwise(lifted):
    _, L = lifted
    frame = L.frame()
    for X in frame:
        for Y in frame:
            assert all(not p.terms for p in omni_pairing_sec(X, Y))


def test_lift_projects_onto_the_algebroid(lifted):
    A, L = lifted
    assert [b_proj(X) for X in L.lift_frame] == list(A.frame)


def test_reduce_after_lift_is_identity(lifted):
    A, L = lifted
    assert reduce_bundle(L) == A


def test_lift_after_reduce_is_identity(lifted):
    _, L = lifted
    assert same_dirac(lift_bundle(reduce_bundle(L)), L)


def test_lifted_subbundle_example_round_trips():
    L = catalog.ENTRIES["subbundle-f-lift"].build().build()
    A = reduce_bundle(L)
    assert A == catalog.anchor_subbundle()
    assert same_dirac(lift_bundle(A), L)


def test_membership_rejects_generic_sections(lifted):
    _, L = lifted
    rng = rng_for(4)
    assert not membership_L(random_omni(rng, L.d, L.r, 1), L)
    X = L.frame()[0].scale(random_poly(rng, L.d, 1)) + L.frame()[-1]
    assert membership_L(X, L)


def test_lift_is_connection_independent():
    A = catalog.anchor_plane()
    conn = Connection.make(1, [[[1, 2], [0, 3]]])
    L0, L1 = lift_bundle(A), lift_bundle(A, conn)
    assert L0.lift_frame != L1.lift_frame
    assert same_dirac(L0, L1)
    rng = rng_for(11)
    for _ in range(10):
        X = random_omni(rng, 1, 2, 1)
        Y = L1.frame()[rng.randrange(L1.rank())].scale(random_poly(rng, 1, 1))
        assert membership_L(X, L0) == membership_L(X, L1)
        assert membership_L(Y, L0)


def test_non_jacobi_structure_does_not_lift_to_dirac():
    c = {(0, 1): [0, 0, 1], (1, 2): [0, 1, 0]}
    A = AnchorAlgebroid(1, 3, [[0, 0, 0]], c)
    assert not check_projective_algebroid(A).ok
    rep = dirac_closure_check(lift_bundle(A))
    assert not rep.ok
    assert rep.checks[0].passed and rep.checks[1].passed


@pytest.mark.parametrize("seed", range(4))
def test_falling_operator_is_a_leibniz_morphism(seed):
    rng = rng_for(seed)
    X, Y = random_omni(rng, 2, 2, 1), random_omni(rng, 2, 2, 1)
    fX, fY, fXY = falling_section(X), falling_section(Y), falling_section(dorfman(X, Y))
    for _ in range(3):
        t = random_tau(rng, 2, 2, 2)
        assert fXY(t) == fX(fY(t)) - fY(fX(t))


@pytest.mark.parametrize("build", [catalog.anchor_plane, catalog.full_flat_semidirect, catalog.form_graph],
                         ids=lambda f: f.__name__)
def test_inner_derivations_lift_into_normalizer(build):
    A = build()
    L = lift_bundle(A)
    a0 = A.a0_frame()
    for i in range(A.n):
        delta = inner_derivation(A, A.unit(i))
        _, rep = lift_derivation_report(A, delta, L, shift=a0[0] if a0 else None)
        assert rep.ok, rep.text()


def test_lift_derivation_rejects_non_derivations():
    A = catalog.anchor_plane()
    delta = inner_derivation(A, A.unit(0))
    # the anchor of the perturbed value no longer matches the symbol
    delta.values[1] = delta.values[1] + A.frame[0]
    with pytest.raises(ValueError, match="not a derivation"):
        lift_derivation(A, delta)


@pytest.mark.parametrize("seed", range(4))
def test_bundle_normalizer_cocycle_law(seed):
    A = catalog.anchor_line()
    L = lift_bundle(A)
    rng = rng_for(seed)
    X = jet_d(random_vec(rng, 1, 1, 1), 1) + L.frame()[0].scale(random_poly(rng, 1, 0))
    if seed % 2:
        X = random_omni(rng, 1, 1, 1)
    assert omega_X_cocycle_report(X, L).ok
