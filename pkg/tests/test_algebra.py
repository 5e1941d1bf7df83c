import pytest
from hypothesis import given, strategies as st

from picardlab.algebra import (
    TwoAlgebraMorphism,
    apply_matrix_arrows,
    apply_matrix_objects,
    check_algebra_morphism,
    check_hat,
    check_modification,
    compositor_source_expr,
    hat,
    hat_functor,
    hat_modification,
    reconstruct,
    round_trip_hom,
    round_trip_report,
)
from picardlab.complexes import make_complex, make_complex_morphism
from picardlab.fuzz import case_rng, random_complex, random_complex_morphism, random_skeletal
from picardlab.picard import (
    FlippedComm,
    PArrow,
    SkeletalModel,
    StrictModel,
    functor_from_complex_morphism,
    identity_functor,
    identity_transformation,
)
from picardlab.rewrite import closed_form_witness
from picardlab.suite import power_counts
from picardlab.theory import OneCell
from picardlab.zlin import DimensionError

INTEGERS = make_complex([], [0], [[]])
Z4 = make_complex([0, 0], [0], [[4, 0]])


def z4():
    return SkeletalModel(Z4, [([i], [i]) for i in range(4)], {((1,), (2,)): (1,)})


def ints(P, *values):
    return tuple(P.object([v]) for v in values)


def test_apply_matrix_examples():
    P = StrictModel(INTEGERS)
    X = ints(P, 3, 5)
    assert apply_matrix_objects(OneCell.of([[1, 1]]), X, P) == ints(P, 8)
    assert apply_matrix_objects(OneCell.of([[2, -1]]), X, P) == ints(P, 1)
    assert apply_matrix_objects(OneCell.identity(2), X, P) == X
    assert apply_matrix_arrows(OneCell.of([[1, 1]]), [P.identity(x) for x in X], P) == (P.identity(P.object([8])),)
    with pytest.raises(DimensionError):
        apply_matrix_objects(OneCell.of([[1, 1, 1]]), X, P)


def test_hat_objects_are_powers():
    P = z4()
    A = hat(P)
    assert A.object(2).n == 2 and A.object(2).base is P
    assert A.object(0).object_count() == 1
    assert A.object(2).object_count() == 16


def test_strict_compositors_are_identities():
    P = StrictModel(Z4)
    A = hat(P)
    Q, R = OneCell.of([[1, 1], [0, -2]]), OneCell.of([[1, 0, 3], [-1, 1, 1]])
    X = ints(P, 2, -7, 5)
    for g in A.compositor(Q, R, X):
        assert g.payload.is_zero()


def test_skeletal_compositor_matches_transport():
    P = z4()
    A = hat(P)
    Q, R = OneCell.of([[1, 1]]), OneCell.of([[1, 0], [1, 1]])
    X = ints(P, 1, 1)
    (gamma,) = A.compositor(Q, R, X)
    assert gamma == closed_form_witness(compositor_source_expr(Q, R, 0), P, X)
    assert gamma.src == A.cell(Q).on_object(A.cell(R).on_object(X))[0]
    assert gamma.dst == A.cell(Q @ R).on_object(X)[0]


@pytest.mark.parametrize("model", ["strict", "skeletal"])
def test_check_hat_passes(model):
    P = StrictModel(Z4) if model == "strict" else z4()
    report = check_hat(hat(P), 15, 3)
    assert report.passed, [r.to_dict() for r in report.failures()]
    names = {r.check for r in report}
    assert {"hat.compositor_naturality", "hat.compositor_cocycle", "hat.product_preservation"} <= names


def test_check_hat_catches_flipped_comm():
    report = check_hat(hat(FlippedComm(z4())), 20, 1)
    assert not report.passed


def test_hat_functor_componentwise():
    S = StrictModel(INTEGERS)
    m = make_complex_morphism(INTEGERS, INTEGERS, [], [[3]])
    F = functor_from_complex_morphism(m, S, S)
    H = hat_functor(F)
    assert H.component(2).on_object(ints(S, 3, 5)) == ints(S, 9, 15)
    assert check_algebra_morphism(H, 10, 0).passed
    assert round_trip_hom(F, H)


def test_identity_functor_gives_identity_morphism():
    P = z4()
    F = identity_functor(P)
    H = hat_functor(F)
    X = ints(P, 1, 3)
    assert H.component(2).on_object(X) == X
    for g in H.filler(OneCell.of([[1, 1], [1, -1]]), X):
        assert g == P.identity(g.src)


@given(st.integers(0, 2**32))
def test_round_trip_on_random_functors(seed):
    rng = case_rng(seed, 0, "rt")
    c = random_complex(rng)
    m = random_complex_morphism(rng, c)
    F = functor_from_complex_morphism(m, random_skeletal(rng, c, "raw"), random_skeletal(rng, m.target, "normalized"))
    H = hat_functor(F)
    assert round_trip_report(F, H, 5, seed).passed
    assert check_algebra_morphism(H, 3, seed).passed


def test_perturbed_morphism_is_rejected():
    c = make_complex([0], [], [])
    P = SkeletalModel(c)
    F = identity_functor(P)
    H = hat_functor(F)
    shift = P.payloads.element([1])

    def filler(cell, X):
        return tuple(PArrow(g.src, g.dst, g.payload + shift) for g in H.filler(cell, X))

    bad = TwoAlgebraMorphism(H.source, H.target, H.component, filler)
    assert not round_trip_hom(F, bad)
    assert round_trip_hom(F, H)


def test_identity_modification():
    P = z4()
    mod = hat_modification(identity_transformation(identity_functor(P)))
    X = ints(P, 2, 3)
    assert mod.component(2, X) == tuple(P.identity(x) for x in X)
    assert check_modification(mod, 10, 0).passed


def test_reconstruct_strict_integers_is_addition():
    P = StrictModel(INTEGERS)
    rec = reconstruct(hat(P), P, 10, 0)
    assert rec.ok, [r.to_dict() for r in rec.report.failures()]
    R = rec.model
    assert R.add(P.object([3]), P.object([5])) == P.object([8])
    assert R.neutral() == P.object([0])
    X, Y = P.object([4]), P.object([-9])
    assert R.comm(X, Y) == P.identity(P.add(X, Y))


def test_reconstruct_skeletal_matches_constraints():
    P = z4()
    R = reconstruct(hat(P), P, 10, 0)
    assert R.ok
    one, two = P.object([1]), P.object([2])
    assert R.model.comm(one, two) == P.comm(one, two)
    assert R.model.assoc(one, one, two) == P.assoc(one, one, two)


def test_reconstruct_flipped_comm_fails_axioms():
    rec = reconstruct(hat(FlippedComm(z4())), None, 20, 0)
    failing = {r.check for r in rec.report.failures()}
    assert any(name.endswith("hexagon") for name in failing)


def test_power_counts_of_trivial_stack():
    P = StrictModel(make_complex([], [], []))
    counts = power_counts(P)
    assert counts.detail == {str(n): {"arrows": 1, "objects": 1} for n in range(5)}
    assert power_counts(StrictModel(INTEGERS)) is None
