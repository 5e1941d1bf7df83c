import random

import pytest
from hypothesis import given, strategies as st

from picardlab.complexes import identity_morphism, make_complex, make_complex_morphism
from picardlab.fuzz import case_rng, random_complex, random_complex_morphism, random_hom, random_skeletal
from picardlab.picard import (
    CompositionError,
    FlippedComm,
    ModelMismatchError,
    PArrow,
    SectionError,
    SkeletalModel,
    StrictModel,
    add_arrows,
    add_objects,
    automorphism_transformation,
    check_additive_functor,
    check_additive_transformation,
    check_picard_axioms,
    check_unitors,
    derive_left_unitor,
    functor_from_complex_morphism,
    homotopy_transformation,
    identity_functor,
    picard_checks,
)
from picardlab.zlin import GroupHom

Z4 = make_complex([0, 0], [0], [[4, 0]])
DOUBLING = make_complex([0], [0], [[2]])
INTEGERS = make_complex([], [0], [[]])


def z4_model(g=None):
    return SkeletalModel(Z4, [([i], [i]) for i in range(4)], g)


def test_strict_integers_add():
    P = StrictModel(INTEGERS)
    assert add_objects(P, P.object([3]), P.object([5])) == P.object([8])
    assert P.hom(P.object([1]), P.object([2])) is None


def test_strict_hom_sets():
    P = StrictModel(DOUBLING)
    f = P.hom(P.object([0]), P.object([2]))
    assert f.payload.coords == (1,)
    assert P.hom(P.object([0]), P.object([1])) is None
    g = P.arrow(P.object([1]), [2])
    s = add_arrows(P, f, g)
    assert s.payload.coords == (3,) and s.src == P.object([1]) and s.dst == P.object([7])


def test_add_identities_is_identity():
    P = z4_model({((1,), (2,)): (1,)})
    X, Y = P.object([1]), P.object([3])
    assert add_arrows(P, P.identity(X), P.identity(Y)) == P.identity(P.add(X, Y))


def test_strict_witnesses_are_identities():
    P = StrictModel(DOUBLING)
    X, Y, Z = P.object([1]), P.object([-4]), P.object([7])
    for w in (P.assoc(X, Y, Z), P.comm(X, Y), P.unit_left(X), P.unit_right(X), P.phi(), P.inv(X),
              P.neg_zero(), P.neg_distrib(X, Y), P.neg_neg(X)):
        assert w.payload.is_zero()


def test_skeletal_zero_cochain_zero_witnesses():
    P = z4_model()
    objs = [P.object([i]) for i in range(4)]
    for X in objs:
        for Y in objs:
            assert P.comm(X, Y).payload.is_zero()
            for Z in objs:
                assert P.assoc(X, Y, Z).payload.is_zero()


def test_skeletal_example_with_cochain():
    P = z4_model({((1,), (2,)): (1,)})
    one, two = P.object([1]), P.object([2])
    assert P.comm(one, two).payload.coords == (1,)
    assert P.comm(two, one).payload.coords == (-1,)
    assert not P.assoc(one, one, two).payload.is_zero()
    for i in range(4):
        X = P.object([i])
        assert P.comm(X, X) == P.identity(P.add(X, X))


def test_trivial_pi1_forces_identities():
    P = SkeletalModel(DOUBLING)
    X = P.object([1])
    assert P.assoc(X, X, X).payload.coords == () and P.comm(X, X) == P.identity(P.add(X, X))


def test_section_must_fix_zero():
    with pytest.raises(SectionError):
        SkeletalModel(Z4, [([0], [4])])


def test_model_mismatch():
    P, Q = StrictModel(Z4), z4_model()
    with pytest.raises(ModelMismatchError):
        P.add(P.object([1]), Q.object([1]))


def test_composition_requires_matching_ends():
    P = StrictModel(DOUBLING)
    f = P.arrow(P.object([0]), [1])
    with pytest.raises(CompositionError):
        P.compose(f, f)


def test_derived_unitor():
    for P in (StrictModel(DOUBLING), z4_model({((1,), (2,)): (1,), ((0,), (0,)): (3,)})):
        e = P.neutral()
        assert derive_left_unitor(P, e) == P.phi() == P.unit_left(e) == P.unit_right(e)
        for i in range(4):
            X = P.object([i])
            assert derive_left_unitor(P, X) == P.unit_left(X)
            assert P.compose(P.unit_left(X), P.comm(X, e)) == P.unit_right(X)


def test_axioms_on_skeletal_example():
    P = z4_model({((1,), (2,)): (1,), ((3,), (3,)): (-2,), ((0,), (2,)): (5,)})
    report = check_picard_axioms(P, 30, 1)
    assert report.passed, [r.to_dict() for r in report.failures()]
    assert check_unitors(P, 30, 1).passed
    assert {r.check for r in report} == set(picard_checks(P))


@given(st.integers(0, 2**32), st.sampled_from(["zero", "normalized", "raw"]))
def test_axioms_on_random_models(seed, variant):
    rng = case_rng(seed, 0, "axioms")
    c = random_complex(rng)
    for P in (StrictModel(c), random_skeletal(rng, c, variant)):
        report = check_picard_axioms(P, 4, seed)
        assert report.passed, [r.to_dict() for r in report.failures()]


def test_flipped_comm_is_caught():
    P = FlippedComm(z4_model({((1,), (2,)): (1,)}))
    failing = {r.check for r in check_picard_axioms(P, 20, 0).failures()}
    assert "hexagon" in failing
    bad = next(r for r in check_picard_axioms(P, 20, 0) if r.check == "hexagon")
    assert set(bad.counterexample) >= {"X", "Y", "Z"}


def test_functor_from_scaling():
    m = make_complex_morphism(DOUBLING, DOUBLING, [[3]], [[3]])
    S = StrictModel(DOUBLING)
    F = functor_from_complex_morphism(m, S, S)
    assert F.on_object(S.object([5])) == S.object([15])
    assert check_additive_functor(F, 10, 0).passed


def test_identity_functor_distributor():
    P = z4_model({((1,), (2,)): (1,)})
    F = identity_functor(P)
    X, Y = P.object([1]), P.object([2])
    assert F.distributor(X, Y) == P.identity(P.add(X, Y))


def test_skeletal_equivalence_functors():
    P = z4_model({((1,), (2,)): (1,)})
    assert check_additive_functor(P.to_strict(), 20, 0).passed
    assert check_additive_functor(P.from_strict(), 20, 0).passed


@given(st.integers(0, 2**32))
def test_random_functors_and_transformations(seed):
    rng = case_rng(seed, 0, "functors")
    c = random_complex(rng)
    m = random_complex_morphism(rng, c)
    src = random_skeletal(rng, c, "raw") if rng.random() < 0.5 else StrictModel(c)
    dst = random_skeletal(rng, m.target, "normalized") if rng.random() < 0.5 else StrictModel(m.target)
    F = functor_from_complex_morphism(m, src, dst)
    assert check_additive_functor(F, 4, seed).passed
    h = random_hom(rng, c.B, m.target.A)
    u = homotopy_transformation(m, h, src, dst)
    assert check_additive_transformation(u, 4, seed).passed


def test_automorphism_transformation():
    P = z4_model({((1,), (2,)): (1,)})
    with pytest.raises(ModelMismatchError):
        automorphism_transformation(P, GroupHom.identity(P.objects))
    c = make_complex([2, 0], [2], [[0, 0]])
    Q = SkeletalModel(c)
    lam = GroupHom.from_rows(Q.objects, Q.payloads, [[1], [0]])
    u = automorphism_transformation(Q, lam)
    assert check_additive_transformation(u, 10, 0).passed
    assert u.component(Q.object([1])) == PArrow(Q.object([1]), Q.object([1]), Q.payloads.element([1, 0]))


def test_identity_complex_morphism_gives_identity_functor():
    S = StrictModel(Z4)
    F = functor_from_complex_morphism(identity_morphism(Z4), S, S)
    rng = random.Random(0)
    for _ in range(10):
        X = S.sample_object(rng)
        assert F.on_object(X) == X
        assert F.distributor(X, X) == S.identity(S.add(X, X))
