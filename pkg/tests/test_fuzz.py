from hypothesis import given, strategies as st

from picardlab import suite
from picardlab.fuzz import (
    ENTRY_BOUND,
    case_rng,
    random_arities,
    random_complex,
    random_complex_morphism,
    random_entry,
    random_expr,
    random_models,
)
from picardlab.report import FAIL, CheckResult, Report

seeds = st.integers(0, 2**64 - 1)


@given(seeds)
def test_random_complexes_respect_bounds(seed):
    c = random_complex(case_rng(seed, 0))
    assert c.A.ngens <= 3 and c.B.ngens <= 3
    for G in (c.A, c.B):
        assert all(d == 0 or any(d % t == 0 for t in (2, 3, 4, 6, 8)) for d in G.factors)


@given(seeds)
def test_generation_is_deterministic(seed):
    a, b = case_rng(seed, 3), case_rng(seed, 3)
    assert random_complex(a) == random_complex(b)
    assert random_expr(a) == random_expr(b)
    ma, mb = random_complex_morphism(a, random_complex(a)), random_complex_morphism(b, random_complex(b))
    assert ma == mb


@given(seeds)
def test_entries_and_arities(seed):
    rng = case_rng(seed, 0)
    assert all(abs(random_entry(rng)) <= ENTRY_BOUND for _ in range(50))
    assert all(0 <= n <= 4 for n in random_arities(rng, 20))


def test_cochain_variants():
    rng = case_rng(0, 0)
    # a complex with free pi1 and nontrivial pi0, so the variants can differ
    while True:
        c = random_complex(rng)
        if c.pi0.group.ngens and 0 in c.pi1.group.factors:
            break
    models = random_models(rng, c)
    assert set(models) == {"strict", "skeletal-zero", "skeletal-normalized", "skeletal-raw"}
    objs = [models["skeletal-raw"].sample_object(rng) for _ in range(10)]
    norm, raw = models["skeletal-normalized"], models["skeletal-raw"]
    assert all(norm.cochain(norm.neutral(), norm.object(X.value.coords)).is_zero() for X in objs)
    assert any(not raw.cochain(raw.neutral(), X).is_zero() for X in objs)
    Z = models["skeletal-zero"]
    assert all(Z.cochain(Z.object(X.value.coords), Z.object(Y.value.coords)).is_zero() for X in objs for Y in objs)


def test_fuzz_failure_carries_replay(monkeypatch):
    def fake_case(seed, index, samples=3):
        rep = Report()
        status = FAIL if index == 2 else "pass"
        rep.add(CheckResult("axioms.hexagon", status, case=0 if status == FAIL else None,
                            counterexample={"X": "[1]"} if status == FAIL else None))
        return f"case {index}", rep

    monkeypatch.setattr(suite, "fuzz_case", fake_case)
    report = suite.fuzz_suite(9, 4)
    rec = report.by_name()["fuzz.axioms.hexagon"]
    assert rec.status == FAIL and rec.case == 2
    assert rec.detail["replay"] == "picardlab fuzz --seed 9 --only 2"
    assert report.by_name()["fuzz.summary"].status == FAIL


def test_fuzz_only_replays_one_case():
    report = suite.fuzz_suite(4, 10, only=7, samples=1)
    assert report.by_name()["fuzz.summary"].detail["cases"] == 1
    assert report.passed
