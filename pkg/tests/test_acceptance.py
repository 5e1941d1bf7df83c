"""Acceptance criteria, each under its time limit.

Every criterion prints one ``[PASS]``/``[FAIL]`` line in the pytest terminal
summary; run this file directly (``python tests/test_acceptance.py``) to get
the same lines without pytest.
"""

from __future__ import annotations

import contextlib
import io
import time
from pathlib import Path

from picardlab.algebra import (
    TwoAlgebraMorphism,
    check_hat,
    hat,
    hat_functor,
    reconstruct,
    round_trip_hom,
)
from picardlab.cli import main
from picardlab.complexes import make_complex, trivial_complex
from picardlab.fuzz import (
    COCHAIN_VARIANTS,
    case_rng,
    random_complex,
    random_complex_morphism,
    random_skeletal,
)
from picardlab.picard import (
    PArrow,
    SkeletalModel,
    StrictModel,
    check_picard_axioms,
    check_unitors,
    derive_left_unitor,
    functor_from_complex_morphism,
    identity_functor,
    picard_checks,
)
from picardlab.suite import closed_form_check, confluence_check, power_counts

HERE = Path(__file__).parent
SEED = 20240601
RESULTS: dict = {}


def criterion(number: int, title: str, limit_s: float):
    """Time the wrapped check, record a pass/fail line, and assert both the
    outcome and the time limit."""

    def wrap(fn):
        def test():
            start = time.perf_counter()
            failures = fn()
            elapsed = time.perf_counter() - start
            ok = not failures and elapsed < limit_s
            note = f"{elapsed:.2f}s / limit {limit_s:g}s"
            if failures:
                note += f"; {len(failures)} failure(s): {failures[:3]}"
            RESULTS[number] = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({note})"
            print(RESULTS[number])
            assert not failures, failures
            assert elapsed < limit_s, f"took {elapsed:.2f}s, limit {limit_s}s"

        test.__name__ = fn.__name__
        test.__doc__ = fn.__doc__
        return test

    return wrap


def _failed(report, label):
    return [f"{label}:{r.check}" for r in report.failures()]


@criterion(1, "Picard axioms on 50 random complexes, strict and 3 skeletal cochains", 30)
def test_axiom_suite():
    failures = []
    checks = None
    for i in range(50):
        rng = case_rng(SEED, i, "axioms")
        c = random_complex(rng)
        models = {"strict": StrictModel(c)}
        for variant in COCHAIN_VARIANTS:  # zero, normalized, raw (non-normalized)
            models[f"skeletal-{variant}"] = random_skeletal(rng, c, variant)
        for name, P in models.items():
            report = check_picard_axioms(P, 10, f"{SEED}:{i}")
            checks = checks or {r.check for r in report}
            failures += _failed(report, f"{i}:{name}")
    expected = {"pentagon", "hexagon", "symmetry", "strictness", "unit_diagram_left", "unit_diagram_right",
                "inverse_naturality", "naturality_assoc", "naturality_comm"}
    missing = expected - checks
    return failures + [f"missing check {m}" for m in sorted(missing)]


@criterion(2, "derived unitor equals l; phi = l_e = r_e; l_X . c(X, e) = r_X", 5)
def test_unitor_derivation():
    failures = []
    z4 = make_complex([0, 0], [0], [[4, 0]])
    models = [StrictModel(z4), SkeletalModel(z4, None, {((1,), (2,)): (1,), ((0,), (0,)): (2,)})]
    for i in range(20):
        rng = case_rng(SEED, i, "unitors")
        c = random_complex(rng)
        models += [StrictModel(c), random_skeletal(rng, c, "raw")]
    for k, P in enumerate(models):
        failures += _failed(check_unitors(P, 20, SEED), f"{k}")
        e = P.neutral()
        if not (derive_left_unitor(P, e) == P.phi() == P.unit_left(e) == P.unit_right(e)):
            failures.append(f"{k}:phi")
        trials = picard_checks(P)
        rng = case_rng(SEED, k, "unitor-trials")
        for _ in range(20):
            for name in ("phi_unitors", "comm_exchanges_unitors"):
                if trials[name](rng) is not None:
                    failures.append(f"{k}:{name}")
    return failures


@criterion(3, "confluence of 500+ expressions under two strategies in both models", 30)
def test_confluence():
    failures = []
    for i in range(10):
        rng = case_rng(SEED, i, "confluence")
        c = random_complex(rng)
        for P in (StrictModel(c), random_skeletal(rng, c, COCHAIN_VARIANTS[i % 3])):
            r = confluence_check(P, 50, f"{SEED}:{i}")
            failures += [] if r.ok else [f"{i}:{P.kind}:{r.counterexample}"]
            if isinstance(P, SkeletalModel):
                r = closed_form_check(P, 50, f"{SEED}:{i}")
                failures += [] if r.ok else [f"{i}:oracle:{r.counterexample}"]
    return failures


@criterion(4, "hat: products, compositor naturality and cocycle on 200+ cases", 60)
def test_hat():
    failures = []
    for i in range(4):
        rng = case_rng(SEED, i, "hat")
        c = random_complex(rng)
        for P in (StrictModel(c), random_skeletal(rng, c, "raw")):
            failures += _failed(check_hat(hat(P), 50, f"{SEED}:{i}"), f"{i}:{P.kind}")
    return failures


@criterion(5, "reconstruct(hat(P)) reproduces P on the corpus; strict [0 -> Z] is integer addition", 30)
def test_reconstruction():
    from conftest import corpus_models

    failures = []
    for label, P in corpus_models():
        rec = reconstruct(hat(P), P, 20, SEED)
        failures += _failed(rec.report, label)
    ints = StrictModel(make_complex([], [0], [[]]))
    R = reconstruct(hat(ints), ints, 5, SEED).model
    for x in range(-6, 7):
        for y in range(-6, 7):
            if R.add(ints.object([x]), ints.object([y])) != ints.object([x + y]):
                failures.append(f"add({x},{y})")
    return failures


@criterion(6, "F-hat at arity 1 equals F for 50 random functors; a perturbed fixture is rejected", 10)
def test_hom_round_trip():
    failures = []
    for i in range(50):
        rng = case_rng(SEED, i, "functor")
        c = random_complex(rng)
        m = random_complex_morphism(rng, c)
        src = StrictModel(c) if i % 2 else random_skeletal(rng, c, COCHAIN_VARIANTS[i % 3])
        dst = StrictModel(m.target) if i % 3 == 0 else random_skeletal(rng, m.target, "raw")
        F = functor_from_complex_morphism(m, src, dst)
        if not round_trip_hom(F, hat_functor(F), 20, SEED):
            failures.append(f"{i}")
    # perturbed fixture: shift every filler by a nonzero automorphism
    P = SkeletalModel(make_complex([0], [], []))
    F = identity_functor(P)
    H = hat_functor(F)
    one = P.payloads.element([1])
    bad = TwoAlgebraMorphism(H.source, H.target, H.component,
                             lambda cell, X: tuple(PArrow(g.src, g.dst, g.payload + one) for g in H.filler(cell, X)))
    if round_trip_hom(F, bad, 5, SEED):
        failures.append("perturbed fixture accepted")
    return failures


@criterion(7, "trivial stack: one object and one arrow at every arity up to 4", 1)
def test_trivial_stack():
    failures = []
    c = trivial_complex()
    for P in (StrictModel(c), SkeletalModel(c)):
        counts = power_counts(P)
        want = {str(n): {"arrows": 1, "objects": 1} for n in range(5)}
        if counts is None or counts.detail != want:
            failures.append(f"{P.kind}:{counts and counts.detail}")
    return failures


GOLDEN_RUNS = [
    ("check_trivial.jsonl", ["check", "trivial.json", "--cases", "5"], 0),
    ("check_doubling.jsonl", ["check", "doubling.json", "--cases", "5", "--seed", "11"], 0),
    ("check_z4_skeletal.jsonl", ["check", "z4_skeletal.json", "--cases", "5"], 0),
    ("check_flip_comm.jsonl", ["check", "flip_comm.json", "--cases", "10"], 1),
    ("fuzz_seed1.jsonl", ["fuzz", "--seed", "1", "--cases", "3"], 0),
]
EXIT_RUNS = [
    (["check", "bad_shape.json"], 2),
    (["check", "bad_json.json"], 2),
    (["apply", "integers.json", "--matrix", "1,1,1", "--objects", "3;5"], 2),
    (["fuzz", "--cases", "0"], 0),
]


def _run_cli(argv):
    argv = [str(HERE / "fixtures" / a) if a.endswith(".json") else a for a in argv]
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


@criterion(8, "CLI golden reports are byte-identical; exit codes 0/1/2 hold", 10)
def test_cli_determinism():
    failures = []
    for name, argv, code in GOLDEN_RUNS:
        got, out, err = _run_cli(argv)
        if got != code:
            failures.append(f"{name}: exit {got} != {code}")
        if code == 1 and "replay: picardlab check" not in err:
            failures.append(f"{name}: no replay line")
        if out != (HERE / "golden" / name).read_text():
            failures.append(f"{name}: report differs from golden")
    for argv, code in EXIT_RUNS:
        got, out, err = _run_cli(argv)
        if got != code:
            failures.append(f"{' '.join(argv)}: exit {got} != {code}")
        if code == 2 and not err.startswith("error:"):
            failures.append(f"{' '.join(argv)}: no diagnostic")
    return failures


if __name__ == "__main__":
    import sys

    sys.path.insert(0, str(HERE))
    status = 0
    for test in (test_axiom_suite, test_unitor_derivation, test_confluence, test_hat, test_reconstruction,
                 test_hom_round_trip, test_trivial_stack, test_cli_determinism):
        try:
            test()
        except AssertionError:
            status = 1
    sys.exit(status)
