"""Bundled invariant suites shared by the CLI and the acceptance tests."""

from __future__ import annotations

import hashlib
import time
from typing import Optional

from .algebra import (
    check_algebra_morphism,
    check_hat,
    check_modification,
    hat,
    hat_functor,
    hat_modification,
    reconstruct,
    round_trip_report,
)
from .complexes import TwoTermComplex, identity_morphism, is_quasi_iso
from .expr import eval_expr, to_literal
from .fuzz import COCHAIN_VARIANTS, case_rng, random_complex, random_complex_morphism, random_expr, random_hom, random_skeletal
from .picard import (
    FlippedComm,
    PicardGroupoid,
    SkeletalModel,
    StrictModel,
    _pick_object,
    _rng,
    check_additive_functor,
    check_additive_transformation,
    check_picard_axioms,
    check_unitors,
    functor_from_complex_morphism,
    homotopy_transformation,
    identity_functor,
    run_check,
)
from .report import FAIL, PASS, CheckResult, Report
from .rewrite import INNERMOST, OUTERMOST, closed_form_witness, normalize_with_witness

MAX_POWER = 4


def _ms(start: float) -> float:
    return round((time.perf_counter() - start) * 1000, 3)


def confluence_check(P: PicardGroupoid, cases: int, seed: int, name: str = "coherence.confluence") -> CheckResult:
    """Both strategies give the same normal form and the same composite
    arrow, whose endpoints are the evaluated expressions."""
    rng = _rng(seed, name)

    def trial(i):
        n = rng.randint(1, 4)
        e = random_expr(rng, 5, n)
        env = [_pick_object(P, rng) for _ in range(n)]
        a = normalize_with_witness(e, P, env, INNERMOST)
        b = normalize_with_witness(e, P, env, OUTERMOST)
        if a.canonical != b.canonical or a.arrow != b.arrow:
            return {"expr": to_literal(e), "env": env, "innermost": a.arrow, "outermost": b.arrow}
        if (a.arrow.src, a.arrow.dst) != (eval_expr(e, env, P), eval_expr(a.canonical, env, P)):
            return {"expr": to_literal(e), "env": env, "arrow": a.arrow, "issue": "endpoints"}
        if isinstance(P, StrictModel) and not a.arrow.payload.is_zero():
            return {"expr": to_literal(e), "env": env, "arrow": a.arrow, "issue": "strict payload"}
        return None

    return run_check(name, cases, trial)


def closed_form_check(P: SkeletalModel, cases: int, seed: int, name: str = "coherence.closed_form") -> CheckResult:
    """Witness arrows agree with the transport formula computed without rewriting."""
    rng = _rng(seed, name)

    def trial(i):
        n = rng.randint(1, 4)
        e = random_expr(rng, 5, n)
        env = [_pick_object(P, rng) for _ in range(n)]
        got = normalize_with_witness(e, P, env).arrow
        want = closed_form_witness(e, P, env)
        return None if got == want else {"expr": to_literal(e), "env": env, "engine": got, "oracle": want}

    return run_check(name, cases, trial)


def power_counts(P: PicardGroupoid, name: str = "hat.power_counts") -> Optional[CheckResult]:
    """Object and arrow counts of ``P^n`` for n <= 4, when they are finite."""
    start = time.perf_counter()
    A = hat(P)
    counts = {}
    for n in range(MAX_POWER + 1):
        Pn = A.object(n)
        o, a = Pn.object_count(), Pn.arrow_count()
        if o is None or a is None:
            return None
        counts[str(n)] = {"arrows": a, "objects": o}
    return CheckResult(name, PASS, detail=counts, timing_ms=_ms(start))


def model_suite(P: PicardGroupoid, cases: int, seed: int) -> Report:
    report = Report()
    report.extend(check_picard_axioms(P, cases, seed), prefix="axioms.")
    report.extend(check_unitors(P, cases, seed), prefix="unitors.")
    report.add(confluence_check(P, cases, seed))
    if isinstance(P, SkeletalModel):
        report.add(closed_form_check(P, cases, seed))
    A = hat(P)
    report.extend(check_hat(A, cases, seed))
    rec = reconstruct(A, P, cases, seed)
    report.extend(rec.report)
    F = identity_functor(P)
    report.extend(check_algebra_morphism(hat_functor(F, A, A), cases, seed))
    report.extend(round_trip_report(F, hat_functor(F, A, A), cases, seed))
    counts = power_counts(P)
    if counts is not None:
        report.add(counts)
    return report


def equivalence_suite(P: SkeletalModel, cases: int, seed: int) -> Report:
    """The section and projection functors between the skeletal and strict
    models are additive, and the underlying complex map is a quasi-iso."""
    report = Report()
    report.extend(check_additive_functor(P.to_strict(), cases, seed), prefix="to_strict.")
    report.extend(check_additive_functor(P.from_strict(), cases, seed), prefix="from_strict.")
    start = time.perf_counter()
    cert = is_quasi_iso(identity_morphism(P.complex))
    report.add(CheckResult("quasi_iso", PASS if cert else FAIL,
                           detail={"pi0": str(cert.on_pi0.matrix), "pi1": str(cert.on_pi1.matrix)},
                           timing_ms=_ms(start)))
    return report


def functor_suite(F, cases: int, seed: int) -> Report:
    report = Report()
    report.extend(check_additive_functor(F, cases, seed), prefix="functor.")
    H = hat_functor(F)
    report.extend(check_algebra_morphism(H, cases, seed))
    report.extend(round_trip_report(F, H, cases, seed))
    return report


def transformation_suite(u, cases: int, seed: int) -> Report:
    report = Report()
    report.extend(check_additive_transformation(u, cases, seed), prefix="transformation.")
    report.extend(check_modification(hat_modification(u), cases, seed))
    return report


def build_models(c: TwoTermComplex, skeletal: Optional[dict] = None, mutation: Optional[str] = None) -> dict:
    """Named models for a complex: always ``strict``, plus ``skeletal`` when configured."""
    models = {"strict": StrictModel(c)}
    if skeletal is not None:
        models["skeletal"] = SkeletalModel(c, skeletal.get("section"), skeletal.get("g"))
    if mutation == "flip-comm":
        models = {k: FlippedComm(v) for k, v in models.items()}
    elif mutation is not None:
        raise ValueError(f"unknown mutation {mutation!r}")
    return models


def check_suite(models: dict, cases: int, seed: int) -> Report:
    report = Report()
    for name, P in sorted(models.items()):
        report.extend(model_suite(P, cases, seed), prefix=f"{name}.")
        if isinstance(P, SkeletalModel):
            report.extend(equivalence_suite(P, cases, seed), prefix=f"{name}.equivalence.")
    return report


# -- fuzzing ------------------------------------------------------------------

FUZZ_SAMPLES = 3


def fuzz_case(seed: int, index: int, samples: int = FUZZ_SAMPLES) -> tuple:
    """Run every suite on one generated case. Returns (description, Report)."""
    rng = case_rng(seed, index)
    c = random_complex(rng)
    variant = COCHAIN_VARIANTS[index % len(COCHAIN_VARIANTS)]
    skel = random_skeletal(rng, c, variant)
    strict = StrictModel(c)
    m = random_complex_morphism(rng, c)
    target = random_skeletal(rng, m.target, COCHAIN_VARIANTS[(index + 1) % len(COCHAIN_VARIANTS)])
    h = random_hom(rng, c.B, m.target.A)
    sub_seed = f"{seed}:{index}"

    report = Report()
    report.extend(model_suite(strict, samples, sub_seed), prefix="strict.")
    report.extend(model_suite(skel, samples, sub_seed), prefix="skeletal.")
    report.extend(equivalence_suite(skel, samples, sub_seed), prefix="skeletal.equivalence.")
    for src_name, src in (("strict", strict), ("skeletal", skel)):
        F = functor_from_complex_morphism(m, src, target)
        report.extend(functor_suite(F, samples, sub_seed), prefix=f"functor.{src_name}.")
        u = homotopy_transformation(m, h, src, target)
        report.extend(transformation_suite(u, samples, sub_seed), prefix=f"homotopy.{src_name}.")
    description = f"{c} | {variant} | {m.target}"
    return description, report


def fuzz_suite(seed: int, cases: int, only: Optional[int] = None, samples: int = FUZZ_SAMPLES,
               jobs: int = 1, replay: str = "picardlab fuzz") -> Report:
    """One aggregated record per check over all cases; failures carry the
    first failing case and a replay command. A trailing summary record
    fingerprints the generated cases."""
    indices = [only] if only is not None else list(range(cases))
    if not indices:
        return Report()
    start = time.perf_counter()
    if jobs > 1 and len(indices) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(fuzz_case, [seed] * len(indices), indices, [samples] * len(indices)))
    else:
        results = [fuzz_case(seed, i, samples) for i in indices]

    first: dict = {}
    spent: dict = {}
    digest = hashlib.sha256()
    for i, (description, rep) in zip(indices, results):
        digest.update(f"{i}:{description}\n".encode())
        for r in rep:
            spent[r.check] = spent.get(r.check, 0.0) + (r.timing_ms or 0.0)
            if r.check not in first or (first[r.check].ok and not r.ok):
                first[r.check] = CheckResult(r.check, r.status, None if r.ok else i, r.counterexample,
                                             r.detail if r.ok else {"case": description,
                                                                    "replay": f"{replay} --seed {seed} --only {i}"},
                                             r.timing_ms)
    report = Report()
    for name in sorted(first):
        r = first[name]
        report.add(CheckResult(f"fuzz.{name}", r.status, r.case, r.counterexample, r.detail,
                               round(spent[name], 3)))
    report.add(CheckResult("fuzz.summary", PASS if all(r.ok for r in first.values()) else FAIL,
                           detail={"cases": len(indices), "digest": digest.hexdigest()[:16], "seed": seed},
                           timing_ms=_ms(start)))
    return report
