import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from picardlab.modelfile import load_model
from picardlab.suite import build_models

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

# model files whose suites must pass
CORPUS = ["trivial.json", "integers.json", "doubling.json", "identity_z.json",
          "z4_skeletal.json", "torsion.json", "raw_cochain.json"]

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def corpus_models():
    """(label, model) for every corpus file, strict and skeletal."""
    out = []
    for name in CORPUS:
        mf = load_model(FIXTURES / name)
        sk = mf.skeletal or {"section": None, "g": None}
        for kind, P in build_models(mf.complex, sk).items():
            out.append((f"{name}:{kind}", P))
    return out


@pytest.fixture(scope="session")
def corpus():
    return corpus_models()


@pytest.fixture
def fixture_path():
    return lambda name: str(FIXTURES / name)


def read_json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
