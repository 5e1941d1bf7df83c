import json

import pytest

from picardlab.modelfile import ModelFileError, load_model, parse_model
from picardlab.suite import build_models

from conftest import CORPUS, FIXTURES


@pytest.mark.parametrize("name", CORPUS + ["flip_comm.json"])
def test_corpus_files_parse(name):
    mf = load_model(FIXTURES / name)
    models = build_models(mf.complex, mf.skeletal, mf.mutation)
    assert "strict" in models
    assert ("skeletal" in models) == (mf.skeletal is not None)


def test_explicit_section_and_cochain():
    mf = load_model(FIXTURES / "raw_cochain.json")
    P = build_models(mf.complex, mf.skeletal)["skeletal"]
    assert P.section(P.object([1])).value.coords == (7,)
    assert P.cochain(P.object([0]), P.object([0])).coords == (2,)


def diagnose(text):
    with pytest.raises(ModelFileError) as info:
        parse_model(text, "m.json")
    return info.value


@pytest.mark.parametrize(
    "text, field, line",
    [
        ('{\n "A": [0],\n "B": [0, 0],\n "d": [[1]]\n}', "d", 4),
        ('{"A": [0], "B": [0], "d": [[1, 2]]}', "d[0]", 1),
        ('{"A": [1], "B": [0], "d": [[1]]}', "A", 1),
        ('{"A": [2], "B": [3], "d": [[1]]}', "d", 1),
        ('{"B": [0], "d": [[1]]}', "A", None),
        ('{"A": [], "B": [], "d": [], "colour": 1}', "colour", 1),
        ('{"A": [], "B": [], "d": [], "seed": -1}', "seed", 1),
        ('{"A": [], "B": [], "d": [], "mutation": "x"}', "mutation", 1),
        ('{"A": [0,0], "B": [0], "d": [[4,0]],\n "skeletal": {"g": [[[1], [2]]]}}', "skeletal.g[0]", 2),
        ('{"A": [0,0], "B": [0], "d": [[4,0]], "skeletal": {"section": [[[1], [2]]]}}', "skeletal.section[0]", 1),
        ('{"A": [0,0], "B": [0], "d": [[4,0]], "skeletal": {"section": [[[0], [4]]]}}', "skeletal.section[0]", 1),
        ('{"A": [0,0], "B": [0], "d": [[4,0]], "skeletal": {"section": "manual"}}', "skeletal.section", 1),
    ],
)
def test_schema_errors_name_field_and_line(text, field, line):
    err = diagnose(text)
    assert err.field == field
    assert err.line == line
    assert field in err.diagnostic() and err.diagnostic().startswith("m.json")


def test_json_syntax_error_has_line():
    err = diagnose('{\n  "A": [0],\n  "B": [0]\n  "d": [[1]]\n}')
    assert err.line == 4 and err.field is None


def test_missing_file():
    with pytest.raises(ModelFileError):
        load_model(FIXTURES / "does_not_exist.json")


def test_empty_d_allowed_for_zero_map():
    mf = parse_model(json.dumps({"A": [0], "B": [0], "d": []}))
    assert mf.complex.d.matrix.is_zero()
