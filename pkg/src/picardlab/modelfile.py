"""JSON model files: a complex plus optional skeletal configuration.

    {
      "A": [0, 0], "B": [0], "d": [[4, 0]],
      "skeletal": {"section": "auto", "g": [[[1], [2], [1]]]},
      "seed": 7
    }

``A`` and ``B`` are invariant-factor lists (0 stands for Z), ``d`` has one
row per factor of B (``[]`` means the zero map). ``section`` is ``"auto"`` or a list of
``[pi0_coords, b_coords]`` pairs; ``g`` is a sparse list of
``[x_coords, y_coords, pi1_coords]`` triples (unlisted pairs are 0).
Errors carry the offending field and, where it can be found, a line number.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from .complexes import TwoTermComplex, make_complex
from .zlin import FgAbelianGroup

KNOWN_FIELDS = {"A", "B", "d", "skeletal", "seed", "mutation", "name"}
MUTATIONS = {"flip-comm"}
MAX_SEED = 2**64 - 1


class ModelFileError(ValueError):
    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None,
                 source: str = "<input>"):
        self.message, self.field, self.line, self.source = message, field, line, source
        super().__init__(self.diagnostic())

    def diagnostic(self) -> str:
        where = self.source + (f":{self.line}" if self.line else "")
        what = f"field '{self.field}': " if self.field else ""
        return f"{where}: {what}{self.message}"


@dataclass(frozen=True)
class ModelFile:
    complex: TwoTermComplex
    skeletal: Optional[dict] = None
    seed: Optional[int] = None
    mutation: Optional[str] = None
    name: Optional[str] = None


def _line_of(text: str, field: str) -> Optional[int]:
    key = field.split(".")[0].split("[")[0]
    m = re.search(r'"' + re.escape(key) + r'"\s*:', text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _int_list(value: Any, field: str, err) -> list:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise err("expected a list of integers", field)
    return value


def parse_model(text: str, source: str = "<input>") -> ModelFile:
    def err(message, field=None):
        return ModelFileError(message, field, _line_of(text, field) if field else None, source)

    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"invalid JSON: {exc.msg} (column {exc.colno})", None, exc.lineno, source) from None
    if not isinstance(data, dict):
        raise err("top level must be a JSON object")
    unknown = sorted(set(data) - KNOWN_FIELDS)
    if unknown:
        raise err(f"unknown field (allowed: {', '.join(sorted(KNOWN_FIELDS))})", unknown[0])
    for key in ("A", "B", "d"):
        if key not in data:
            raise err("missing required field", key)

    groups = {}
    for key in ("A", "B"):
        factors = _int_list(data[key], key, err)
        try:
            groups[key] = FgAbelianGroup(tuple(factors))
        except ValueError as exc:
            raise err(str(exc), key) from None

    d = data["d"]
    if not isinstance(d, list):
        raise err("expected a list of rows", "d")
    A, B = groups["A"], groups["B"]
    # an empty d is shorthand for the zero map
    if d:
        if len(d) != B.ngens:
            raise err(f"expected {B.ngens} rows (one per factor of B), got {len(d)}", "d")
        for i, row in enumerate(d):
            _int_list(row, f"d[{i}]", err)
            if len(row) != A.ngens:
                raise err(f"expected {A.ngens} entries (one per factor of A), got {len(row)}", f"d[{i}]")
    try:
        c = make_complex(A, B, d)
    except ValueError as exc:
        raise err(str(exc), "d") from None

    skeletal = None
    if "skeletal" in data:
        skeletal = _parse_skeletal(data["skeletal"], c, err)

    seed = data.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed <= MAX_SEED):
        raise err("seed must be an integer in [0, 2^64)", "seed")
    mutation = data.get("mutation")
    if mutation is not None and mutation not in MUTATIONS:
        raise err(f"unknown mutation (known: {', '.join(sorted(MUTATIONS))})", "mutation")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise err("expected a string", "name")
    return ModelFile(c, skeletal, seed, mutation, name)


def _coords(value, group: FgAbelianGroup, field: str, err) -> tuple:
    _int_list(value, field, err)
    if len(value) != group.ngens:
        raise err(f"expected {group.ngens} coordinates for {group}, got {len(value)}", field)
    return tuple(value)


def _parse_skeletal(block, c: TwoTermComplex, err) -> dict:
    if not isinstance(block, dict):
        raise err("expected an object with 'section' and 'g'", "skeletal")
    unknown = sorted(set(block) - {"section", "g"})
    if unknown:
        raise err("unknown field", f"skeletal.{unknown[0]}")
    pi0, pi1 = c.pi0, c.pi1

    section = block.get("section", "auto")
    if section == "auto":
        section = None
    elif isinstance(section, list):
        pairs = []
        for i, entry in enumerate(section):
            field = f"skeletal.section[{i}]"
            if not isinstance(entry, list) or len(entry) != 2:
                raise err("expected [pi0_coords, b_coords]", field)
            x = pi0.group.element(_coords(entry[0], pi0.group, field, err))
            b = c.B.element(_coords(entry[1], c.B, field, err))
            if pi0.projection(b) != x:
                raise err(f"lift {list(b.coords)} does not lie over {list(x.coords)}", field)
            if x.is_zero() and not b.is_zero():
                raise err("the section must send 0 to 0", field)
            pairs.append((x.coords, b.coords))
        section = pairs
    else:
        raise err("expected \"auto\" or a list of lifts", "skeletal.section")

    g = block.get("g", [])
    if not isinstance(g, list):
        raise err("expected a list of [x, y, value] triples", "skeletal.g")
    triples = []
    for i, entry in enumerate(g):
        field = f"skeletal.g[{i}]"
        if not isinstance(entry, list) or len(entry) != 3:
            raise err("expected [x_coords, y_coords, pi1_coords]", field)
        x = _coords(entry[0], pi0.group, field, err)
        y = _coords(entry[1], pi0.group, field, err)
        v = _coords(entry[2], pi1.group, field, err)
        triples.append((x, y, v))
    return {"section": section, "g": triples or None}


def load_model(path) -> ModelFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ModelFileError(f"cannot read file: {exc.strerror}", source=str(path)) from None
    return parse_model(text, str(path))
