"""Check records and reports, serialized as JSON lines with sorted keys."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

PASS, FAIL, ERROR = "pass", "fail", "error"


@dataclass(frozen=True)
class CheckResult:
    check: str
    status: str
    case: Optional[int] = None
    counterexample: Any = None
    detail: Any = None
    timing_ms: Optional[float] = None

    def to_dict(self, timing: bool = False) -> dict:
        out = {"check": self.check, "status": self.status}
        keys = ("case", "counterexample", "detail") + (("timing_ms",) if timing else ())
        for key in keys:
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out

    @property
    def ok(self) -> bool:
        return self.status == PASS


@dataclass
class Report:
    results: list = field(default_factory=list)

    def add(self, result: CheckResult) -> None:
        self.results.append(result)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for r in other.results:
            self.results.append(
                CheckResult(
                    prefix + r.check, r.status, r.case, r.counterexample, r.detail, r.timing_ms
                )
            )

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> list:
        return [r for r in self.results if not r.ok]

    def by_name(self) -> dict:
        return {r.check: r for r in self.results}

    def sorted(self) -> list:
        return sorted(self.results, key=lambda r: (r.check, -1 if r.case is None else r.case))

    def to_jsonl(self, timing: bool = False) -> str:
        """One JSON object per line, sorted; timings (which vary between
        runs) are left out unless asked for."""
        return "".join(
            json.dumps(r.to_dict(timing), sort_keys=True, default=str) + "\n" for r in self.sorted()
        )

    def __iter__(self):
        return iter(self.results)

    def __len__(self):
        return len(self.results)
