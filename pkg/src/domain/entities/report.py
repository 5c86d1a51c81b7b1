"""Check results and the aggregated verification report."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    DOMAIN_SKIP = "domain-skip"


CONVENTIONS = {
    "riemann": "R^a_bcd = d_c Gamma^a_db - d_d Gamma^a_cb + Gamma^a_ce Gamma^e_db - Gamma^a_de Gamma^e_cb",
    "ricci": "R_bd = R^a_bad",
    "schouten": "P = (Ric - R/(2(n-1)) g)/(n-2)",
    "weyl": "C = Riem - P (Kulkarni-Nomizu) g",
    "metric": "g = 2 theta1 theta5 - 2 theta2 theta4 + (4/3) theta3 theta3",
    "symmetric_product": "a b = (a (x) b + b (x) a)/2",
    "points": "rationals on a grid in [1/3, 3], guard-rejected and redrawn",
}


@dataclass
class CheckResult:
    check_id: str
    instance_id: str
    section: str
    verdict: Verdict
    parameters: dict[str, str]
    payload: dict[str, Any] = field(default_factory=dict)
    elapsed: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS

    def to_dict(self, timings: bool = False) -> dict[str, Any]:
        data: dict[str, Any] = {
            "id": self.instance_id,
            "check": self.check_id,
            "section": self.section,
            "verdict": self.verdict.value,
            "parameters": self.parameters,
            "payload": self.payload,
        }
        if timings and self.elapsed is not None:
            data["elapsed_seconds"] = round(self.elapsed, 6)
        return data


@dataclass
class Report:
    engine_version: str
    seed: int
    results: list[CheckResult] = field(default_factory=list)
    conventions: dict[str, str] = field(default_factory=lambda: dict(CONVENTIONS))

    @property
    def failed(self) -> list[CheckResult]:
        return [r for r in self.results if r.verdict == Verdict.FAIL]

    @property
    def all_passed(self) -> bool:
        return all(r.verdict == Verdict.PASS for r in self.results)

    def counts(self) -> dict[str, int]:
        counts = {v.value: 0 for v in Verdict}
        for r in self.results:
            counts[r.verdict.value] += 1
        return counts
