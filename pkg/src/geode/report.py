"""Verification reports: named exact checks with the first failing monomial."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .series import Monomial, Series


@dataclass(frozen=True)
class Check:
    name: str
    degree: int
    passed: bool
    failing_monomial: Optional[Monomial] = None

    def to_json(self) -> dict:
        fm = self.failing_monomial
        return {
            "name": self.name,
            "degree": self.degree,
            "pass": self.passed,
            "failing_monomial": None if fm is None else {"t": list(fm.t), "y": fm.y},
        }


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __add__(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(self.checks + other.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self) -> list:
        return [c.name for c in self.checks]

    def to_json(self) -> dict:
        return {"checks": [c.to_json() for c in self.checks]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def table(self) -> str:
        rows = []
        width = max((len(c.name) for c in self.checks), default=4)
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            extra = "" if c.failing_monomial is None else f"  at {c.failing_monomial}"
            rows.append(f"{c.name:<{width}}  degree={c.degree}  {status}{extra}")
        return "\n".join(rows)


def zero_check(name: str, residual: Series) -> Check:
    """Pass iff ``residual`` is identically zero in its window."""
    first = residual.first_term()
    return Check(name, residual.context.degree, first is None, None if first is None else first[0])


def equal_check(name: str, lhs: Series, rhs: Series) -> Check:
    return zero_check(name, lhs - rhs)
