"""Structured pass/fail verdicts with exact violation witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .core import format_array, is_zero
from .fields import Field

MAX_WITNESSES = 10


@dataclass(frozen=True)
class Witness:
    location: tuple
    residual: str


@dataclass
class CheckResult:
    identity: str
    passed: bool
    checked: int
    violation_count: int
    witnesses: list[Witness] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "passed": self.passed,
            "checked": self.checked,
            "violations": self.violation_count,
            "witnesses": [{"at": list(w.location), "residual": w.residual} for w in self.witnesses],
        }


@dataclass
class Report:
    subject: str
    results: list[CheckResult]
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def result(self, identity: str) -> CheckResult:
        for r in self.results:
            if r.identity == identity:
                return r
        raise KeyError(identity)

    def identities(self) -> list[str]:
        return [r.identity for r in self.results]

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [r.to_dict() for r in self.results],
            "notes": list(self.notes),
        }

    def render(self) -> str:
        lines = [f"{'PASS' if self.passed else 'FAIL'}  {self.subject}"]
        for r in self.results:
            mark = "ok  " if r.passed else "FAIL"
            lines.append(f"  [{mark}] {r.identity}  ({r.checked} instances)")
            for w in r.witnesses:
                lines.append(f"         at {w.location}: residual {w.residual}")
            if r.violation_count > len(r.witnesses):
                lines.append(f"         ... {r.violation_count - len(r.witnesses)} more violations")
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)


class ReportBuilder:
    """Accumulates per-identity verdicts; keeps at most ``max_witnesses``
    violation witnesses per identity, with exact residuals."""

    def __init__(self, field: Field, subject: str, max_witnesses: int = MAX_WITNESSES):
        self.field = field
        self.subject = subject
        self.max_witnesses = max_witnesses
        self._order: list[str] = []
        self._checked: dict[str, int] = {}
        self._violations: dict[str, int] = {}
        self._witnesses: dict[str, list[Witness]] = {}
        self._notes: list[str] = []

    def declare(self, identity: str) -> None:
        if identity not in self._checked:
            self._order.append(identity)
            self._checked[identity] = 0
            self._violations[identity] = 0
            self._witnesses[identity] = []

    def check(self, identity: str, location: tuple, residual) -> bool:
        """Record one instance; passes iff the residual is exactly zero.
        ``residual`` is an exact array or scalar."""
        self.declare(identity)
        self._checked[identity] += 1
        if isinstance(residual, np.ndarray):
            ok = is_zero(residual)
            res_str = None if ok else format_array(self.field, residual)
        else:
            ok = not bool(residual)
            res_str = None if ok else self.field.format(residual)
        if not ok:
            self._violations[identity] += 1
            if len(self._witnesses[identity]) < self.max_witnesses:
                self._witnesses[identity].append(Witness(location, res_str))
        return ok

    def flag(self, identity: str, passed: bool, location: tuple = (), detail: str = "") -> bool:
        """Record a boolean condition (e.g. nondegeneracy)."""
        self.declare(identity)
        self._checked[identity] += 1
        if not passed:
            self._violations[identity] += 1
            if len(self._witnesses[identity]) < self.max_witnesses:
                self._witnesses[identity].append(Witness(location, detail or "condition failed"))
        return passed

    def merge(self, other: Report, prefix: str = "") -> None:
        for r in other.results:
            name = prefix + r.identity
            self.declare(name)
            self._checked[name] += r.checked
            self._violations[name] += r.violation_count
            room = self.max_witnesses - len(self._witnesses[name])
            self._witnesses[name].extend(r.witnesses[:room])

    def note(self, text: str) -> None:
        self._notes.append(text)

    def build(self) -> Report:
        results = [
            CheckResult(
                identity=name,
                passed=self._violations[name] == 0,
                checked=self._checked[name],
                violation_count=self._violations[name],
                witnesses=self._witnesses[name],
            )
            for name in self._order
        ]
        return Report(self.subject, results, self._notes)


def combined(subject: str, reports: Iterable[Report]) -> Report:
    results: list[CheckResult] = []
    notes: list[str] = []
    for rep in reports:
        results.extend(rep.results)
        notes.extend(rep.notes)
    return Report(subject, results, notes)
