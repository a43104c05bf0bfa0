"""Verification reports with JSON and flat CSV export."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

MODES = ("exhaustive", "constructed", "sampled", "sub-threshold")
RELATIONS = ("<", "<=", "==", "~=", ">=", ">", "iff")


def _plain(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    if hasattr(x, "item"):  # numpy scalars
        return x.item()
    return x


@dataclass
class Check:
    """One recorded comparison ``lhs relation rhs``.

    ``asserted`` is False for informational checks (for instance below a
    hypothesis floor); those never fail a report.
    """

    name: str
    lhs: Any
    rhs: Any
    relation: str
    passed: bool
    asserted: bool = True
    tol: float | None = None

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        self.passed = bool(self.passed)

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "lhs": _plain(self.lhs),
            "rhs": _plain(self.rhs),
            "relation": self.relation,
            "pass": self.passed,
            "asserted": self.asserted,
        }
        if self.tol is not None:
            d["tol"] = self.tol
        return d


def compare(name: str, lhs, rhs, relation: str, tol: float = 0.0, asserted: bool = True) -> Check:
    """Build a :class:`Check` by evaluating ``relation`` with slack ``tol``."""
    if relation == "<":
        ok = lhs < rhs - tol
    elif relation == "<=":
        ok = lhs <= rhs + tol
    elif relation == ">":
        ok = lhs > rhs + tol
    elif relation == ">=":
        ok = lhs >= rhs - tol
    elif relation == "~=":
        ok = abs(lhs - rhs) <= tol
    elif relation == "==":
        ok = lhs == rhs
    elif relation == "iff":
        ok = bool(lhs) == bool(rhs)
    else:
        raise ValueError(f"unknown relation {relation!r}")
    return Check(name, lhs, rhs, relation, ok, asserted, tol if tol else None)


@dataclass
class VerificationReport:
    theorem: str
    params: dict
    mode: str
    checks: list[Check] = field(default_factory=list)
    witnesses: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.asserted)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.asserted and not c.passed]

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "params": {k: _plain(v) for k, v in self.params.items()},
            "mode": self.mode,
            "pass": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "witnesses": list(self.witnesses),
            "notes": list(self.notes),
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def to_csv(self) -> str:
        return reports_to_csv([self])

    def summary(self) -> str:
        n_ok = sum(c.passed for c in self.checks if c.asserted)
        n_as = sum(c.asserted for c in self.checks)
        status = "PASS" if self.passed else "FAIL"
        return f"{self.theorem} [{self.mode}] {status}: {n_ok}/{n_as} asserted checks, {len(self.checks) - n_as} informational"


CSV_FIELDS = ["theorem", "mode", "name", "lhs", "relation", "rhs", "pass", "asserted"]


def reports_to_csv(reports: list[VerificationReport]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        for c in r.checks:
            d = c.to_dict()
            w.writerow({"theorem": r.theorem, "mode": r.mode, **{k: d[k] for k in CSV_FIELDS[2:]}})
    return buf.getvalue()
