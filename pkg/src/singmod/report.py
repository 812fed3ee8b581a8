"""Outcome of one identity check, with a lossless JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def to_jsonable(x: Any) -> Any:
    """Fractions become ``"num/den"`` strings; floats and mpf become floats."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    try:
        return float(x)
    except (TypeError, ValueError):
        return str(x)


@dataclass
class IdentityReport:
    identity: str
    params: dict
    residuals: list = field(default_factory=list)  # [(instance, residual), ...]
    passed: bool = True
    runtime: float = 0.0
    tolerance: float | None = None
    note: str = ""

    def add(self, instance, residual, ok: bool | None = None):
        """Record one instance; exact residuals pass iff zero."""
        if ok is None:
            ok = residual == 0
        self.residuals.append((instance, residual))
        if not ok:
            if self.passed:
                self.note = self.note or f"first failure at {instance}: residual {residual}"
            self.passed = False

    @property
    def failures(self) -> list:
        if self.tolerance is None:
            return [(i, r) for i, r in self.residuals if r != 0]
        return [(i, r) for i, r in self.residuals if abs(r) > self.tolerance]

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.identity} {self.params} ({len(self.residuals)} instances, {self.runtime:.2f}s)"

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "params": to_jsonable(self.params),
            "passed": self.passed,
            "runtime": round(self.runtime, 3),
            "tolerance": self.tolerance,
            "note": self.note,
            "residuals": [[to_jsonable(i), to_jsonable(r)] for i, r in self.residuals],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)
