"""Pass/fail check records and verification reports."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None
    note: Optional[str] = None
    duration: float = 0.0

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    scenario: str
    checks: list[Check] = field(default_factory=list)
    _clock: float = field(default_factory=time.perf_counter, repr=False, compare=False)

    def add(self, name: str, passed: bool, witness: Any = None, note: Optional[str] = None) -> Check:
        if not passed and witness is None:
            raise ValueError(f"failing check {name!r} needs a witness")
        now = time.perf_counter()
        check = Check(name, bool(passed), witness, note, now - self._clock)
        self._clock = now
        self.checks.append(check)
        return check

    def reset_clock(self) -> None:
        self._clock = time.perf_counter()

    def merge(self, other: VerificationReport, prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness, c.note, c.duration))

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def timings(self) -> dict[str, float]:
        return {c.name: round(c.duration, 6) for c in self.checks}

    def render(self) -> str:
        lines = [f"== {self.scenario} =="]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            line = f"[{status}] {c.name}"
            if c.witness is not None:
                line += f"  -- {c.witness}"
            lines.append(line)
            if c.note:
                lines.append(f"       note: {c.note}")
        lines.append(f"overall: {'PASS' if self.overall else 'FAIL'}")
        return "\n".join(lines)
