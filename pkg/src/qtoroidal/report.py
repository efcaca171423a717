"""Structured outcome of a single relation check."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    id: str
    params: dict = field(default_factory=dict)
    cells: int = 0
    mismatches: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    millis: int = 0
    max_mismatches: int = 50
    _mismatch_count: int = 0

    @property
    def passed(self) -> bool:
        return self._mismatch_count == 0

    @property
    def mismatch_count(self) -> int:
        return self._mismatch_count

    def check(self, location, lhs, rhs) -> bool:
        """Record one cell comparison; keeps at most ``max_mismatches`` entries."""
        self.cells += 1
        if lhs == rhs:
            return True
        self._mismatch_count += 1
        if len(self.mismatches) < self.max_mismatches:
            self.mismatches.append({"location": _loc(location), "lhs": str(lhs), "rhs": str(rhs)})
        return False

    def merge(self, other: "Report") -> "Report":
        self.cells += other.cells
        self._mismatch_count += other._mismatch_count
        room = self.max_mismatches - len(self.mismatches)
        self.mismatches.extend(other.mismatches[: max(room, 0)])
        for k, v in other.notes.items():
            self.notes.setdefault(k, v)
        return self

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "id": self.id,
            "params": self.params,
            "cells": self.cells,
            "mismatches": self.mismatches,
            "mismatch_count": self._mismatch_count,
            "pass": self.passed,
            "millis": self.millis if timing else 0,
        }
        if self.notes:
            d["notes"] = self.notes
        return d

    def summary(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        extra = "" if self.passed else f", {self._mismatch_count} mismatches"
        return f"[{flag}] {self.id} {self.params} ({self.cells} cells{extra})"


def _loc(location):
    if isinstance(location, dict):
        return {k: _loc(v) for k, v in location.items()}
    if isinstance(location, (list, tuple)):
        return [_loc(x) for x in location]
    if isinstance(location, (int, str, bool)) or location is None:
        return location
    return str(location)
