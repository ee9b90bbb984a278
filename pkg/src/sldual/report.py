"""Uniform pass/fail reports for the verification routines and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    witness: object = None
    partial: bool = False

    def to_dict(self) -> dict:
        d: dict = {"name": self.name, "pass": self.passed}
        if not self.passed:
            d["witness"] = _jsonable(self.witness)
        elif self.witness is not None:
            d["witness"] = _jsonable(self.witness)
        if self.partial:
            d["partial"] = True
        return d


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    payload: dict = field(default_factory=dict)

    def add(self, name: str, passed: bool, witness=None, partial: bool = False) -> bool:
        self.checks.append(Check(name, bool(passed), None if passed else witness, partial))
        return bool(passed)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": [c.to_dict() for c in self.checks],
            "payload": _jsonable(self.payload),
        }


def _jsonable(obj):
    """Coerce witnesses (tuples, masks, nested structures) to JSON-safe data."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = list(obj)
        if isinstance(obj, (set, frozenset)):
            items = sorted(items, key=repr)
        return [_jsonable(v) for v in items]
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    return repr(obj)
