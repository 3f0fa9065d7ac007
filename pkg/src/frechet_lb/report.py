"""Verification records shared by the property checkers and the campaign harness."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction


def jsonable(x):
    """Convert Fractions, tuples, numpy scalars and dataclasses to plain JSON data."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool) or x is None or isinstance(x, (str, int)):
        return x
    if isinstance(x, float):
        return float(repr(x)) if x == x else "nan"
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "item"):
        return jsonable(x.item())
    if hasattr(x, "__dataclass_fields__"):
        return jsonable(asdict(x))
    return str(x)


@dataclass
class CheckRecord:
    name: str
    claim: str
    passed: bool
    witness: dict = field(default_factory=dict)


@dataclass
class VerificationReport:
    campaign: str
    records: list = field(default_factory=list)
    seed: int | None = None
    config: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def add(self, name: str, claim: str, passed: bool, **witness) -> CheckRecord:
        rec = CheckRecord(name, claim, bool(passed), witness)
        self.records.append(rec)
        return rec

    def note(self, name: str, claim: str, holds: bool, **witness) -> CheckRecord:
        """Informational record; never counted as a failure."""
        rec = CheckRecord(name, claim, bool(holds), witness)
        self.notes.append(rec)
        return rec

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for r in other.records:
            self.records.append(CheckRecord(prefix + r.name, r.claim, r.passed, r.witness))
        for r in other.notes:
            self.notes.append(CheckRecord(prefix + r.name, r.claim, r.passed, r.witness))

    def by_name(self, name: str) -> CheckRecord:
        """First record called ``name``; KeyError if absent."""
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)

    @property
    def failures(self) -> list:
        return [r for r in self.records if not r.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {"checks": len(self.records), "passed": len(self.records) - len(self.failures), "failed": len(self.failures)}

    def to_dict(self) -> dict:
        return {
            "campaign": self.campaign,
            "seed": self.seed,
            "config": jsonable(self.config),
            "summary": self.summary(),
            "records": [jsonable(asdict(r)) for r in self.records],
            "notes": [jsonable(asdict(r)) for r in self.notes],
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)
