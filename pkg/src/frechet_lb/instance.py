"""Curve pairs produced by the reductions, with provenance and the intended gap."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .geometry import Curve, to_fraction
from .report import jsonable
from .sat import VariableSplit

KINDS = ("plane", "imbalanced", "or_packed", "highdim", "ov")


@dataclass(frozen=True)
class ReductionInstance:
    """Output of a reduction.

    ``accept`` and ``reject`` are the gap thresholds: a satisfiable source
    gives distance at most ``accept``, an unsatisfiable one more than
    ``reject``.
    """

    P1: Curve
    P2: Curve
    kind: str
    params: dict = field(default_factory=dict)
    split: VariableSplit | None = None
    accept: object = 1
    reject: object = None
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown instance kind {self.kind!r}")

    @property
    def n(self) -> int:
        return len(self.P1)

    @property
    def m(self) -> int:
        return len(self.P2)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "params": jsonable(self.params),
            "split": None if self.split is None else {"num_vars": self.split.num_vars, "ell": self.split.ell},
            "accept": jsonable(self.accept),
            "reject": jsonable(self.reject),
            "provenance": jsonable(self.provenance),
            "P1": self.P1.to_dict(),
            "P2": self.P2.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ReductionInstance":
        split = d.get("split")

        def num(x):
            if x is None:
                return None
            return to_fraction(x) if isinstance(x, str) else x

        return cls(
            P1=Curve.from_dict(d["P1"]),
            P2=Curve.from_dict(d["P2"]),
            kind=d["kind"],
            params=d.get("params", {}),
            split=None if split is None else VariableSplit(split["num_vars"], split["ell"]),
            accept=num(d.get("accept")),
            reject=num(d.get("reject")),
            provenance=d.get("provenance", {}),
        )

    def save(self, path) -> list[Path]:
        """Write the instance and the two curves as standalone curve files.

        ``inst.json`` also produces ``inst.P1.json`` and ``inst.P2.json``.
        """
        path = Path(path)
        path.write_text(json.dumps(self.to_dict(), indent=1))
        stem = path.with_suffix("")
        out = [path]
        for name, c in (("P1", self.P1), ("P2", self.P2)):
            p = stem.with_name(f"{stem.name}.{name}.json")
            p.write_text(c.dumps())
            out.append(p)
        return out

    @classmethod
    def load(cls, path) -> "ReductionInstance":
        return cls.from_dict(json.loads(Path(path).read_text()))
