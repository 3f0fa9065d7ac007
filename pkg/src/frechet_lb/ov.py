"""Orthogonal Vectors: brute force, reduction from CNF-SAT, and curves from vectors."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .instance import ReductionInstance
from .reduction_plane import DEFAULT_CONSTANTS, GadgetConstants, curves_from_bits
from .sat import CnfFormula, VariableSplit, enumerate_assignments, half_split, sat_partial

SEPARATOR = "---"


@dataclass(frozen=True)
class OvInstance:
    """Two lists of 0/1 vectors of a common dimension."""

    S1: tuple
    S2: tuple

    def __post_init__(self):
        S1 = tuple(tuple(int(b) for b in v) for v in self.S1)
        S2 = tuple(tuple(int(b) for b in v) for v in self.S2)
        object.__setattr__(self, "S1", S1)
        object.__setattr__(self, "S2", S2)
        dims = {len(v) for v in S1 + S2}
        if len(dims) > 1:
            raise ValueError(f"vectors of different lengths: {sorted(dims)}")
        if any(b not in (0, 1) for v in S1 + S2 for b in v):
            raise ValueError("entries must be 0 or 1")

    @property
    def dim(self) -> int:
        for v in self.S1 + self.S2:
            return len(v)
        return 0

    def swapped(self) -> "OvInstance":
        return OvInstance(self.S2, self.S1)


def ov_brute(inst: OvInstance) -> tuple[int, int] | None:
    """Index pair ``(i, j)`` of the first orthogonal pair in row-major order, or None."""
    if not inst.S1 or not inst.S2:
        return None
    A = np.array(inst.S1, dtype=np.int64).reshape(len(inst.S1), -1)
    B = np.array(inst.S2, dtype=np.int64).reshape(len(inst.S2), -1)
    hits = np.argwhere(A @ B.T == 0)
    if not len(hits):
        return None
    return int(hits[0, 0]), int(hits[0, 1])


def cnf_to_ov(phi: CnfFormula, split: VariableSplit | None = None) -> OvInstance:
    """One vector per partial assignment; bit ``i`` is 1 iff the assignment leaves clause ``i`` unsatisfied.

    An empty side contributes the single empty assignment.
    """
    split = split or half_split(phi)
    vec = lambda a: tuple(0 if sat_partial(a, c) else 1 for c in phi.clauses)
    return OvInstance(tuple(vec(a) for a in enumerate_assignments(split.v1)),
                      tuple(vec(a) for a in enumerate_assignments(split.v2)))


def ov_to_curves(inst: OvInstance, consts: GadgetConstants = DEFAULT_CONSTANTS) -> ReductionInstance:
    """Planar curves with vector bits in place of clause satisfaction (0 plays satisfied)."""
    if not inst.S1 or not inst.S2:
        raise ValueError("both vector sets must be non-empty")
    if inst.dim < 1:
        raise ValueError("vectors need at least one coordinate")
    bits = lambda S: [[b == 0 for b in v] for v in S]
    P1, P2 = curves_from_bits(bits(inst.S1), bits(inst.S2), consts)
    return ReductionInstance(
        P1, P2, "ov", params={"eps": consts.eps, "n1": len(inst.S1), "n2": len(inst.S2), "d": inst.dim},
        accept=1, reject=1 + consts.eps,
    )


def random_ov(rng: np.random.Generator, n: int, d: int, p: float = 0.5) -> OvInstance:
    return OvInstance(tuple(map(tuple, (rng.random((n, d)) < p).astype(int))),
                      tuple(map(tuple, (rng.random((n, d)) < p).astype(int))))


# -- file format -----------------------------------------------------------------

def parse_vectors(text: str) -> tuple:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        if set(line) - {"0", "1"}:
            raise ValueError(f"line {lineno}: expected a 0/1 string, got {line!r}")
        out.append(tuple(int(c) for c in line))
    return tuple(out)


def parse_ov(text: str) -> OvInstance:
    """Two-section text with a ``---`` separator line."""
    parts = [p for p in _split_sections(text)]
    if len(parts) != 2:
        raise ValueError(f"expected two sections separated by {SEPARATOR!r}")
    return OvInstance(parse_vectors(parts[0]), parse_vectors(parts[1]))


def _split_sections(text: str) -> list[str]:
    sections, cur = [], []
    for line in text.splitlines():
        if line.strip() == SEPARATOR:
            sections.append("\n".join(cur))
            cur = []
        else:
            cur.append(line)
    sections.append("\n".join(cur))
    return sections


def format_vectors(S: Sequence) -> str:
    return "".join("".join(str(b) for b in v) + "\n" for v in S)


def format_ov(inst: OvInstance) -> str:
    return format_vectors(inst.S1) + SEPARATOR + "\n" + format_vectors(inst.S2)


def load_ov(s1: str | Path, s2: str | Path | None = None) -> OvInstance:
    """Read one two-section file, or two single-section files."""
    if s2 is None:
        return parse_ov(Path(s1).read_text())
    return OvInstance(parse_vectors(Path(s1).read_text()), parse_vectors(Path(s2).read_text()))
