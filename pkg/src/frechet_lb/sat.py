"""CNF formulas, partial assignments and the brute-force satisfiability oracle."""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

DEFAULT_CAP = 24


class DimacsError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class EnumerationCapError(ValueError):
    pass


@dataclass(frozen=True)
class CnfFormula:
    """CNF over variables ``1..num_vars``; literals are signed variable indices."""

    num_vars: int
    clauses: tuple

    def __post_init__(self):
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.num_vars < 1:
            raise ValueError("a formula needs at least one variable")
        if not clauses:
            raise ValueError("a formula needs at least one clause")
        for c in clauses:
            if not c:
                raise ValueError("empty clause")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range 1..{self.num_vars}")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def is_satisfied_by(self, values: dict) -> bool:
        return all(any(values[abs(l)] == (l > 0) for l in c) for c in self.clauses)

    def digest(self) -> str:
        return hashlib.sha256(to_dimacs(self).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class PartialAssignment:
    """Truth values for an ordered set of variables."""

    variables: tuple
    values: tuple

    def __post_init__(self):
        if len(self.variables) != len(self.values):
            raise ValueError("variables and values must have equal length")

    def as_dict(self) -> dict:
        return dict(zip(self.variables, self.values))

    def __str__(self):
        return "{" + ", ".join(f"x{v}={'T' if b else 'F'}" for v, b in zip(self.variables, self.values)) + "}"


@dataclass(frozen=True)
class VariableSplit:
    """Contiguous prefix split: ``V1 = x1..x_ell``, ``V2`` the rest."""

    num_vars: int
    ell: int
    v1: tuple = field(init=False)
    v2: tuple = field(init=False)

    def __post_init__(self):
        if not 0 <= self.ell <= self.num_vars:
            raise ValueError(f"split point {self.ell} outside [0, {self.num_vars}]")
        object.__setattr__(self, "v1", tuple(range(1, self.ell + 1)))
        object.__setattr__(self, "v2", tuple(range(self.ell + 1, self.num_vars + 1)))


def sat_partial(a: PartialAssignment, clause: Sequence[int]) -> bool:
    """Whether ``a`` alone already satisfies ``clause``."""
    vals = a.as_dict()
    for lit in clause:
        v = vals.get(abs(lit))
        if v is not None and v == (lit > 0):
            return True
    return False


# -- DIMACS ---------------------------------------------------------------

def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF. Clauses may span lines; each ends with ``0``."""
    header = None
    clauses: list[tuple] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if header is not None:
                raise DimacsError("duplicate header", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"malformed header {line!r}", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"malformed header {line!r}", lineno) from None
            if n < 1 or m < 1:
                raise DimacsError("header counts must be positive", lineno)
            header = (n, m)
            continue
        if header is None:
            raise DimacsError("clause before header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                if not current:
                    raise DimacsError("empty clause", lineno)
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > header[0]:
                raise DimacsError(f"literal {lit} out of range 1..{header[0]}", lineno)
            else:
                current.append(lit)
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        raise DimacsError("last clause is not 0-terminated")
    if len(clauses) != header[1]:
        raise DimacsError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


def to_dimacs(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.num_vars} {phi.num_clauses}"]
    lines += [" ".join(str(l) for l in c) + " 0" for c in phi.clauses]
    return "\n".join(lines) + "\n"


# -- enumeration -----------------------------------------------------------

def enumerate_assignments(variables: Sequence[int], cap: int = DEFAULT_CAP) -> list[PartialAssignment]:
    """All assignments of ``variables``, lexicographic with T before F."""
    variables = tuple(variables)
    if len(variables) > cap:
        raise EnumerationCapError(f"{len(variables)} variables exceeds cap {cap}")
    return [PartialAssignment(variables, vals) for vals in itertools.product((True, False), repeat=len(variables))]


def _assignment_block(n: int, start: int, stop: int) -> np.ndarray:
    # row r is the r-th assignment in T-before-F order: bit (n-1-k) of r set means x_{k+1} = F
    r = np.arange(start, stop, dtype=np.int64)[:, None]
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)[None, :]
    return ((r >> shifts) & 1) == 0


def brute_force_sat(phi: CnfFormula, cap: int = DEFAULT_CAP, block: int = 1 << 15) -> dict | None:
    """First satisfying assignment in T-before-F lexicographic order, or None."""
    n = phi.num_vars
    if n > cap:
        raise EnumerationCapError(f"{n} variables exceeds cap {cap}")
    pos = [np.array([l - 1 for l in c if l > 0], dtype=np.int64) for c in phi.clauses]
    neg = [np.array([-l - 1 for l in c if l < 0], dtype=np.int64) for c in phi.clauses]
    total = 1 << n
    for start in range(0, total, block):
        X = _assignment_block(n, start, min(total, start + block))
        ok = np.ones(len(X), dtype=bool)
        for p, q in zip(pos, neg):
            ok &= X[:, p].any(axis=1) | (~X[:, q]).any(axis=1)
            if not ok.any():
                break
        hits = np.flatnonzero(ok)
        if hits.size:
            row = X[hits[0]]
            return {k + 1: bool(row[k]) for k in range(n)}
    return None


def split_variables(phi: CnfFormula | int, gamma: float) -> VariableSplit:
    """Split with ``ell = N / (gamma + 1)``, rounded half up and clamped to [1, N-1]."""
    n = phi if isinstance(phi, int) else phi.num_vars
    if not 0 <= gamma <= 1:
        raise ValueError("gamma must lie in [0, 1]")
    if n < 2:
        raise ValueError("splitting needs at least two variables")
    # exact half-up rounding for rational gamma
    x = Fraction(n) / (1 + Fraction(gamma).limit_denominator(10**6))
    ell = int(x + Fraction(1, 2))
    return VariableSplit(n, min(max(ell, 1), n - 1))


def half_split(phi: CnfFormula | int) -> VariableSplit:
    return split_variables(phi, 1)


# -- random formulas --------------------------------------------------------

def random_kcnf(num_vars: int, num_clauses: int, width: int, rng: np.random.Generator) -> CnfFormula:
    """Uniform random CNF: each clause has ``width`` distinct variables, random signs."""
    width = min(width, num_vars)
    clauses = []
    for _ in range(num_clauses):
        vs = rng.choice(num_vars, size=width, replace=False) + 1
        signs = rng.choice((-1, 1), size=width)
        clauses.append(tuple(int(v * s) for v, s in zip(vs, signs)))
    return CnfFormula(num_vars, tuple(clauses))


def force_unsat(phi: CnfFormula, var: int = 1) -> CnfFormula:
    """Append ``(x) and (not x)``."""
    return CnfFormula(phi.num_vars, phi.clauses + ((var,), (-var,)))


def all_sign_patterns(num_vars: int, k: int) -> CnfFormula:
    """Every clause over ``x1..xk`` with all sign patterns: unsatisfiable."""
    clauses = [tuple(v * s for v, s in zip(range(1, k + 1), signs)) for signs in itertools.product((1, -1), repeat=k)]
    return CnfFormula(num_vars, tuple(clauses))


def split_satisfies(phi: CnfFormula, a1: PartialAssignment, a2: PartialAssignment) -> bool:
    return all(sat_partial(a1, c) or sat_partial(a2, c) for c in phi.clauses)


def restrict(values: dict, variables: Iterable[int]) -> PartialAssignment:
    variables = tuple(variables)
    return PartialAssignment(variables, tuple(values[v] for v in variables))
