"""CNF data model: clauses, formulas, and the sign-compatibility predicates.

Variables are 1-based integers (DIMACS convention). A clause is a pair of
disjoint variable sets (positive / negated occurrences); a clause mentioning
some variable with both signs is *tautological* and is flagged rather than
rejected, because such clauses can occur in external DIMACS files. All types
are immutable and safe to share across workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

VarId = int


@dataclass(frozen=True)
class Clause:
    """A disjunction of literals, stored as positive / negated variable sets."""

    pos: frozenset[int]
    neg: frozenset[int]

    def __post_init__(self):
        if not self.pos and not self.neg:
            raise ValueError("empty clause (no literals)")
        for v in self.pos:
            if v < 1:
                raise ValueError(f"variable index {v} < 1")
        for v in self.neg:
            if v < 1:
                raise ValueError(f"variable index {v} < 1")

    @property
    def tautological(self) -> bool:
        """True when some variable occurs with both signs."""
        return not self.pos.isdisjoint(self.neg)

    @property
    def variables(self) -> frozenset[int]:
        return self.pos | self.neg

    @property
    def width(self) -> int:
        return len(self.variables)

    def literals(self) -> list[int]:
        """Signed-integer view, positives first, each group ascending."""
        return sorted(self.pos) + [-v for v in sorted(self.neg)]


def clause(*literals: int) -> Clause:
    """Build a Clause from signed integers, e.g. clause(1, -2)."""
    pos = frozenset(v for v in literals if v > 0)
    neg = frozenset(-v for v in literals if v < 0)
    if 0 in literals:
        raise ValueError("0 is not a literal")
    return Clause(pos, neg)


@dataclass(frozen=True)
class Provenance:
    """Generation record attached to random formulas (seed and parameters)."""

    seed: int
    delta: float
    lam: float
    k_low: int
    k_high: int


@dataclass(frozen=True)
class Formula:
    """A CNF formula: an ordered clause list over variables 1..n.

    The clause list may contain duplicates; they are treated as distinct
    indexed clauses throughout (the counting identity ranges over clause
    indices and is correct for multisets). Variables need not all occur in
    clauses; unused ones contribute factors of 2 to the model count.
    """

    n: int
    clauses: tuple[Clause, ...]
    provenance: Optional[Provenance] = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"variable count {self.n} < 0")
        for i, c in enumerate(self.clauses):
            for v in c.pos | c.neg:
                if v > self.n:
                    raise ValueError(
                        f"clause {i + 1} mentions variable {v} > n = {self.n}"
                    )

    @property
    def m(self) -> int:
        return len(self.clauses)


def formula(n: int, *clause_literals: Iterable[int]) -> Formula:
    """Build a Formula from literal tuples, e.g. formula(3, (1, 2), (2, 3))."""
    return Formula(n, tuple(clause(*lits) for lits in clause_literals))


@dataclass(frozen=True)
class SignedVarSet:
    """Variables whose signs are frozen by the clauses merged so far.

    The disjointness of `pos` and `neg` *is* the monotonicity of the
    selection; merging only ever succeeds while it is preserved.
    """

    pos: frozenset[int] = frozenset()
    neg: frozenset[int] = frozenset()

    def __post_init__(self):
        if not self.pos.isdisjoint(self.neg):
            raise ValueError("signed variable set has a variable with both signs")

    @property
    def size(self) -> int:
        return len(self.pos) + len(self.neg)

    def merge(self, c: Clause) -> "SignedVarSet":
        """Freeze `c`'s literals into the set; raises if `c` is incompatible."""
        return SignedVarSet(self.pos | c.pos, self.neg | c.neg)


def conflicts(a: Clause, b: Clause) -> bool:
    """True iff some variable occurs positively in one clause and negated
    in the other (then no assignment falsifies both)."""
    return not a.pos.isdisjoint(b.neg) or not a.neg.isdisjoint(b.pos)


def compatible(crystal: SignedVarSet, c: Clause) -> bool:
    """True iff adding `c` keeps the selection monotone.

    Tautological clauses are never compatible (they conflict with
    everything, including themselves)."""
    return (
        not c.tautological
        and c.pos.isdisjoint(crystal.neg)
        and c.neg.isdisjoint(crystal.pos)
    )
