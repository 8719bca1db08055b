"""Boolean CNF clause-sets with signed-integer literals."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

__all__ = ["BoolClauseSet", "verify_assignment", "PartialAssignmentError"]


class PartialAssignmentError(ValueError):
    pass


@dataclass
class BoolClauseSet:
    """Variables 1..num_vars; each clause a tuple of nonzero signed ints."""

    num_vars: int
    clauses: list[tuple[int, ...]] = field(default_factory=list)

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("num_vars must be >= 0")
        self.clauses = [self._check(c) for c in self.clauses]

    def _check(self, clause: Iterable[int]) -> tuple[int, ...]:
        lits = tuple(dict.fromkeys(int(l) for l in clause))
        lit_set = set(lits)
        for l in lits:
            if l == 0 or abs(l) > self.num_vars:
                raise ValueError(f"literal {l} out of range 1..{self.num_vars}")
            if -l in lit_set:
                raise ValueError(f"clause {lits} contains a clashing pair on variable {abs(l)}")
        return lits

    def add(self, clause: Iterable[int]) -> None:
        self.clauses.append(self._check(clause))

    def extend(self, clauses: Iterable[Iterable[int]]) -> None:
        for c in clauses:
            self.add(c)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def as_set(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(c) for c in self.clauses)

    def copy(self) -> "BoolClauseSet":
        return BoolClauseSet(self.num_vars, list(self.clauses))


def _lookup(assignment, v: int) -> bool:
    try:
        return bool(assignment[v])
    except (KeyError, IndexError):
        raise PartialAssignmentError(f"assignment does not cover variable {v}") from None


def verify_assignment(f: BoolClauseSet, assignment: Mapping[int, bool] | Sequence[bool]) -> bool:
    """True iff every clause has a satisfied literal.

    `assignment` maps each variable 1..num_vars to a bool; a sequence is
    read 0-based (index v-1).
    """
    if not isinstance(assignment, Mapping):
        seq = assignment
        if len(seq) < f.num_vars:
            raise PartialAssignmentError(f"assignment covers {len(seq)} of {f.num_vars} variables")
        assignment = {v: seq[v - 1] for v in range(1, f.num_vars + 1)}
    for v in range(1, f.num_vars + 1):
        _lookup(assignment, v)
    for clause in f.clauses:
        if not any(assignment[l] if l > 0 else not assignment[-l] for l in clause):
            return False
    return True
