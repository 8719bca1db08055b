"""Parameter tuples and the non-boolean colouring clause-sets built from them."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .hypergraph import Family, family_vertices, progressions

__all__ = [
    "ParameterTuple",
    "TupleClass",
    "classify_tuple",
    "NBClauseSet",
    "build_instance",
    "solve_nb_bruteforce",
    "SearchSpaceTooLarge",
]


@dataclass(frozen=True)
class ParameterTuple:
    """Sorted progression sizes (k_1 <= ... <= k_m), each at least 2."""

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(k) for k in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise ValueError("a parameter tuple needs at least one entry")
        if any(k < 2 for k in entries):
            raise ValueError(f"tuple entries must be >= 2: {entries}")
        if any(a > b for a, b in zip(entries, entries[1:])):
            raise ValueError(f"tuple must be sorted non-decreasingly: {entries}")

    @classmethod
    def parse(cls, text: str) -> "ParameterTuple":
        """Parse comma-separated syntax such as ``"2,3,3"``."""
        try:
            entries = tuple(int(part) for part in text.split(","))
        except ValueError:
            raise ValueError(f"malformed tuple {text!r}") from None
        return cls(entries)

    @property
    def m(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self) -> str:
        return ",".join(map(str, self.entries))


@dataclass(frozen=True)
class TupleClass:
    trivial: bool
    simple: bool
    core: bool
    transversal: bool
    extended_core: bool
    diagonal: bool
    mixed: bool
    extension_length: int
    core_part: tuple[int, ...]

    @property
    def labels(self) -> frozenset[str]:
        names = {
            "trivial": self.trivial,
            "simple": self.simple,
            "core": self.core,
            "transversal": self.transversal,
            "extended-core": self.extended_core,
            "diagonal": self.diagonal,
            "mixed": self.mixed,
        }
        return frozenset(name for name, flag in names.items() if flag)


def classify_tuple(t: ParameterTuple | Iterable[int]) -> TupleClass:
    if not isinstance(t, ParameterTuple):
        t = ParameterTuple(tuple(t))
    entries = t.entries
    twos = sum(1 for k in entries if k == 2)
    core_part = entries[twos:]
    simple = len(entries) == 1
    trivial = not core_part
    core = not simple and twos == 0
    # extensions need at least one prepended 2 and a non-trivial base
    transversal = twos > 0 and len(core_part) == 1
    extended_core = twos > 0 and len(core_part) >= 2
    constant = len(set(entries)) == 1
    return TupleClass(
        trivial=trivial,
        simple=simple,
        core=core,
        transversal=transversal,
        extended_core=extended_core,
        diagonal=constant and not simple,
        mixed=not constant and not simple,
        extension_length=twos,
        core_part=core_part,
    )


@dataclass
class NBClauseSet:
    """Generalised clause-set; literal (v, e) means "v != e", domains are 1..size."""

    variables: list[tuple[int, int]]
    clauses: list[tuple[tuple[int, int], ...]]

    def __post_init__(self):
        domains = self.domains
        if len(domains) != len(self.variables):
            raise ValueError("duplicate variable names")
        for clause in self.clauses:
            names = [v for v, _ in clause]
            if len(set(names)) != len(names):
                raise ValueError(f"clause {clause} mentions a variable twice")
            for v, e in clause:
                if v not in domains:
                    raise ValueError(f"unknown variable {v} in clause {clause}")
                if not 1 <= e <= domains[v]:
                    raise ValueError(f"value {e} outside the domain of variable {v}")

    @property
    def domains(self) -> dict[int, int]:
        return dict(self.variables)

    @property
    def names(self) -> list[int]:
        return [v for v, _ in self.variables]

    def satisfied_by(self, assignment: dict[int, int]) -> bool:
        return all(any(assignment[v] != e for v, e in clause) for clause in self.clauses)


def build_instance(family, t: ParameterTuple | Iterable[int], n: int) -> NBClauseSet:
    """The colouring problem for the first n vertices: colour i must avoid k_i-progressions.

    Clauses are ordered by colour, then by the hypergraph's edge order.
    """
    if not isinstance(t, ParameterTuple):
        t = ParameterTuple(tuple(t))
    vertices = family_vertices(Family.parse(family), n)
    m = t.m
    edges_by_size = {k: progressions(vertices, k) for k in set(t.entries)}
    clauses = []
    for colour, k in enumerate(t.entries, start=1):
        for edge in edges_by_size[k]:
            clauses.append(tuple((v, colour) for v in edge))
    return NBClauseSet([(v, m) for v in vertices], clauses)


class SearchSpaceTooLarge(ValueError):
    pass


_MAX_SEARCH = 2 * 10**7


def solve_nb_bruteforce(f: NBClauseSet) -> tuple[bool, Optional[dict[int, int]]]:
    """Exhaustive search over all assignments; returns (satisfiable, witness)."""
    space = math.prod(size for _, size in f.variables)
    if space > _MAX_SEARCH:
        raise SearchSpaceTooLarge(f"search space {space} exceeds {_MAX_SEARCH}")
    if any(not c for c in f.clauses):
        return False, None
    names = f.names
    ranges = [range(1, size + 1) for _, size in f.variables]
    for values in itertools.product(*ranges):
        assignment = dict(zip(names, values))
        if f.satisfied_by(assignment):
            return True, assignment
    return False, None
