"""Generic translation of non-boolean clause-sets into boolean CNF.

Every non-boolean variable v gets a private unsatisfiable boolean clause-set
T(v) over its slot variables. Each value e is assigned a distinct necessary
"main clause" gamma(e) of T(v); a literal "v != e" is replaced by the literals
of gamma(e), and the clauses of T(v) that are not main clauses are appended.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Mapping

from .instances import NBClauseSet
from .satcore.cnf import BoolClauseSet

__all__ = [
    "TranslationKind",
    "BaseClauseSet",
    "VarMap",
    "base_clauseset",
    "slot_width",
    "translate",
    "decode_model",
    "dp_reduce",
    "DecodeError",
]


class TranslationKind(str, enum.Enum):
    WEAK_DIRECT = "weak-direct"
    STRONG_DIRECT = "strong-direct"
    WEAK_REDUCED = "weak-reduced"
    STRONG_REDUCED = "strong-reduced"
    WEAK_NESTED = "weak-nested"
    STRONG_NESTED = "strong-nested"
    SIMPLE_LOGARITHMIC = "simple-logarithmic"

    @classmethod
    def parse(cls, value) -> "TranslationKind":
        if isinstance(value, TranslationKind):
            return value
        try:
            return cls(str(value).lower().replace("_", "-"))
        except ValueError:
            names = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown translation {value!r}; expected one of {names}") from None


@dataclass(frozen=True)
class BaseClauseSet:
    """T over slot variables 1..width, with gamma[e-1] = index of the main clause of value e."""

    width: int
    clauses: tuple[tuple[int, ...], ...]
    gamma: tuple[int, ...]

    def main_clause(self, value: int) -> tuple[int, ...]:
        return self.clauses[self.gamma[value - 1]]

    @property
    def remainder(self) -> tuple[tuple[int, ...], ...]:
        main = set(self.gamma)
        return tuple(c for i, c in enumerate(self.clauses) if i not in main)


def _log_width(m: int) -> int:
    p = 0
    while (1 << p) < m:
        p += 1
    return p


def slot_width(kind: TranslationKind, m: int) -> int:
    kind = TranslationKind.parse(kind)
    if kind in (TranslationKind.WEAK_DIRECT, TranslationKind.STRONG_DIRECT):
        return m
    if kind is TranslationKind.SIMPLE_LOGARITHMIC:
        return _log_width(m)
    return m - 1


def _positive_pairs(w: int) -> list[tuple[int, ...]]:
    return [(i, j) for i, j in itertools.combinations(range(1, w + 1), 2)]


def _direct(w: int) -> list[tuple[int, ...]]:
    return [(i,) for i in range(1, w + 1)] + [tuple(-i for i in range(1, w + 1))]


def _nested(w: int) -> list[tuple[int, ...]]:
    clauses = [tuple(-j for j in range(1, i)) + (i,) for i in range(1, w + 1)]
    clauses.append(tuple(-j for j in range(1, w + 1)))
    return clauses


def _full_clauses(p: int) -> list[tuple[int, ...]]:
    # reflected Gray code, first variable flipping fastest: for p = 2 this is
    # {1,2}, {-1,2}, {-1,-2}, {1,-2}
    clauses = []
    for i in range(1 << p):
        g = i ^ (i >> 1)
        clauses.append(tuple(-(j + 1) if g >> j & 1 else j + 1 for j in range(p)))
    return clauses


def base_clauseset(kind, m: int) -> BaseClauseSet:
    """The unsatisfiable base T and its main-clause selector for domain size m.

    Main clauses are assigned to values 1..m in the listed order, which has
    non-decreasing clause length.
    """
    kind = TranslationKind.parse(kind)
    if m < 2:
        raise ValueError(f"domain size must be >= 2, got {m}")
    w = slot_width(kind, m)
    K = TranslationKind
    if kind in (K.WEAK_DIRECT, K.STRONG_DIRECT, K.WEAK_REDUCED, K.STRONG_REDUCED):
        clauses = _direct(w)
    elif kind in (K.WEAK_NESTED, K.STRONG_NESTED):
        clauses = _nested(w)
    else:
        clauses = _full_clauses(w)
    gamma = tuple(range(m))
    if kind in (K.STRONG_DIRECT, K.STRONG_REDUCED, K.STRONG_NESTED):
        clauses = clauses + _positive_pairs(w)
    return BaseClauseSet(w, tuple(clauses), gamma)


@dataclass(frozen=True)
class VarMap:
    """(vertex, slot) <-> boolean variable; the vertex at position r (1-based) owns (r-1)*width + slot."""

    vertices: tuple[int, ...]
    width: int

    def __post_init__(self):
        object.__setattr__(self, "_rank", {v: r for r, v in enumerate(self.vertices, start=1)})

    @property
    def num_vars(self) -> int:
        return len(self.vertices) * self.width

    def index(self, vertex: int, slot: int) -> int:
        if not 1 <= slot <= self.width:
            raise ValueError(f"slot {slot} outside 1..{self.width}")
        return (self._rank[vertex] - 1) * self.width + slot

    def lookup(self, var: int) -> tuple[int, int]:
        if not 1 <= var <= self.num_vars:
            raise ValueError(f"variable {var} outside 1..{self.num_vars}")
        r, s = divmod(var - 1, self.width)
        return self.vertices[r], s + 1

    def items(self):
        for v in self.vertices:
            for s in range(1, self.width + 1):
                yield v, s, self.index(v, s)


def _uniform_domain(f: NBClauseSet) -> int:
    sizes = {size for _, size in f.variables}
    if len(sizes) > 1:
        raise ValueError(f"mixed domain sizes {sorted(sizes)} are not supported")
    return sizes.pop() if sizes else 2


def _instantiate(clause: tuple[int, ...], varmap: VarMap, vertex: int) -> list[int]:
    out = []
    for l in clause:
        b = varmap.index(vertex, abs(l))
        out.append(b if l > 0 else -b)
    return out


def translate(f: NBClauseSet, kind) -> tuple[BoolClauseSet, VarMap]:
    """Boolean clause-set satisfiability-equivalent to f.

    Translated main clauses come first (in the order of f), then the remainder
    of T(v) for every variable in variable order.
    """
    kind = TranslationKind.parse(kind)
    m = _uniform_domain(f)
    base = base_clauseset(kind, m)
    varmap = VarMap(tuple(f.names), base.width)
    out = BoolClauseSet(varmap.num_vars)
    for clause in f.clauses:
        lits: list[int] = []
        for v, e in clause:
            lits.extend(_instantiate(base.main_clause(e), varmap, v))
        lit_set = set(lits)
        assert not any(-l in lit_set for l in lits), "translated clause has a clashing pair"
        out.add(lits)
    remainder = base.remainder
    for v in f.names:
        for c in remainder:
            out.add(_instantiate(c, varmap, v))
    return out, varmap


class DecodeError(ValueError):
    pass


def _falsified(clause: tuple[int, ...], varmap: VarMap, vertex: int, a: Mapping[int, bool]) -> bool:
    for l in clause:
        value = a[varmap.index(vertex, abs(l))]
        if value == (l > 0):
            return False
    return True


def decode_model(f: NBClauseSet, kind, varmap: VarMap, a: Mapping[int, bool]) -> dict[int, int]:
    """Non-boolean assignment from a boolean model: each variable takes the
    least value whose main clause the model falsifies."""
    kind = TranslationKind.parse(kind)
    m = _uniform_domain(f)
    base = base_clauseset(kind, m)
    out = {}
    for v in f.names:
        for e in range(1, m + 1):
            if _falsified(base.main_clause(e), varmap, v, a):
                out[v] = e
                break
        else:
            raise DecodeError(f"no main clause of variable {v} is falsified; not a model of the translation")
    return out


def dp_reduce(f: BoolClauseSet, var: int) -> BoolClauseSet:
    """Eliminate `var` by replacing every clause on it with the non-tautological resolvents."""
    pos = [c for c in f.clauses if var in c]
    neg = [c for c in f.clauses if -var in c]
    if not pos and not neg:
        return f.copy()
    rest = [c for c in f.clauses if var not in c and -var not in c]
    seen = {frozenset(c) for c in rest}
    out = list(rest)
    for p in pos:
        for q in neg:
            lits = [l for l in p if l != var] + [l for l in q if l != -var]
            lit_set = set(lits)
            if any(-l in lit_set for l in lit_set):
                continue
            key = frozenset(lit_set)
            if key not in seen:
                seen.add(key)
                out.append(tuple(dict.fromkeys(lits)))
    return BoolClauseSet(f.num_vars, out)
