"""DIMACS CNF reading and writing.

The variable map of a translation travels as comment lines
``c map <vertex> <slot> <boolvar>`` ahead of the header.
"""

from __future__ import annotations

import io
from typing import IO, Iterable, Optional, TextIO, Union

from .cnf import BoolClauseSet

__all__ = ["DimacsError", "write_dimacs", "dumps", "parse_dimacs", "parse_map_comments"]


class DimacsError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def write_dimacs(f: BoolClauseSet, varmap=None, sink: Optional[TextIO] = None) -> Optional[str]:
    """Write `f` to `sink`; returns the text when no sink is given.

    `varmap` is anything with an ``items()`` yielding (vertex, slot, var).
    """
    out = sink if sink is not None else io.StringIO()
    if varmap is not None:
        for vertex, slot, var in varmap.items():
            out.write(f"c map {vertex} {slot} {var}\n")
    out.write(f"p cnf {f.num_vars} {len(f.clauses)}\n")
    for clause in f.clauses:
        out.write(" ".join(map(str, clause)))
        out.write(" 0\n" if clause else "0\n")
    if sink is None:
        return out.getvalue()
    return None


def dumps(f: BoolClauseSet, varmap=None) -> str:
    return write_dimacs(f, varmap)


def _lines(source: Union[str, IO[str]]) -> Iterable[str]:
    if isinstance(source, str):
        return source.splitlines()
    return source


def parse_dimacs(source: Union[str, IO[str]]) -> BoolClauseSet:
    """Parse DIMACS text (or a text stream); errors carry the line number."""
    header = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, raw in enumerate(_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line == "%":
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise DimacsError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"malformed header {line!r}", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsError(f"malformed header {line!r}", lineno) from None
            if header[0] < 0 or header[1] < 0:
                raise DimacsError(f"negative counts in header {line!r}", lineno)
            continue
        if header is None:
            raise DimacsError("clause before header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"malformed literal {tok!r}", lineno) from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > header[0]:
                raise DimacsError(f"literal {lit} exceeds declared {header[0]} variables", lineno)
            else:
                current.append(lit)
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        raise DimacsError("last clause not terminated by 0")
    if len(clauses) != header[1]:
        raise DimacsError(f"header declares {header[1]} clauses, found {len(clauses)}")
    try:
        return BoolClauseSet(header[0], clauses)
    except ValueError as exc:
        raise DimacsError(str(exc)) from None


def parse_map_comments(source: Union[str, IO[str]]) -> list[tuple[int, int, int]]:
    """The (vertex, slot, var) triples from ``c map`` comment lines."""
    out = []
    for lineno, raw in enumerate(_lines(source), start=1):
        parts = raw.split()
        if len(parts) >= 2 and parts[0] == "c" and parts[1] == "map":
            if len(parts) != 5:
                raise DimacsError(f"malformed map comment {raw.strip()!r}", lineno)
            try:
                out.append((int(parts[2]), int(parts[3]), int(parts[4])))
            except ValueError:
                raise DimacsError(f"malformed map comment {raw.strip()!r}", lineno) from None
    return out
