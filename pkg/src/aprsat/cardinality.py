""""Exactly b of these variables are true" as CNF, via a tree of binary adders."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

__all__ = ["CardinalityEncoding", "encode_exactly"]

# a bit of a binary number: a literal, or a known constant
Bit = Union[int, bool]


@dataclass
class CardinalityEncoding:
    inputs: tuple[int, ...]
    bound: int
    first_aux: int
    num_aux: int
    clauses: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def aux(self) -> range:
        return range(self.first_aux, self.first_aux + self.num_aux)

    @property
    def max_var(self) -> int:
        return max([*map(abs, self.inputs), self.first_aux + self.num_aux - 1], default=0)


class _Builder:
    def __init__(self, fresh_from: int):
        self.next_var = fresh_from
        self.first = fresh_from
        self.clauses: list[tuple[int, ...]] = []

    def fresh(self) -> int:
        v = self.next_var
        self.next_var += 1
        return v

    def xor(self, a: Bit, b: Bit) -> Bit:
        if isinstance(a, bool) and isinstance(b, bool):
            return a != b
        if isinstance(a, bool):
            a, b = b, a
        if isinstance(b, bool):
            return -a if b else a
        if a == b:
            return False
        if a == -b:
            return True
        s = self.fresh()
        self.clauses += [(-s, a, b), (-s, -a, -b), (s, -a, b), (s, a, -b)]
        return s

    def conj(self, a: Bit, b: Bit) -> Bit:
        if isinstance(a, bool) and isinstance(b, bool):
            return a and b
        if isinstance(a, bool):
            a, b = b, a
        if isinstance(b, bool):
            return a if b else False
        if a == b:
            return a
        if a == -b:
            return False
        c = self.fresh()
        self.clauses += [(-c, a), (-c, b), (c, -a, -b)]
        return c

    def half_adder(self, a: Bit, b: Bit) -> tuple[Bit, Bit]:
        return self.xor(a, b), self.conj(a, b)

    def full_adder(self, a: Bit, b: Bit, c: Bit) -> tuple[Bit, Bit]:
        consts = [x for x in (a, b, c) if isinstance(x, bool)]
        if consts:
            lits = [x for x in (a, b, c) if not isinstance(x, bool)]
            ones = sum(consts)
            # fold constants: adding a known bit is a half adder with a shifted carry
            if len(lits) == 2:
                x, y = lits
                if ones == 0:
                    return self.half_adder(x, y)
                return self.xor(self.xor(x, y), True), self._or(x, y)
            if len(lits) == 1:
                x = lits[0]
                if ones == 0:
                    return x, False
                if ones == 1:
                    return self.xor(x, True), x
                return x, True
            return ones % 2 == 1, ones >= 2
        s = self.fresh()
        cout = self.fresh()
        self.clauses += [
            (-s, a, b, c), (-s, a, -b, -c), (-s, -a, b, -c), (-s, -a, -b, c),
            (s, -a, -b, -c), (s, -a, b, c), (s, a, -b, c), (s, a, b, -c),
            (-cout, a, b), (-cout, a, c), (-cout, b, c),
            (cout, -a, -b), (cout, -a, -c), (cout, -b, -c),
        ]
        return s, cout

    def _or(self, a: int, b: int) -> Bit:
        if a == b:
            return a
        if a == -b:
            return True
        o = self.fresh()
        self.clauses += [(o, -a), (o, -b), (-o, a, b)]
        return o

    def add(self, x: list[Bit], y: list[Bit]) -> list[Bit]:
        """Ripple-carry sum of two little-endian numbers."""
        width = max(len(x), len(y))
        x = x + [False] * (width - len(x))
        y = y + [False] * (width - len(y))
        out: list[Bit] = []
        carry: Bit = False
        for a, b in zip(x, y):
            s, carry = self.full_adder(a, b, carry)
            out.append(s)
        out.append(carry)
        return out

    def count(self, lits: Sequence[int]) -> list[Bit]:
        if len(lits) == 1:
            return [lits[0]]
        mid = len(lits) // 2
        return self.add(self.count(lits[:mid]), self.count(lits[mid:]))


def encode_exactly(variables: Sequence[int], b: int, fresh_from: int) -> CardinalityEncoding:
    """Clauses over `variables` plus auxiliaries from `fresh_from` that hold iff exactly b inputs are true."""
    variables = tuple(variables)
    if not 0 <= b <= len(variables):
        raise ValueError(f"bound {b} outside 0..{len(variables)}")
    if variables and fresh_from <= max(abs(v) for v in variables):
        raise ValueError("fresh_from must exceed every input variable")
    builder = _Builder(fresh_from)
    if not variables:
        return CardinalityEncoding(variables, b, fresh_from, 0, [])
    total = builder.count(list(variables))
    clauses = builder.clauses
    for i, bit in enumerate(total):
        want = bool(b >> i & 1)
        if isinstance(bit, bool):
            if bit != want:
                clauses.append(())
            continue
        clauses.append((bit,) if want else (-bit,))
    if b >> len(total):
        clauses.append(())
    return CardinalityEncoding(variables, b, fresh_from, builder.next_var - fresh_from, clauses)
