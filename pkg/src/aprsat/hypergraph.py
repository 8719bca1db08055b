"""Hypergraphs of arithmetic progressions over [1..n] and over the first n primes."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from .primes import first_primes

__all__ = [
    "Family",
    "Hypergraph",
    "family_vertices",
    "progressions",
    "vdw_hypergraph",
    "gt_hypergraph",
    "ap_hypergraph",
    "first_progression_rank",
    "independence_number_bruteforce",
    "transversal_number_bruteforce",
    "is_progression",
]


class Family(str, enum.Enum):
    """Which vertex sequence the hypergraphs live on."""

    VDW = "vdw"  # vertices 1..n
    GT = "gt"  # vertices p_1..p_n

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, Family):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown family {value!r} (expected 'vdw' or 'gt')") from None


@dataclass(frozen=True)
class Hypergraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        vs = set(self.vertices)
        for e in self.edges:
            if not e:
                raise ValueError("empty hyperedge")
            if not vs.issuperset(e):
                raise ValueError(f"edge {e} not contained in the vertex set")

    @property
    def n(self) -> int:
        return len(self.vertices)


def family_vertices(family, n: int) -> list[int]:
    """The first n vertices of the family's vertex sequence."""
    if n < 0:
        raise ValueError(f"vertex count must be >= 0, got {n}")
    if Family.parse(family) is Family.VDW:
        return list(range(1, n + 1))
    return first_primes(n)


def is_progression(values: Sequence[int]) -> bool:
    s = sorted(values)
    if len(s) <= 2:
        return len(set(s)) == len(s)
    d = s[1] - s[0]
    return d > 0 and all(s[i + 1] - s[i] == d for i in range(len(s) - 1))


def progressions(vertices: Sequence[int], k: int) -> list[tuple[int, ...]]:
    """All size-k arithmetic progressions inside the sorted vertex list.

    Ordered by first element, then common difference.
    """
    if k < 1:
        raise ValueError(f"progression size must be >= 1, got {k}")
    if k == 1:
        return [(v,) for v in vertices]
    vset = set(vertices)
    out = []
    for i, a in enumerate(vertices):
        for b in vertices[i + 1 :]:
            d = b - a
            last = a + (k - 1) * d
            if k > 2 and last > vertices[-1]:
                break
            if all(a + j * d in vset for j in range(2, k)):
                out.append(tuple(a + j * d for j in range(k)))
    return out


def ap_hypergraph(family, k: int, n: int) -> Hypergraph:
    vertices = family_vertices(family, n)
    return Hypergraph(tuple(vertices), tuple(progressions(vertices, k)))


def vdw_hypergraph(k: int, n: int) -> Hypergraph:
    """arithp(k, n): vertices 1..n, edges the size-k progressions."""
    return ap_hypergraph(Family.VDW, k, n)


def gt_hypergraph(k: int, n: int) -> Hypergraph:
    """arithpp(k, n): the first n primes, edges the size-k progressions among them."""
    return ap_hypergraph(Family.GT, k, n)


def first_progression_rank(family, k: int, n_cap: int) -> Optional[int]:
    """Smallest n <= n_cap whose first n vertices contain a size-k progression.

    Returns None when no progression appears up to the cap.
    """
    if k < 2:
        raise ValueError(f"progression size must be >= 2, got {k}")
    vertices = family_vertices(family, n_cap)
    seen: set[int] = set()
    for n, top in enumerate(vertices, start=1):
        # any new progression must end at the newly added vertex
        for q in seen:
            d = top - q
            if all(top - j * d in seen for j in range(2, k)):
                return n
        seen.add(top)
    return None


_MAX_ORACLE_VERTICES = 40


def _edge_masks(h: Hypergraph) -> tuple[int, list[int]]:
    n = len(h.vertices)
    if n > _MAX_ORACLE_VERTICES:
        raise ValueError(f"oracle limited to {_MAX_ORACLE_VERTICES} vertices, got {n}")
    index = {v: i for i, v in enumerate(h.vertices)}
    masks = sorted({sum(1 << index[v] for v in e) for e in h.edges})
    return n, masks


def _packing(masks: list[int], region: int) -> int:
    """Greedy count of edges with pairwise disjoint parts inside `region`."""
    used = 0
    count = 0
    for m in masks:
        part = m & region
        if part and not part & used:
            used |= part
            count += 1
    return count


def independence_number_bruteforce(h: Hypergraph) -> int:
    """Maximum size of a vertex set containing no hyperedge (branch and bound)."""
    n, masks = _edge_masks(h)
    degree = [sum(m >> i & 1 for m in masks) for i in range(n)]
    order = sorted(range(n), key=lambda i: (degree[i], i))
    by_vertex = [[m for m in masks if m >> i & 1] for i in range(n)]
    suffix = [0] * (n + 1)
    for pos in range(n - 1, -1, -1):
        suffix[pos] = suffix[pos + 1] | (1 << order[pos])

    best = 0

    def search(pos: int, chosen: int, size: int) -> None:
        nonlocal best
        if pos == n:
            if size > best:
                best = size
            return
        rest = suffix[pos]
        if size + (n - pos) <= best:
            return
        alive = chosen | rest
        live = [m for m in masks if m & alive == m]
        if size + (n - pos) - _packing(live, rest) <= best:
            return
        i = order[pos]
        trial = chosen | (1 << i)
        if all(m & trial != m for m in by_vertex[i]):
            search(pos + 1, trial, size + 1)
        search(pos + 1, chosen, size)

    search(0, 0, 0)
    return best


def transversal_number_bruteforce(h: Hypergraph) -> int:
    """Minimum size of a vertex set meeting every hyperedge.

    Complement-side search: vertices are decided in order of decreasing
    degree, taking them into the transversal first.
    """
    n, masks = _edge_masks(h)
    degree = [sum(m >> i & 1 for m in masks) for i in range(n)]
    order = sorted(range(n), key=lambda i: (-degree[i], i))
    by_vertex = [[m for m in masks if m >> i & 1] for i in range(n)]
    suffix = [0] * (n + 1)
    for pos in range(n - 1, -1, -1):
        suffix[pos] = suffix[pos + 1] | (1 << order[pos])

    best = n

    def search(pos: int, taken: int, size: int) -> None:
        nonlocal best
        unhit = [m for m in masks if not m & taken]
        if not unhit:
            best = min(best, size)
            return
        if pos == n:
            return
        undecided = suffix[pos]
        if size + _packing(unhit, undecided) >= best:
            return
        i = order[pos]
        bit = 1 << i
        search(pos + 1, taken | bit, size + 1)
        # leaving i out is only possible while every edge through i can still be hit
        rest = undecided & ~bit
        if all(m & taken or m & rest for m in by_vertex[i]):
            search(pos + 1, taken, size)

    search(0, 0, 0)
    return best
