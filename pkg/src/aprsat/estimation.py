"""Exact progression counts and a fitted asymptotic model for them.

For the prime hypergraphs the count of size-k progressions among the first n
primes is modelled as

    C * x**2 / L**k * (1 + a_1 / L + ... + a_N / L**N),   x = n ln n,  L = ln x,

with C and the a_i found by least squares.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .hypergraph import Family, family_vertices

__all__ = [
    "CountModel",
    "count_progressions",
    "count_progressions_many",
    "fit_count_model",
    "estimate_count",
    "read_samples",
    "format_samples",
]


def _vdw_count(k: int, n: int) -> int:
    if k == 1:
        return n
    total = 0
    d = 1
    while n - (k - 1) * d > 0:
        total += n - (k - 1) * d
        d += 1
    return total


def count_progressions_many(family, k: int, ns: Iterable[int]) -> dict[int, int]:
    """Exact |E| of the size-k hypergraph for several vertex counts at once."""
    family = Family.parse(family)
    ns = sorted(set(ns))
    if k < 1:
        raise ValueError(f"progression size must be >= 1, got {k}")
    if any(n < 0 for n in ns):
        raise ValueError("vertex counts must be >= 0")
    if not ns:
        return {}
    if family is Family.VDW:
        return {n: _vdw_count(k, n) for n in ns}
    if k <= 2:
        return {n: n if k == 1 else n * (n - 1) // 2 for n in ns}
    p = np.asarray(family_vertices(family, ns[-1]), dtype=np.int64)
    # ends[r] counts progressions whose largest element is the r-th vertex (0-based)
    ends = np.zeros(len(p), dtype=np.int64)
    for i in range(len(p) - 1):
        d = p[i + 1 :] - p[i]
        d = d[p[i] + (k - 1) * d <= p[-1]]
        if d.size == 0:
            continue
        ok = np.ones(d.size, dtype=bool)
        for j in range(2, k):
            target = p[i] + j * d
            pos = np.searchsorted(p, target)
            ok &= p[np.minimum(pos, len(p) - 1)] == target
            if j == k - 1:
                last_rank = pos
        np.add.at(ends, last_rank[ok], 1)
    cumulative = np.concatenate(([0], np.cumsum(ends)))
    return {n: int(cumulative[n]) for n in ns}


def count_progressions(family, k: int, n: int) -> int:
    """Number of size-k arithmetic progressions among the first n vertices."""
    return count_progressions_many(family, k, [n])[n]


@dataclass(frozen=True)
class CountModel:
    k: int
    C: float
    a: tuple[float, ...] = ()

    @property
    def order(self) -> int:
        return len(self.a)


def _log_scale(n) -> tuple[np.ndarray, np.ndarray]:
    n = np.asarray(n, dtype=float)
    x = n * np.log(n)
    return x, np.log(x)


def _basis(k: int, order: int, ns: Sequence[int]) -> np.ndarray:
    x, L = _log_scale(ns)
    return np.column_stack([x**2 / L ** (k + i) for i in range(order + 1)])


def fit_count_model(k: int, samples: Sequence[tuple[int, int]], order: int = 2) -> CountModel:
    """Least-squares fit of C and a_1..a_order to exact (n, count) samples."""
    if order < 0:
        raise ValueError("order must be >= 0")
    samples = list(samples)
    if len({n for n, _ in samples}) < order + 1:
        raise ValueError(f"need at least {order + 1} distinct sample points, got {len(samples)}")
    ns = [n for n, _ in samples]
    if min(ns) < 2:
        raise ValueError("sample vertex counts must be >= 2 (need log(n log n) > 0)")
    y = np.asarray([c for _, c in samples], dtype=float)
    A = _basis(k, order, ns)
    scale = np.abs(A).max(axis=0)
    As = A / scale
    normal = As.T @ As
    try:
        if np.linalg.cond(normal) > 1e14:
            raise np.linalg.LinAlgError("ill-conditioned")
        coef = np.linalg.solve(normal, As.T @ y) / scale
    except np.linalg.LinAlgError as exc:
        raise ValueError(f"degenerate sample set: normal equations are singular ({exc})") from None
    C = float(coef[0])
    if C == 0.0:
        if np.any(coef[1:] != 0):
            raise ValueError("leading coefficient is zero; corrections are not expressible")
        return CountModel(k, 0.0, tuple(0.0 for _ in range(order)))
    return CountModel(k, C, tuple(float(c / C) for c in coef[1:]))


def estimate_count(model: CountModel, n: float) -> float:
    if n < 2:
        raise ValueError("n must be >= 2")
    x = n * math.log(n)
    L = math.log(x)
    correction = 1.0 + sum(a / L**i for i, a in enumerate(model.a, start=1))
    return model.C * x**2 / L**model.k * correction


def read_samples(text: str) -> list[tuple[int, int]]:
    """Parse sample lines ``n count``; blank lines and '#' comments are skipped."""
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"sample line {lineno}: expected 'n count', got {line!r}")
        try:
            out.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ValueError(f"sample line {lineno}: expected integers, got {line!r}") from None
    return out


def format_samples(samples: Iterable[tuple[int, int]]) -> str:
    return "".join(f"{n} {c}\n" for n, c in samples)
