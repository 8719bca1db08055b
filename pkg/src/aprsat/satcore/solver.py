"""Conflict-driven clause-learning SAT solver.

Internal literal encoding: variable v (1-based) has literals 2*v (positive)
and 2*v + 1 (negative), so ``lit ^ 1`` is the complement.
"""

from __future__ import annotations

import enum
import heapq
import random
import time
from dataclasses import dataclass, field
from typing import Optional

from .cnf import BoolClauseSet, verify_assignment

__all__ = ["Status", "Budget", "SolveResult", "Solver", "solve"]


class Status(str, enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Budget:
    """Resource limits; None means unlimited."""

    conflicts: Optional[int] = None
    seconds: Optional[float] = None

    @classmethod
    def unlimited(cls) -> "Budget":
        return cls()


@dataclass
class SolveResult:
    status: Status
    model: Optional[dict[int, bool]] = None
    conflicts: int = 0
    decisions: int = 0
    propagations: int = 0
    seconds: float = 0.0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.model is not None) != (self.status is Status.SAT):
            raise ValueError("a model is present exactly for SAT results")

    @property
    def is_sat(self) -> bool:
        return self.status is Status.SAT

    @property
    def is_unsat(self) -> bool:
        return self.status is Status.UNSAT


def _ext_to_int(l: int) -> int:
    return 2 * l if l > 0 else 2 * -l + 1


_VAR_DECAY = 0.95
_RESTART_FIRST = 100
_RESTART_FACTOR = 1.5


class Solver:
    """Single-use CDCL solver for one clause-set.

    Watched literals with separate binary-clause lists, first-UIP learning with
    recursive clause minimisation, VSIDS with phase saving, geometric restarts
    and LBD-based learnt-clause deletion.
    """

    def __init__(self, f: BoolClauseSet, seed: Optional[int] = None):
        self.formula = f
        n = f.num_vars
        self.n = n
        size = 2 * (n + 1)
        self.val = [0] * size
        self.level = [0] * (n + 1)
        self.reason: list = [None] * (n + 1)
        self.polarity = [1] * (n + 1)
        self.activity = [0.0] * (n + 1)
        self.seen = [False] * (n + 1)
        self.watches: list[list[list[int]]] = [[] for _ in range(size)]
        self.bins: list[list[tuple[int, list[int]]]] = [[] for _ in range(size)]
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.var_inc = 1.0
        self.learnts: list[list[int]] = []
        self.lbd: dict[int, int] = {}
        self.conflicts = 0
        self.decisions = 0
        self.unsat = False

        if seed is not None:
            rng = random.Random(seed)
            for v in range(1, n + 1):
                self.activity[v] = rng.random() * 1e-5
        self.heap = [(-self.activity[v], v) for v in range(1, n + 1)]
        heapq.heapify(self.heap)

        for clause in f.clauses:
            lits = [_ext_to_int(l) for l in clause]
            if not lits:
                self.unsat = True
            elif len(lits) == 1:
                if not self._enqueue_root(lits[0]):
                    self.unsat = True
            else:
                self._attach(lits)
        self.max_learnts = max(2000, len(f.clauses) // 3)

    # -- clause database -------------------------------------------------

    def _attach(self, c: list[int]) -> None:
        if len(c) == 2:
            a, b = c
            self.bins[a].append((b, c))
            self.bins[b].append((a, c))
        else:
            self.watches[c[0]].append(c)
            self.watches[c[1]].append(c)

    def _enqueue_root(self, lit: int) -> bool:
        v = self.val[lit]
        if v == 1:
            return True
        if v == -1:
            return False
        self._assign(lit, None)
        return True

    def _assign(self, lit: int, reason) -> None:
        self.val[lit] = 1
        self.val[lit ^ 1] = -1
        v = lit >> 1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    # -- propagation -----------------------------------------------------

    def _propagate(self):
        val = self.val
        trail = self.trail
        level = self.level
        reason = self.reason
        watches = self.watches
        bins = self.bins
        dl = len(self.trail_lim)
        qhead = self.qhead
        conflict = None
        while qhead < len(trail):
            fl = trail[qhead] ^ 1
            qhead += 1
            for other, c in bins[fl]:
                vo = val[other]
                if vo == 0:
                    val[other] = 1
                    val[other ^ 1] = -1
                    v = other >> 1
                    level[v] = dl
                    reason[v] = c
                    trail.append(other)
                elif vo == -1:
                    conflict = c
                    break
            if conflict is not None:
                break
            ws = watches[fl]
            if not ws:
                continue
            kept: list = []
            watches[fl] = kept
            i = 0
            n_ws = len(ws)
            while i < n_ws:
                c = ws[i]
                i += 1
                if c[0] == fl:
                    c[0] = c[1]
                    c[1] = fl
                first = c[0]
                vf = val[first]
                if vf == 1:
                    kept.append(c)
                    continue
                for k in range(2, len(c)):
                    l = c[k]
                    if val[l] != -1:
                        c[1] = l
                        c[k] = fl
                        watches[l].append(c)
                        break
                else:
                    kept.append(c)
                    if vf == -1:
                        conflict = c
                        kept.extend(ws[i:])
                        break
                    val[first] = 1
                    val[first ^ 1] = -1
                    v = first >> 1
                    level[v] = dl
                    reason[v] = c
                    trail.append(first)
            if conflict is not None:
                break
        self.qhead = qhead if conflict is None else len(trail)
        return conflict

    # -- conflict analysis -------------------------------------------------

    def _bump(self, v: int) -> None:
        act = self.activity
        act[v] += self.var_inc
        if act[v] > 1e100:
            for u in range(1, self.n + 1):
                act[u] *= 1e-100
            self.var_inc *= 1e-100
            self._rebuild_heap()
        elif self.val[2 * v] == 0:
            heapq.heappush(self.heap, (-act[v], v))

    def _rebuild_heap(self) -> None:
        val = self.val
        act = self.activity
        self.heap = [(-act[v], v) for v in range(1, self.n + 1) if val[2 * v] == 0]
        heapq.heapify(self.heap)

    def _analyze(self, confl) -> tuple[list[int], int]:
        seen = self.seen
        level = self.level
        reason = self.reason
        trail = self.trail
        dl = len(self.trail_lim)
        learnt = [0]
        to_clear = []
        path = 0
        p = -1
        idx = len(trail) - 1
        while True:
            for q in confl:
                if q == p:
                    continue
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    seen[v] = True
                    to_clear.append(v)
                    self._bump(v)
                    if level[v] >= dl:
                        path += 1
                    else:
                        learnt.append(q)
            while not seen[trail[idx] >> 1]:
                idx -= 1
            p = trail[idx]
            idx -= 1
            confl = reason[p >> 1]
            seen[p >> 1] = False
            path -= 1
            if path == 0:
                break
        learnt[0] = p ^ 1

        # recursive minimisation
        if len(learnt) > 2:
            abstract = 0
            for q in learnt[1:]:
                abstract |= 1 << (level[q >> 1] & 31)
            out = [learnt[0]]
            for q in learnt[1:]:
                if reason[q >> 1] is None or not self._redundant(q, abstract, to_clear):
                    out.append(q)
            learnt = out

        for v in to_clear:
            seen[v] = False

        if len(learnt) == 1:
            return learnt, 0
        # put the highest-level literal second: it becomes the other watch
        best = 1
        best_level = level[learnt[1] >> 1]
        for i in range(2, len(learnt)):
            lv = level[learnt[i] >> 1]
            if lv > best_level:
                best, best_level = i, lv
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, best_level

    def _redundant(self, p: int, abstract: int, to_clear: list[int]) -> bool:
        seen = self.seen
        level = self.level
        reason = self.reason
        stack = [p]
        top = len(to_clear)
        while stack:
            q = stack.pop()
            qv = q >> 1
            for r in reason[qv]:
                v = r >> 1
                if v == qv or seen[v] or level[v] == 0:
                    continue
                if reason[v] is not None and (1 << (level[v] & 31)) & abstract:
                    seen[v] = True
                    stack.append(r)
                    to_clear.append(v)
                else:
                    for u in to_clear[top:]:
                        seen[u] = False
                    del to_clear[top:]
                    return False
        return True

    # -- search ------------------------------------------------------------

    def _cancel_until(self, lvl: int) -> None:
        if len(self.trail_lim) <= lvl:
            return
        val = self.val
        reason = self.reason
        polarity = self.polarity
        act = self.activity
        heap = self.heap
        trail = self.trail
        start = self.trail_lim[lvl]
        for i in range(len(trail) - 1, start - 1, -1):
            lit = trail[i]
            v = lit >> 1
            val[lit] = 0
            val[lit ^ 1] = 0
            reason[v] = None
            polarity[v] = lit & 1
            heapq.heappush(heap, (-act[v], v))
        del trail[start:]
        del self.trail_lim[lvl:]
        self.qhead = len(trail)
        if len(heap) > 8 * self.n + 64:
            self._rebuild_heap()

    def _pick(self) -> int:
        heap = self.heap
        val = self.val
        act = self.activity
        while heap:
            a, v = heapq.heappop(heap)
            if val[2 * v] == 0 and -a == act[v]:
                return v
        return 0

    def _lbd(self, lits: list[int]) -> int:
        level = self.level
        return len({level[l >> 1] for l in lits})

    def _reduce_db(self) -> None:
        reason = self.reason
        val = self.val
        lbd = self.lbd
        candidates = []
        keep = []
        for c in self.learnts:
            locked = reason[c[0] >> 1] is c and val[c[0]] == 1
            if locked or lbd[id(c)] <= 2:
                keep.append(c)
            else:
                candidates.append(c)
        candidates.sort(key=lambda c: lbd[id(c)])
        half = len(candidates) // 2
        keep.extend(candidates[:half])
        removed = {id(c) for c in candidates[half:]}
        for c in candidates[half:]:
            del lbd[id(c)]
        if removed:
            for w in range(len(self.watches)):
                ws = self.watches[w]
                if ws:
                    self.watches[w] = [c for c in ws if id(c) not in removed]
        self.learnts = keep

    def solve(self, budget: Optional[Budget] = None) -> SolveResult:
        budget = budget or Budget()
        t0 = time.perf_counter()
        conflict_limit = None if budget.conflicts is None else self.conflicts + budget.conflicts
        deadline = None if budget.seconds is None else t0 + budget.seconds

        def result(status: Status, model=None) -> SolveResult:
            return SolveResult(
                status,
                model,
                conflicts=self.conflicts,
                decisions=self.decisions,
                propagations=self.propagations,
                seconds=time.perf_counter() - t0,
            )

        self.propagations = 0
        if self.unsat:
            return result(Status.UNSAT)

        restart_limit = _RESTART_FIRST
        since_restart = 0
        while True:
            before = len(self.trail)
            confl = self._propagate()
            self.propagations += len(self.trail) - before
            if confl is not None:
                self.conflicts += 1
                since_restart += 1
                if not self.trail_lim:
                    self.unsat = True
                    return result(Status.UNSAT)
                learnt, bt = self._analyze(confl)
                self._cancel_until(bt)
                if len(learnt) == 1:
                    self._assign(learnt[0], None)
                else:
                    self._attach(learnt)
                    if len(learnt) > 2:
                        self.learnts.append(learnt)
                        self.lbd[id(learnt)] = self._lbd(learnt)
                    self._assign(learnt[0], learnt)
                self.var_inc /= _VAR_DECAY
                if conflict_limit is not None and self.conflicts >= conflict_limit:
                    return result(Status.UNKNOWN)
                if deadline is not None and self.conflicts % 64 == 0 and time.perf_counter() > deadline:
                    return result(Status.UNKNOWN)
                continue

            if since_restart >= restart_limit:
                since_restart = 0
                restart_limit = int(restart_limit * _RESTART_FACTOR)
                self._cancel_until(0)
                continue
            if len(self.learnts) - len(self.trail) >= self.max_learnts:
                self._reduce_db()
                self.max_learnts = int(self.max_learnts * 1.1)

            v = self._pick()
            if v == 0:
                model = {u: self.val[2 * u] == 1 for u in range(1, self.n + 1)}
                if not verify_assignment(self.formula, model):
                    raise RuntimeError("internal error: solver produced a non-satisfying model")
                return result(Status.SAT, model)
            self.decisions += 1
            if deadline is not None and self.decisions % 1024 == 0 and time.perf_counter() > deadline:
                return result(Status.UNKNOWN)
            self.trail_lim.append(len(self.trail))
            self._assign(2 * v + self.polarity[v], None)


def solve(f: BoolClauseSet, budget: Optional[Budget] = None, seed: Optional[int] = None) -> SolveResult:
    """Solve a clause-set with a fresh embedded solver."""
    return Solver(f, seed=seed).solve(budget)
