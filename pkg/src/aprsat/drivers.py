"""Number searches on top of the instance builders, translations and solvers."""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from .cardinality import encode_exactly
from .hypergraph import Family, family_vertices, progressions
from .instances import ParameterTuple, build_instance
from .satcore import BoolClauseSet, Budget, SolveResult, Status, run_external, solve
from .translation import TranslationKind, decode_model, translate

__all__ = [
    "Colouring",
    "ThresholdResult",
    "NumberResult",
    "SolveRecord",
    "SearchAborted",
    "TransversalSequence",
    "decide_threshold",
    "compute_number",
    "verify_certificate",
    "compute_transversal_sequence",
    "extension_numbers_from_tau",
    "alpha_steplist",
    "transversal_extension_upper_bound",
    "complete_hypergraph_gcr",
    "format_certificate",
    "parse_certificate",
]

# colour index (1-based) -> vertices of that colour
Colouring = dict[int, frozenset[int]]


@dataclass(frozen=True)
class SolveRecord:
    """One line of a search log."""

    family: Family
    tuple: ParameterTuple
    n: int
    status: Status
    conflicts: int
    seconds: float

    def __str__(self) -> str:
        return f"{self.family.value} {self.tuple} {self.n} {self.status.value} {self.conflicts} {self.seconds:.3f}"


@dataclass
class ThresholdResult:
    status: Status
    colouring: Optional[Colouring]
    record: SolveRecord


@dataclass
class NumberResult:
    family: Family
    tuple: ParameterTuple
    kind: Optional[TranslationKind]
    status: str  # "exact" or "lower-bound"
    value: int
    certificate: Optional[Colouring]
    certificate_n: int
    log: list[SolveRecord] = field(default_factory=list)

    def __str__(self) -> str:
        if self.status == "exact":
            return f"exact {self.value}"
        return f"lower-bound > {self.value - 1}"


class SearchAborted(RuntimeError):
    """A solve returned UNKNOWN; `partial` holds what was established so far."""

    def __init__(self, message: str, partial):
        super().__init__(message)
        self.partial = partial


def _as_tuple(t) -> ParameterTuple:
    return t if isinstance(t, ParameterTuple) else ParameterTuple(tuple(t))


Solver = Union[None, str, Sequence[str], Callable[[BoolClauseSet, Optional[Budget]], SolveResult]]


def _run(f: BoolClauseSet, budget: Optional[Budget], solver: Solver) -> SolveResult:
    if solver is None:
        return solve(f, budget)
    if callable(solver):
        return solver(f, budget)
    return run_external(solver, f, budget)


def _colouring(assignment: Mapping[int, int], m: int) -> Colouring:
    classes: dict[int, set[int]] = {i: set() for i in range(1, m + 1)}
    for v, colour in assignment.items():
        classes[colour].add(v)
    return {i: frozenset(vs) for i, vs in classes.items()}


def _decide_simple(family: Family, t: ParameterTuple, n: int) -> ThresholdResult:
    t0 = time.perf_counter()
    vertices = family_vertices(family, n)
    ok = not progressions(vertices, t[0])
    record = SolveRecord(family, t, n, Status.SAT if ok else Status.UNSAT, 0, time.perf_counter() - t0)
    return ThresholdResult(record.status, {1: frozenset(vertices)} if ok else None, record)


def decide_threshold(
    family,
    t,
    n: int,
    kind=TranslationKind.WEAK_NESTED,
    budget: Optional[Budget] = None,
    solver: Solver = None,
) -> ThresholdResult:
    """Is there a colouring of the first n vertices avoiding every k_i-progression in colour i?

    SAT answers carry the decoded colouring, checked before it is returned.
    """
    family = Family.parse(family)
    t = _as_tuple(t)
    kind = TranslationKind.parse(kind)
    if t.m == 1:
        return _decide_simple(family, t, n)
    nb = build_instance(family, t, n)
    cnf, varmap = translate(nb, kind)
    res = _run(cnf, budget, solver)
    record = SolveRecord(family, t, n, res.status, res.conflicts, res.seconds)
    if res.status is not Status.SAT:
        return ThresholdResult(res.status, None, record)
    colouring = _colouring(decode_model(nb, kind, varmap, res.model), t.m)
    if not verify_certificate(family, t, n, colouring):
        raise RuntimeError(f"decoded colouring for n={n} is not a valid certificate")
    return ThresholdResult(Status.SAT, colouring, record)


def _decide_job(args):
    family, entries, n, kind, budget, solver = args
    return decide_threshold(family, entries, n, kind, budget, solver)


def compute_number(
    family,
    t,
    kind=TranslationKind.WEAK_NESTED,
    n_start: int = 1,
    n_max: int = 100,
    budget: Optional[Budget] = None,
    solver: Solver = None,
    jobs: int = 1,
    on_record: Optional[Callable[[SolveRecord], None]] = None,
) -> NumberResult:
    """Scan n upward; the first unsatisfiable n is the number.

    Nesting of the instances means a single UNSAT n settles it. With no UNSAT
    up to n_max the result is the lower bound "> n_max". `budget` applies per solve.
    """
    family = Family.parse(family)
    t = _as_tuple(t)
    kind = TranslationKind.parse(kind)
    if n_start > n_max:
        raise ValueError(f"n_start {n_start} exceeds n_max {n_max}")
    n_start = max(n_start, 1)
    log: list[SolveRecord] = []
    last_sat: Optional[ThresholdResult] = None
    last_sat_n = 0

    def partial() -> NumberResult:
        value = last_sat_n + 1
        cert = last_sat.colouring if last_sat else {i: frozenset() for i in range(1, t.m + 1)}
        return NumberResult(family, t, kind, "lower-bound", value, cert, last_sat_n, log)

    def note(n: int, res: ThresholdResult) -> Optional[NumberResult]:
        nonlocal last_sat, last_sat_n
        log.append(res.record)
        if on_record is not None:
            on_record(res.record)
        if res.status is Status.UNKNOWN:
            raise SearchAborted(f"solver budget exhausted at n={n}", partial())
        if res.status is Status.SAT:
            last_sat, last_sat_n = res, n
            return None
        if last_sat_n != n - 1:
            # first UNSAT at the starting point: confirm the level below is satisfiable
            below = decide_threshold(family, t, n - 1, kind, budget, solver) if n > 1 else None
            if below is not None:
                log.append(below.record)
                if below.status is Status.UNKNOWN:
                    raise SearchAborted(f"solver budget exhausted at n={n - 1}", partial())
                if below.status is Status.UNSAT:
                    raise ValueError(f"n_start={n_start} is above the number: n={n - 1} is already unsatisfiable")
                last_sat, last_sat_n = below, n - 1
            else:
                last_sat, last_sat_n = None, 0
        cert = last_sat.colouring if last_sat else {i: frozenset() for i in range(1, t.m + 1)}
        return NumberResult(family, t, kind, "exact", n, cert, n - 1, log)

    if jobs <= 1:
        for n in range(n_start, n_max + 1):
            done = note(n, decide_threshold(family, t, n, kind, budget, solver))
            if done is not None:
                return done
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            n = n_start
            while n <= n_max:
                window = list(range(n, min(n + jobs, n_max + 1)))
                args = [(family, t.entries, w, kind, budget, solver) for w in window]
                # results are consumed in order of n, so the least UNSAT n wins
                for w, res in zip(window, pool.map(_decide_job, args)):
                    done = note(w, res)
                    if done is not None:
                        return done
                n = window[-1] + 1
    return partial()


def verify_certificate(family, t, n: int, colouring: Mapping[int, Iterable[int]]) -> bool:
    """Does the colouring of the first n vertices avoid a k_i-progression in every colour i?"""
    family = Family.parse(family)
    t = _as_tuple(t)
    vertices = family_vertices(family, n)
    classes = {int(i): set(vs) for i, vs in colouring.items()}
    if any(not 1 <= i <= t.m for i in classes):
        raise ValueError(f"colour indices must lie in 1..{t.m}")
    seen: set[int] = set()
    for vs in classes.values():
        if vs & seen:
            raise ValueError("colour classes overlap")
        seen |= vs
    if seen != set(vertices):
        raise ValueError(f"colouring is not a partition of the first {n} vertices")
    for i, vs in classes.items():
        if _contains_progression(sorted(vs), t[i - 1]):
            return False
    return True


def _contains_progression(values: list[int], k: int) -> bool:
    if k <= 1:
        return bool(values)
    if k == 2:
        return len(values) >= 2
    vset = set(values)
    for i, a in enumerate(values):
        for b in values[i + 1 :]:
            d = b - a
            if a + (k - 1) * d > values[-1]:
                break
            if all(a + j * d in vset for j in range(2, k)):
                return True
    return False


def format_certificate(colouring: Mapping[int, Iterable[int]]) -> str:
    return "".join(f"{i}: {' '.join(map(str, sorted(colouring[i])))}".rstrip() + "\n" for i in sorted(colouring))


def parse_certificate(text: str) -> Colouring:
    out: dict[int, frozenset[int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise ValueError(f"certificate line {lineno}: expected '<colour>: <vertices>'")
        try:
            colour = int(head)
            vertices = frozenset(int(tok) for tok in rest.split())
        except ValueError:
            raise ValueError(f"certificate line {lineno}: malformed entry {line!r}") from None
        if colour in out:
            raise ValueError(f"certificate line {lineno}: colour {colour} listed twice")
        out[colour] = vertices
    return out


@dataclass
class TransversalSequence:
    """tau(1), tau(2), ...: transversal numbers of the size-k hypergraphs on the first n vertices."""

    family: Family
    k: int
    taus: list[int]
    log: list[SolveRecord] = field(default_factory=list)

    def __post_init__(self):
        if self.taus and self.taus[0] not in (0, 1):
            raise ValueError("tau(1) must be 0 or 1")
        for a, b in zip(self.taus, self.taus[1:]):
            if b - a not in (0, 1):
                raise ValueError(f"consecutive transversal numbers must differ by 0 or 1: {a}, {b}")

    def tau(self, n: int) -> int:
        return self.taus[n - 1]

    @property
    def n_max(self) -> int:
        return len(self.taus)


def _transversal_cnf(vertices: list[int], edges: list[tuple[int, ...]], b: int) -> BoolClauseSet:
    index = {v: i for i, v in enumerate(vertices, start=1)}
    n = len(vertices)
    enc = encode_exactly(list(range(1, n + 1)), b, n + 1)
    f = BoolClauseSet(n + enc.num_aux)
    for e in edges:
        f.add(index[v] for v in e)
    f.extend(enc.clauses)
    return f


def compute_transversal_sequence(
    family,
    k: int,
    n_max: int,
    budget: Optional[Budget] = None,
    solver: Solver = None,
) -> TransversalSequence:
    """tau_k(1..n_max) with one SAT query per step: keep tau if a transversal of the old size exists."""
    family = Family.parse(family)
    if k < 2:
        raise ValueError(f"progression size must be >= 2, got {k}")
    taus: list[int] = []
    log: list[SolveRecord] = []
    vertices = family_vertices(family, n_max)
    t = ParameterTuple((k,))
    if n_max >= 1:
        taus.append(0)
    for n in range(2, n_max + 1):
        prefix = vertices[:n]
        b = taus[-1]
        edges = progressions(prefix, k)
        res = _run(_transversal_cnf(prefix, edges, b), budget, solver)
        log.append(SolveRecord(family, t, n, res.status, res.conflicts, res.seconds))
        if res.status is Status.UNKNOWN:
            raise SearchAborted(f"solver budget exhausted at n={n}", TransversalSequence(family, k, taus, log))
        taus.append(b if res.status is Status.SAT else b + 1)
    return TransversalSequence(family, k, taus, log)


def extension_numbers_from_tau(seq: TransversalSequence) -> dict[int, int]:
    """m -> smallest n with tau(n) > m, for every m the sequence reaches."""
    out: dict[int, int] = {}
    for n, tau in enumerate(seq.taus, start=1):
        for m in range(tau):
            out.setdefault(m, n)
    return out


def alpha_steplist(seq: TransversalSequence) -> list[int]:
    """a_i = smallest n with alpha(n) = n - tau(n) = i, for i = 1, 2, ..."""
    steps: list[int] = []
    for n, tau in enumerate(seq.taus, start=1):
        alpha = n - tau
        if alpha > len(steps):
            steps.append(n)
    return steps


def transversal_extension_upper_bound(t, m: int, base: int) -> int:
    """Upper bound (m + 1) * base for the tuple with m twos prepended, base being the number of t."""
    _as_tuple(t)
    if m < 0:
        raise ValueError("extension length must be >= 0")
    return (m + 1) * base


def complete_hypergraph_gcr(ks: Sequence[int], q: Union[Fraction, float, int, str]) -> int:
    """Least integer n > ((sum ks) - len(ks)) / q, computed exactly."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError(f"q must be positive, got {q}")
    if any(k < 2 for k in ks):
        raise ValueError("all sizes must be >= 2")
    bound = Fraction(sum(ks) - len(ks)) / q
    return math.floor(bound) + 1
