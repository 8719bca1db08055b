"""Acceptance criteria, one test per criterion; each prints a PASS/FAIL line.

The stretch goal of criterion 3 (gtz 137) needs a fast external solver and is
opt-in: set APRSAT_EXTERNAL_SOLVER to a DIMACS solver command to run it.
"""

import itertools
import os
import random
import time

import pytest

from aprsat.cardinality import encode_exactly
from aprsat.drivers import (
    alpha_steplist,
    compute_number,
    compute_transversal_sequence,
    extension_numbers_from_tau,
    transversal_extension_upper_bound,
    verify_certificate,
)
from aprsat.estimation import count_progressions_many, estimate_count, fit_count_model
from aprsat.hypergraph import Family, ap_hypergraph, first_progression_rank, independence_number_bruteforce
from aprsat.instances import NBClauseSet, build_instance, solve_nb_bruteforce
from aprsat.satcore import BoolClauseSet, Budget, Status, solve
from aprsat.translation import TranslationKind, decode_model, dp_reduce, translate


@pytest.fixture
def check(acceptance_log, capsys):
    def record(label, ok, detail, seconds):
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail} ({seconds:.1f}s)"
        acceptance_log.append(line)
        with capsys.disabled():
            print(f"\n{line}")
        assert ok, line

    return record


def _numbers(cases, kind, limit):
    """Run each (family, tuple, expected); returns (all ok, detail, worst seconds)."""
    details, ok, worst = [], True, 0.0
    for family, t, expected in cases:
        t0 = time.perf_counter()
        res = compute_number(family, t, kind, n_start=1, n_max=expected + 5)
        dt = time.perf_counter() - t0
        worst = max(worst, dt)
        good = (
            res.status == "exact"
            and res.value == expected
            and verify_certificate(family, t, expected - 1, res.certificate)
            and dt <= limit
        )
        ok &= good
        details.append(f"{family.value}{list(t)}={res.value if res.status == 'exact' else str(res)} in {dt:.1f}s")
    return ok, "; ".join(details), worst


def test_criterion_1_core_vdw(check):
    cases = [
        (Family.VDW, (3, 3), 9),
        (Family.VDW, (3, 4), 18),
        (Family.VDW, (3, 5), 22),
        (Family.VDW, (4, 4), 35),
        (Family.VDW, (3, 3, 3), 27),
    ]
    t0 = time.perf_counter()
    ok, detail, _ = _numbers(cases, TranslationKind.WEAK_NESTED, 120)
    check("criterion 1 core vdW numbers, each <= 120s", ok, detail, time.perf_counter() - t0)


def test_criterion_2_extended_vdw(check):
    cases = [(Family.VDW, (2, 3, 3), 14), (Family.VDW, (2, 2, 3, 3), 17), (Family.VDW, (2, 3, 3, 3), 40)]
    t0 = time.perf_counter()
    ok, detail, _ = _numbers(cases, TranslationKind.WEAK_NESTED, 600)
    check("criterion 2 extended core vdW numbers, each <= 10min", ok, detail, time.perf_counter() - t0)


def test_criterion_3_core_gt(check):
    cases = [(Family.GT, (3, 3), 23), (Family.GT, (3, 4), 79)]
    t0 = time.perf_counter()
    ok, detail, _ = _numbers(cases, TranslationKind.WEAK_NESTED, 1800)
    total = time.perf_counter() - t0
    check("criterion 3 core GT numbers, <= 30min total", ok and total <= 1800, detail, total)


def test_criterion_3_stretch_gt333(check, acceptance_log):
    command = os.environ.get("APRSAT_EXTERNAL_SOLVER")
    if not command:
        acceptance_log.append("SKIP  criterion 3 stretch gt[3,3,3]=137: opt-in, set APRSAT_EXTERNAL_SOLVER to a DIMACS solver command")
        pytest.skip("stretch goal needs APRSAT_EXTERNAL_SOLVER")
    t0 = time.perf_counter()
    # exactness needs only SAT at 136 and UNSAT at 137; starting lower adds no information
    res = compute_number(
        Family.GT, (3, 3, 3), TranslationKind.SIMPLE_LOGARITHMIC, n_start=130, n_max=140,
        budget=Budget(seconds=4 * 3600), solver=command,
    )
    dt = time.perf_counter() - t0
    ok = res.status == "exact" and res.value == 137 and dt <= 4 * 3600
    ok = ok and verify_certificate(Family.GT, (3, 3, 3), 136, res.certificate)
    check("criterion 3 stretch gt[3,3,3]=137, simple-logarithmic, <= 4h", ok, f"{res} via {command}", dt)


def test_criterion_4_extended_gt(check):
    cases = [(Family.GT, (2, 3, 3), 31), (Family.GT, (2, 2, 3, 3), 39), (Family.GT, (2, 2, 2, 3, 3), 41)]
    t0 = time.perf_counter()
    ok, detail, _ = _numbers(cases, TranslationKind.WEAK_NESTED, 1800)
    check("criterion 4 extended core GT numbers, each <= 30min", ok, detail, time.perf_counter() - t0)


def test_criterion_5_transversal_gt(check):
    expected = {3: [4, 7, 9, 13, 14, 16, 18, 21, 22, 23], 4: [9, 14, 17, 22, 26]}
    ok, details = True, []
    t_all = time.perf_counter()
    for k, want in expected.items():
        t0 = time.perf_counter()
        seq = compute_transversal_sequence(Family.GT, k, want[-1])
        got = extension_numbers_from_tau(seq)
        row = [got.get(m) for m in range(len(want))]
        dt = time.perf_counter() - t0
        ok &= row == want and dt <= 900
        details.append(f"k={k}: {' '.join(map(str, row))}")
    check("criterion 5 transversal GT numbers, each table <= 15min", ok, "; ".join(details), time.perf_counter() - t_all)


def test_criterion_6_transversal_vdw(check):
    t0 = time.perf_counter()
    seq = compute_transversal_sequence(Family.VDW, 3, 18)
    got = extension_numbers_from_tau(seq)
    row = [got.get(m) for m in range(10)]
    steps = alpha_steplist(seq)[:6]
    dt = time.perf_counter() - t0
    ok = row == [3, 6, 7, 8, 10, 12, 15, 16, 17, 18] and steps == [1, 2, 4, 5, 9, 11] and dt <= 900
    check("criterion 6 transversal vdW numbers and alpha steps, <= 15min", ok, f"{row}; steps {steps}", dt)


def test_criterion_7_simple_gt(check):
    t0 = time.perf_counter()
    got = [first_progression_rank(Family.GT, k, 1000) for k in range(3, 9)]
    dt = time.perf_counter() - t0
    check("criterion 7 simple GT numbers k=3..8, <= 60s", got == [4, 9, 10, 37, 155, 263] and dt <= 60, str(got), dt)


def _random_nb(rng):
    nvars = rng.randint(1, 5)
    m = rng.randint(2, 4)
    clauses = []
    for _ in range(rng.randint(0, 12)):
        names = rng.sample(range(1, nvars + 1), rng.randint(0, min(3, nvars)))
        clauses.append(tuple((v, rng.randint(1, m)) for v in names))
    return NBClauseSet([(v, m) for v in range(1, nvars + 1)], clauses)


def _slot_clauses(cnf, varmap):
    return {frozenset((varmap.lookup(abs(l)), l > 0) for l in c) for c in cnf.clauses}


def _brute_sat(n, clauses):
    for bits in itertools.product((False, True), repeat=n):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
            return True
    return False


def test_criterion_8_property_suites(check):
    t0 = time.perf_counter()
    results = {}
    rng = random.Random(8)

    # (a) every translation agrees with the non-boolean oracle
    bad = 0
    for _ in range(250):
        f = _random_nb(rng)
        expected = solve_nb_bruteforce(f)[0]
        for kind in TranslationKind:
            cnf, vm = translate(f, kind)
            res = solve(cnf)
            bad += (res.status is Status.SAT) != expected
            if res.status is Status.SAT:
                bad += not f.satisfied_by(decode_model(f, kind, vm, res.model))
    results["a"] = bad == 0

    # (b) eliminating the last slot of direct gives reduced
    bad = 0
    for family, m, n, strength in itertools.product(Family, (3, 4), range(1, 13), ("weak", "strong")):
        t = (3,) * m if m == 3 else (2, 3, 3, 3)
        f = build_instance(family, t, n)
        cnf, vm = translate(f, TranslationKind(f"{strength}-direct"))
        for v in f.names:
            cnf = dp_reduce(cnf, vm.index(v, m))
        target, vm_r = translate(f, TranslationKind(f"{strength}-reduced"))
        bad += _slot_clauses(cnf, vm) != _slot_clauses(target, vm_r)
    results["b"] = bad == 0

    # (c) cardinality projection
    bad = 0
    for n in range(0, 9):
        for b in range(n + 1):
            enc = encode_exactly(list(range(1, n + 1)), b, n + 1)
            for bits in itertools.product((False, True), repeat=n):
                g = BoolClauseSet(max(n, enc.max_var), enc.clauses)
                g.extend([(i,) if x else (-i,) for i, x in enumerate(bits, start=1)])
                bad += (solve(g).status is Status.SAT) != (sum(bits) == b)
    results["c"] = bad == 0

    # (d) tau step law and tau + alpha = |V|
    bad = 0
    for family, k in itertools.product(Family, (3, 4)):
        seq = compute_transversal_sequence(family, k, 22)
        bad += any(b - a not in (0, 1) for a, b in zip(seq.taus, seq.taus[1:]))
        for n in range(1, 23):
            bad += seq.tau(n) + independence_number_bruteforce(ap_hypergraph(family, k, n)) != n
    results["d"] = bad == 0

    # (e) embedded solver against exhaustive enumeration
    bad = 0
    for _ in range(600):
        n = rng.randint(1, 12)
        clauses = [
            tuple(v if rng.random() < 0.5 else -v for v in rng.sample(range(1, n + 1), min(3, n)))
            for _ in range(rng.randint(1, 5 * n))
        ]
        bad += (solve(BoolClauseSet(n, clauses)).status is Status.SAT) != _brute_sat(n, clauses)
    results["e"] = bad == 0

    # (f) the extension bound dominates the extended values of criterion 2
    known = [((3, 3), 1, 9, 14), ((3, 3), 2, 9, 17), ((3, 3, 3), 1, 27, 40)]
    results["f"] = all(transversal_extension_upper_bound(t, m, base) >= value for t, m, base, value in known)

    detail = " ".join(f"({key}) {'ok' if v else 'FAILED'}" for key, v in results.items())
    check("criterion 8 property suites", all(results.values()), detail, time.perf_counter() - t0)


def test_criterion_9_estimation(check):
    t0 = time.perf_counter()
    train = list(range(500, 5001, 500))
    counts = count_progressions_many(Family.GT, 3, train + [750, 4750])
    model = fit_count_model(3, [(n, counts[n]) for n in train], 2)
    errors = {n: abs(estimate_count(model, n) - counts[n]) / counts[n] for n in (750, 4750)}
    dt = time.perf_counter() - t0
    detail = ", ".join(f"n={n} rel.err {e:.4f}" for n, e in errors.items())
    check("criterion 9 count model held-out error < 10%, <= 60s", all(e < 0.10 for e in errors.values()) and dt <= 60, detail, dt)
