"""Command-line interface: ``aprsat <command> [options]``.

Exit codes: 0 success/exact, 1 invalid certificate or runtime failure,
2 usage error, 10 lower bound only, 20 solver gave up (UNKNOWN).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .drivers import (
    SearchAborted,
    alpha_steplist,
    compute_number,
    compute_transversal_sequence,
    extension_numbers_from_tau,
    format_certificate,
    parse_certificate,
    verify_certificate,
)
from .estimation import count_progressions_many, estimate_count, fit_count_model, read_samples
from .hypergraph import Family
from .instances import ParameterTuple, build_instance
from .satcore import Budget, DimacsError, ExternalSolverError, Status, parse_dimacs, solve, write_dimacs
from .translation import TranslationKind, translate

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_LOWER_BOUND = 10
EXIT_UNKNOWN = 20


class UsageError(Exception):
    pass


def _tuple_arg(text: str) -> ParameterTuple:
    try:
        return ParameterTuple.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _kind_arg(text: str) -> TranslationKind:
    try:
        return TranslationKind.parse(text)
    except ValueError:
        names = ", ".join(k.value for k in TranslationKind)
        raise argparse.ArgumentTypeError(f"unknown translation {text!r} (choose from {names})") from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _budget(args) -> Optional[Budget]:
    if args.budget is None and args.conflicts is None:
        return None
    return Budget(conflicts=args.conflicts, seconds=args.budget)


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=float, metavar="SECONDS", help="time limit per solve")
    p.add_argument("--conflicts", type=_positive, help="conflict limit per solve (embedded solver)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aprsat", description="SAT-based search for van der Waerden and Green-Tao numbers.")
    sub = parser.add_subparsers(dest="command", required=True)
    families = [f.value for f in Family]

    p = sub.add_parser("gen", help="write the boolean CNF for one (family, tuple, n)")
    p.add_argument("--family", choices=families, required=True)
    p.add_argument("--tuple", type=_tuple_arg, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--translation", type=_kind_arg, default=TranslationKind.WEAK_NESTED)
    p.add_argument("--out", type=Path, help="output file (default: standard output)")

    p = sub.add_parser("solve", help="solve a DIMACS file with the embedded solver")
    p.add_argument("cnf", type=Path)
    p.add_argument("--seed", type=int)
    _add_budget(p)

    p = sub.add_parser("number", help="scan n upward until the instance becomes unsatisfiable")
    p.add_argument("--family", choices=families, required=True)
    p.add_argument("--tuple", type=_tuple_arg, required=True)
    p.add_argument("--translation", type=_kind_arg, default=TranslationKind.WEAK_NESTED)
    p.add_argument("--nstart", type=_positive, default=1)
    p.add_argument("--nmax", type=_positive, required=True)
    p.add_argument("--external", metavar="CMD", help="external DIMACS solver command")
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--certificate", type=Path, help="where to write the certificate (default: derived name)")
    p.add_argument("--quiet", action="store_true", help="only print the result line")
    _add_budget(p)

    p = sub.add_parser("transversal", help="transversal numbers of the size-k hypergraphs")
    p.add_argument("--family", choices=families, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--nmax", type=_positive, required=True)
    p.add_argument("--external", metavar="CMD")
    _add_budget(p)

    p = sub.add_parser("verify", help="check a certificate colouring")
    p.add_argument("--family", choices=families, required=True)
    p.add_argument("--tuple", type=_tuple_arg, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--certificate", type=Path, required=True)

    p = sub.add_parser("estimate", help="fit the progression-count model and predict counts")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--samples", type=Path, help="file of 'n count' lines (default: exact counts over --range)")
    p.add_argument("--family", choices=families, default=Family.GT.value, help="family for generated samples")
    p.add_argument("--range", nargs=3, type=_positive, metavar=("FROM", "TO", "STEP"), default=(500, 5000, 500))
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--at", type=_positive, action="append", required=True, help="n to predict (repeatable)")
    p.add_argument("--exact", action="store_true", help="also print the exact count and relative error")
    return parser


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from None


def cmd_gen(args, out) -> int:
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    nb = build_instance(args.family, args.tuple, args.n)
    cnf, varmap = translate(nb, args.translation)
    if args.out is None:
        write_dimacs(cnf, varmap, sink=out)
        print(f"{cnf.num_vars} {len(cnf.clauses)}", file=sys.stderr)
        return EXIT_OK
    try:
        with open(args.out, "w", newline="\n") as fh:
            write_dimacs(cnf, varmap, sink=fh)
    except OSError as exc:
        raise UsageError(f"{args.out}: {exc.strerror or exc}") from None
    print(f"{cnf.num_vars} {len(cnf.clauses)}", file=out)
    return EXIT_OK


def cmd_solve(args, out) -> int:
    try:
        cnf = parse_dimacs(_read(args.cnf))
    except DimacsError as exc:
        raise UsageError(f"{args.cnf}: {exc}") from None
    res = solve(cnf, _budget(args), seed=args.seed)
    print(f"c conflicts {res.conflicts} decisions {res.decisions} seconds {res.seconds:.3f}", file=out)
    if res.status is Status.SAT:
        print("s SATISFIABLE", file=out)
        lits = [v if res.model[v] else -v for v in range(1, cnf.num_vars + 1)]
        for i in range(0, len(lits), 20):
            print("v " + " ".join(map(str, lits[i : i + 20])), file=out)
        print("v 0", file=out)
        return EXIT_OK
    if res.status is Status.UNSAT:
        print("s UNSATISFIABLE", file=out)
        return EXIT_OK
    print("s UNKNOWN", file=out)
    return EXIT_UNKNOWN


def _certificate_path(args, result) -> Path:
    if args.certificate is not None:
        return args.certificate
    entries = "-".join(map(str, args.tuple))
    return Path(f"{args.family}_{entries}_{result.certificate_n}.cert")


def cmd_number(args, out) -> int:
    if args.nstart > args.nmax:
        raise UsageError("--nstart exceeds --nmax")
    on_record = None if args.quiet else (lambda rec: print(f"c {rec}", file=out, flush=True))
    try:
        result = compute_number(
            args.family,
            args.tuple,
            args.translation,
            n_start=args.nstart,
            n_max=args.nmax,
            budget=_budget(args),
            solver=args.external,
            jobs=args.jobs,
            on_record=on_record,
        )
    except SearchAborted as exc:
        print(f"unknown: {exc}; {exc.partial}", file=out)
        return EXIT_UNKNOWN
    if result.certificate_n > 0:
        path = _certificate_path(args, result)
        try:
            path.write_text(format_certificate(result.certificate))
        except OSError as exc:
            raise UsageError(f"{path}: {exc.strerror or exc}") from None
        print(f"c certificate for n={result.certificate_n} written to {path}", file=out)
    print(result, file=out)
    return EXIT_OK if result.status == "exact" else EXIT_LOWER_BOUND


def cmd_transversal(args, out) -> int:
    if args.k < 2:
        raise UsageError("--k must be >= 2")
    try:
        seq = compute_transversal_sequence(args.family, args.k, args.nmax, _budget(args), args.external)
    except SearchAborted as exc:
        print(f"unknown: {exc}", file=out)
        return EXIT_UNKNOWN
    thresholds = extension_numbers_from_tau(seq)
    print("tau " + " ".join(map(str, seq.taus)), file=out)
    print("thresholds " + " ".join(str(thresholds[m]) for m in sorted(thresholds)), file=out)
    print("alpha-steps " + " ".join(map(str, alpha_steplist(seq))), file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    try:
        colouring = parse_certificate(_read(args.certificate))
        ok = verify_certificate(args.family, args.tuple, args.n, colouring)
    except ValueError as exc:
        print(f"invalid: {args.certificate}: {exc}", file=out)
        return EXIT_FAIL
    print("valid" if ok else "invalid: monochromatic progression found", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_estimate(args, out) -> int:
    if args.samples is not None:
        try:
            samples = read_samples(_read(args.samples))
        except ValueError as exc:
            raise UsageError(f"{args.samples}: {exc}") from None
    else:
        lo, hi, step = args.range
        ns = range(lo, hi + 1, step)
        counts = count_progressions_many(args.family, args.k, ns)
        samples = [(n, counts[n]) for n in ns]
    model = fit_count_model(args.k, samples, args.order)
    print(f"model k={model.k} C={model.C:.10g} a=" + ",".join(f"{a:.10g}" for a in model.a), file=out)
    exact = count_progressions_many(args.family, args.k, args.at) if args.exact else {}
    for n in args.at:
        est = estimate_count(model, n)
        if args.exact:
            rel = abs(est - exact[n]) / exact[n] if exact[n] else float("inf")
            print(f"{n} {est:.1f} {exact[n]} {rel:.4f}", file=out)
        else:
            print(f"{n} {est:.1f}", file=out)
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "solve": cmd_solve,
    "number": cmd_number,
    "transversal": cmd_transversal,
    "verify": cmd_verify,
    "estimate": cmd_estimate,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"aprsat {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ExternalSolverError) as exc:
        print(f"aprsat {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
