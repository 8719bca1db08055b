"""Run an external DIMACS solver as a subprocess.

The command receives the CNF path as its last argument and must print an
``s SATISFIABLE`` / ``s UNSATISFIABLE`` line, plus ``v`` lines with the model
when satisfiable. Exit codes are ignored; the output decides.
"""

from __future__ import annotations

import os
import shlex
import subprocess
import tempfile
import time
from typing import Optional, Sequence, Union

from .cnf import BoolClauseSet, verify_assignment
from .dimacs import write_dimacs
from .solver import Budget, SolveResult, Status

__all__ = ["ExternalSolverError", "run_external", "parse_solver_output"]


class ExternalSolverError(RuntimeError):
    pass


def parse_solver_output(text: str, num_vars: int) -> tuple[Status, Optional[dict[int, bool]]]:
    status = None
    lits: list[int] = []
    for line in text.splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "s" and len(parts) >= 2:
            word = " ".join(parts[1:]).upper()
            if word == "SATISFIABLE":
                status = Status.SAT
            elif word == "UNSATISFIABLE":
                status = Status.UNSAT
            elif word in ("UNKNOWN", "INDETERMINATE"):
                status = Status.UNKNOWN
            else:
                raise ExternalSolverError(f"unparseable solver output: status line {line!r}")
        elif parts[0] == "v":
            try:
                lits.extend(int(tok) for tok in parts[1:])
            except ValueError:
                raise ExternalSolverError(f"unparseable solver output: model line {line!r}") from None
    if status is None:
        raise ExternalSolverError("unparseable solver output: no 's' status line")
    if status is not Status.SAT:
        return status, None
    model = {v: False for v in range(1, num_vars + 1)}
    for lit in lits:
        if lit == 0:
            continue
        if abs(lit) > num_vars:
            raise ExternalSolverError(f"model literal {lit} outside 1..{num_vars}")
        model[abs(lit)] = lit > 0
    return status, model


def run_external(
    command: Union[str, Sequence[str]],
    f: BoolClauseSet,
    budget: Optional[Budget] = None,
) -> SolveResult:
    """Solve `f` with an external process; SAT models are checked locally."""
    argv = shlex.split(command) if isinstance(command, str) else list(command)
    if not argv:
        raise ExternalSolverError("empty solver command")
    timeout = budget.seconds if budget is not None else None
    fd, path = tempfile.mkstemp(suffix=".cnf", prefix="aprsat-")
    t0 = time.perf_counter()
    try:
        with os.fdopen(fd, "w") as fh:
            write_dimacs(f, sink=fh)
        try:
            proc = subprocess.run(argv + [path], capture_output=True, text=True, timeout=timeout)
        except subprocess.TimeoutExpired:
            return SolveResult(Status.UNKNOWN, seconds=time.perf_counter() - t0)
        except OSError as exc:
            raise ExternalSolverError(f"cannot run {argv[0]!r}: {exc}") from exc
    finally:
        os.unlink(path)
    try:
        status, model = parse_solver_output(proc.stdout, f.num_vars)
    except ExternalSolverError as exc:
        raise ExternalSolverError(f"{exc} (exit code {proc.returncode})") from None
    if model is not None and not verify_assignment(f, model):
        raise ExternalSolverError("external solver model failed verification")
    return SolveResult(status, model, seconds=time.perf_counter() - t0, extra={"exit_code": proc.returncode})
