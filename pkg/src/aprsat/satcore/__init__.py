"""Boolean CNF, the embedded CDCL solver, DIMACS I/O and the external-solver adapter."""

from .cnf import BoolClauseSet, PartialAssignmentError, verify_assignment
from .dimacs import DimacsError, dumps, parse_dimacs, parse_map_comments, write_dimacs
from .external import ExternalSolverError, parse_solver_output, run_external
from .solver import Budget, SolveResult, Solver, Status, solve

__all__ = [
    "BoolClauseSet",
    "PartialAssignmentError",
    "verify_assignment",
    "Budget",
    "SolveResult",
    "Solver",
    "Status",
    "solve",
    "DimacsError",
    "dumps",
    "parse_dimacs",
    "parse_map_comments",
    "write_dimacs",
    "ExternalSolverError",
    "parse_solver_output",
    "run_external",
]
