"""Constrained integer least-squares: alphabet, equality, sparsity and rank constraints.

Minimizes ||Y - G X||_F^2 over integer matrices X with entries in a finite
alphabet, rows in the null space of A with bounded nonzero count, and full
row rank.  The solve enumerates the feasible rows exactly (dioph), decodes
columns with a finite-alphabet sphere decoder (spheredec) and assembles a
rank-constrained optimum by backtracking search (assembler).  Brute-force
reference implementations live in oracle; reproducible instance generation
and benchmarks in harness; the command line in cli.
"""

from .assembler import (
    InfeasibleError,
    ProblemInstance,
    RowTreeBundle,
    SolveResult,
    SolveStats,
    derive_column_sets,
    objective,
    prune_with_column,
    solve,
    solve_ils_eq,
    stack_independent,
    verify_solution,
)
from .dioph import (
    Alphabet,
    DiophStats,
    IntVector,
    SolutionTree,
    solve_diophantine_sparse,
    solve_single_equation,
    tree_leaves,
)
from .harness import BenchRecord, GenSpec, GenerationError, generate_instance, run_bench
from .intlin import HnfResult, IntMatrix, hermite_normal_form, int_det, int_rank, validate_hnf
from .oracle import BudgetExceededError, OracleBudget, oracle_F, oracle_solve, oracle_sphere
from .spheredec import (
    CandidateSets,
    SphereCandidate,
    babai_radius,
    qr_positive,
    sphere_decode,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BenchRecord",
    "BudgetExceededError",
    "CandidateSets",
    "DiophStats",
    "GenSpec",
    "GenerationError",
    "HnfResult",
    "InfeasibleError",
    "IntMatrix",
    "IntVector",
    "OracleBudget",
    "ProblemInstance",
    "RowTreeBundle",
    "SolutionTree",
    "SolveResult",
    "SolveStats",
    "SphereCandidate",
    "babai_radius",
    "derive_column_sets",
    "generate_instance",
    "hermite_normal_form",
    "int_det",
    "int_rank",
    "objective",
    "oracle_F",
    "oracle_solve",
    "oracle_sphere",
    "prune_with_column",
    "qr_positive",
    "run_bench",
    "solve",
    "solve_diophantine_sparse",
    "solve_ils_eq",
    "solve_single_equation",
    "sphere_decode",
    "stack_independent",
    "tree_leaves",
    "validate_hnf",
    "verify_solution",
]
