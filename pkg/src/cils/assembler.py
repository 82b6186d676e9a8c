"""Assemble full-rank solutions of the constrained integer least-squares problem.

Problem: minimize ||Y - G X||_F^2 over integer matrices X whose entries come
from a finite alphabet, whose rows each satisfy A x = 0 with at most K
nonzeros, and whose rank equals the number of rows N.

The solve runs in two stages.  Stage one enumerates the feasible row set F
once (see dioph).  Stage two keeps one copy of F per output row and walks the
columns left to right: for each column it derives the per-row candidate
values still consistent with the choices so far, sphere-decodes that column
of Y against G inside the current radius, and recurses on each returned
column vector after pruning the row sets.  Leaves are rank-checked exactly.
If a radius yields nothing the radius grows by 1; once an incumbent exists
the search prunes on accumulated distance and finishes with a confirming
sweep at the incumbent's own radius when that is larger than the current one.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .dioph import Alphabet, IntVector, solve_diophantine_sparse, tree_leaves
from .intlin import IntMatrix, int_rank
from .spheredec import CandidateSets, babai_radius, sphere_decode


class InfeasibleError(Exception):
    """No X satisfies all constraints; carries the attainable rank as evidence."""

    def __init__(self, message: str, feasible_rank: int | None = None):
        super().__init__(message)
        self.feasible_rank = feasible_rank


@dataclass(frozen=True)
class ProblemInstance:
    """One constrained integer least-squares instance.

    Y is M x L, G is M x N, A is P x L; every row of the N x L unknown X must
    lie in the alphabet, satisfy A x = 0, and carry at most `sparsity`
    nonzeros, and X must have rank `target_rank` (= N).  `radius` optionally
    fixes the initial sphere radius; when None a rounding-based radius is
    derived per solve.
    """

    Y: np.ndarray
    G: np.ndarray
    A: IntMatrix
    alphabet: Alphabet
    sparsity: int
    target_rank: int
    radius: float | None = None

    def __post_init__(self) -> None:
        Y = np.array(self.Y, dtype=float)
        G = np.array(self.G, dtype=float)
        if Y.ndim != 2 or G.ndim != 2:
            raise ValueError("Y and G must be 2-D")
        if not (np.all(np.isfinite(Y)) and np.all(np.isfinite(G))):
            raise ValueError("Y and G entries must be finite")
        if Y.shape[0] != G.shape[0]:
            raise ValueError(
                f"Y has {Y.shape[0]} rows but G has {G.shape[0]}; both hold one measurement per row"
            )
        if Y.shape[1] != self.A.cols:
            raise ValueError(
                f"Y has {Y.shape[1]} columns but A has {self.A.cols}; both index the same coordinates"
            )
        if self.target_rank != G.shape[1]:
            raise ValueError(
                f"target rank {self.target_rank} must equal the column count of G ({G.shape[1]})"
            )
        if self.target_rank < 1:
            raise ValueError("target rank must be at least 1")
        if self.target_rank > self.A.cols:
            raise ValueError(
                f"target rank {self.target_rank} exceeds row length {self.A.cols}"
            )
        if not 0 <= self.sparsity <= self.A.cols:
            raise ValueError(
                f"sparsity budget {self.sparsity} must lie in [0, {self.A.cols}]"
            )
        if self.radius is not None and not float(self.radius) > 0.0:
            raise ValueError("radius, when given, must be positive")
        Y.setflags(write=False)
        G.setflags(write=False)
        object.__setattr__(self, "Y", Y)
        object.__setattr__(self, "G", G)
        if self.radius is not None:
            object.__setattr__(self, "radius", float(self.radius))

    @property
    def n_rows(self) -> int:
        return self.target_rank

    @property
    def n_cols(self) -> int:
        return self.A.cols

    @property
    def n_meas(self) -> int:
        return self.Y.shape[0]


@dataclass
class SolveStats:
    dioph_nodes: int = 0
    sphere_calls: int = 0
    radius_expansions: int = 0
    backtracks: int = 0
    wall_time: float = 0.0


@dataclass(frozen=True)
class SolveResult:
    X: IntMatrix
    objective: float
    stats: SolveStats


@dataclass(frozen=True)
class RowTreeBundle:
    """Per output row, the feasible row vectors still consistent with all pruning."""

    rows: tuple[tuple[IntVector, ...], ...]

    @classmethod
    def initial(cls, feasible: list[IntVector], n_rows: int) -> "RowTreeBundle":
        if n_rows < 1:
            raise ValueError("need at least one row")
        shared = tuple(feasible)
        if not shared:
            raise ValueError("feasible set is empty")
        return cls((shared,) * n_rows)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def is_settled(self) -> bool:
        return all(len(r) == 1 for r in self.rows)


def derive_column_sets(bundle: RowTreeBundle, j: int) -> CandidateSets:
    """Candidate values of column j per row: the j-th entries of the survivors."""
    sets = []
    for i, vectors in enumerate(bundle.rows):
        vals = sorted({v[j] for v in vectors})
        if not vals:
            raise InfeasibleError(f"row {i} has no surviving candidates")
        sets.append(Alphabet(tuple(vals)))
    return CandidateSets(tuple(sets))


def prune_with_column(bundle: RowTreeBundle, j: int, x_col: IntVector) -> RowTreeBundle:
    """Keep, per row i, only survivors whose j-th entry equals x_col[i].

    Rows already settled to a single vector are left untouched, so a column
    choice can never contradict an earlier settled row.  Raises ValueError if
    the choice would empty an unsettled row, since the decoder only proposes
    values drawn from the survivors.
    """
    if len(x_col) != bundle.n_rows:
        raise ValueError(f"column has {len(x_col)} entries for {bundle.n_rows} rows")
    new_rows = []
    for i, vectors in enumerate(bundle.rows):
        if len(vectors) == 1:
            new_rows.append(vectors)
            continue
        kept = tuple(v for v in vectors if v[j] == x_col[i])
        if not kept:
            raise ValueError(
                f"value {x_col[i]} at column {j} eliminates every candidate for row {i}"
            )
        new_rows.append(kept)
    return RowTreeBundle(tuple(new_rows))


def objective(Y, G, X: IntMatrix) -> float:
    """Squared Frobenius residual ||Y - G X||_F^2."""
    Y = np.asarray(Y, dtype=float)
    G = np.asarray(G, dtype=float)
    Xf = np.array(X.entries, dtype=float)
    if Y.shape != (G.shape[0], Xf.shape[1]) or G.shape[1] != Xf.shape[0]:
        raise ValueError(
            f"shape mismatch: Y {Y.shape}, G {G.shape}, X {Xf.shape}"
        )
    r = Y - G @ Xf
    return float(np.sum(r * r))


def verify_solution(instance: ProblemInstance, X: IntMatrix) -> None:
    """Raise ValueError unless X satisfies every constraint of the instance."""
    if X.rows != instance.n_rows or X.cols != instance.n_cols:
        raise ValueError(
            f"X is {X.rows}x{X.cols}, expected {instance.n_rows}x{instance.n_cols}"
        )
    for i, row in enumerate(X.entries):
        bad = [v for v in row if v not in instance.alphabet]
        if bad:
            raise ValueError(f"row {i} contains out-of-alphabet values {bad}")
        nz = sum(1 for v in row if v)
        if nz > instance.sparsity:
            raise ValueError(f"row {i} has {nz} nonzeros, budget is {instance.sparsity}")
    if not (instance.A @ X.transpose()).is_zero():
        raise ValueError("X violates the linear constraint A x = 0 on some row")
    r = int_rank(X)
    if r != instance.target_rank:
        raise ValueError(f"X has rank {r}, required {instance.target_rank}")


def _search(
    instance: ProblemInstance,
    bundle0: RowTreeBundle,
    d: float,
    incumbent: tuple[float, IntMatrix] | None,
    stats: SolveStats,
) -> tuple[float, IntMatrix] | None:
    """Exhaustive column-wise search at radius d; returns an improvement or None.

    Any leaf strictly better than the incumbent (any leaf at all when there
    is none) updates the running best; the branch-and-bound step discards a
    column candidate as soon as the accumulated squared distance already
    meets the best objective, which cannot discard a strict improvement.
    """
    Y, G = instance.Y, instance.G
    n_cols = instance.n_cols
    best_obj = math.inf if incumbent is None else incumbent[0]
    best_X: IntMatrix | None = None

    def recurse(j: int, bundle: RowTreeBundle, acc: float) -> None:
        nonlocal best_obj, best_X
        if j == n_cols:
            X = IntMatrix(tuple(vectors[0] for vectors in bundle.rows))
            if int_rank(X) != instance.target_rank:
                stats.backtracks += 1
                return
            obj = objective(Y, G, X)
            if obj < best_obj:
                best_obj = obj
                best_X = X
            return
        sets = derive_column_sets(bundle, j)
        candidates = sphere_decode(Y[:, j], G, d, sets)
        stats.sphere_calls += 1
        if not candidates:
            stats.backtracks += 1
            return
        for cand in candidates:
            if acc + cand.dist2 >= best_obj:
                break
            recurse(j + 1, prune_with_column(bundle, j, cand.x), acc + cand.dist2)

    recurse(0, bundle0, 0.0)
    if best_X is None:
        return None
    return best_obj, best_X


def solve(instance: ProblemInstance) -> SolveResult:
    """Global minimizer of ||Y - G X||_F^2 under all instance constraints.

    Raises InfeasibleError when the feasible rows cannot reach the target
    rank; the exception's feasible_rank reports what was attainable.
    """
    t0 = time.perf_counter()
    stats = SolveStats()
    tree, dstats = solve_diophantine_sparse(
        instance.A, instance.alphabet, instance.sparsity
    )
    stats.dioph_nodes = dstats.nodes_visited
    feasible = tree_leaves(tree)
    span_rank = int_rank(IntMatrix(tuple(feasible))) if feasible else 0
    if span_rank < instance.target_rank:
        raise InfeasibleError(
            f"feasible rows span rank {span_rank}, below target {instance.target_rank}",
            feasible_rank=span_rank,
        )
    bundle0 = RowTreeBundle.initial(feasible, instance.n_rows)
    if instance.radius is not None:
        d = instance.radius
    else:
        # default radius comes from rounding the first column's LS solution;
        # later columns may need more, which radius escalation supplies
        d = babai_radius(instance.Y[:, 0], instance.G, derive_column_sets(bundle0, 0))
    best = _search(instance, bundle0, d, None, stats)
    while best is None:
        d += 1.0
        stats.radius_expansions += 1
        best = _search(instance, bundle0, d, None, stats)
    # the incumbent may sit outside the last sphere; one sweep at its own
    # radius certifies global optimality (radii <= d were already exhausted)
    if best[0] > d * d:
        improved = _search(instance, bundle0, math.sqrt(best[0]), best, stats)
        if improved is not None:
            best = improved
    obj, X = best
    verify_solution(instance, X)
    stats.wall_time = time.perf_counter() - t0
    return SolveResult(X=X, objective=obj, stats=stats)


def stack_independent(vectors: list[IntVector], count: int) -> IntMatrix:
    """First `count` vectors, in order, that are linearly independent so far.

    Raises InfeasibleError when the whole list cannot supply `count`
    independent vectors.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    picked: list[IntVector] = []
    for v in vectors:
        if len(picked) == count:
            break
        trial = picked + [v]
        if int_rank(IntMatrix(tuple(trial))) == len(trial):
            picked.append(v)
    if len(picked) < count:
        raise InfeasibleError(
            f"only {len(picked)} independent vectors available, need {count}",
            feasible_rank=len(picked),
        )
    return IntMatrix(tuple(picked))


def solve_ils_eq(
    y,
    G,
    A: IntMatrix,
    alphabet: Alphabet,
    max_nonzeros: int,
    mode: str = "exact",
) -> IntVector:
    """Single-vector constrained decode: argmin ||y - G x|| over the feasible set.

    mode "exact" scans the enumerated feasible set for the true minimizer
    (ties broken lexicographically).  mode "heuristic" first sphere-decodes
    without the linear and sparsity constraints, then returns the feasible
    vector nearest the decoded point; it is cheaper but only an approximation.
    """
    if mode not in ("exact", "heuristic"):
        raise ValueError(f"unknown mode {mode!r}")
    G = np.asarray(G, dtype=float)
    if G.ndim != 2 or G.shape[1] != A.cols:
        raise ValueError(f"G must have {A.cols} columns, got shape {G.shape}")
    y = np.asarray(y, dtype=float).reshape(-1)
    if y.shape[0] != G.shape[0]:
        raise ValueError(f"y has length {y.shape[0]}, expected {G.shape[0]}")
    tree, _ = solve_diophantine_sparse(A, alphabet, max_nonzeros)
    feasible = tree_leaves(tree)
    if not feasible:
        raise InfeasibleError("no feasible vector exists", feasible_rank=0)
    if mode == "exact":

        def key(v: IntVector) -> tuple[float, IntVector]:
            r = y - G @ np.array(v, dtype=float)
            return float(np.dot(r, r)), v

        return min(feasible, key=key)
    sets = CandidateSets.uniform(alphabet, G.shape[1])
    d = babai_radius(y, G, sets)
    candidates = sphere_decode(y, G, d, sets)
    while not candidates:
        d += 1.0
        candidates = sphere_decode(y, G, d, sets)
    anchor = candidates[0].x
    return min(
        feasible,
        key=lambda v: (sum((a - b) ** 2 for a, b in zip(anchor, v)), v),
    )
