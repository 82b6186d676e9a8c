"""Reproducible instance generation and benchmark sweeps.

Instances are generated backwards from a planted solution: first N sparse
alphabet rows with full rank are drawn, then the constraint matrix A is built
from random integer combinations of a basis of the planted rows' integer
orthogonal complement (computed exactly via Hermite normal form).  That
construction guarantees A X^T = 0 by design, so every generated instance is
feasible; drawing A first and rejecting until the constraints admit a sparse
alphabet solution is hopeless in practice, because a random integer matrix
almost never does.

All randomness flows through numpy's seeded default generator, and per-trial
seeds are derived with SeedSequence, so runs are reproducible across machines.
"""

from __future__ import annotations

import csv
import statistics
import time
from dataclasses import dataclass, replace

import numpy as np

from .assembler import ProblemInstance, SolveResult, solve, verify_solution
from .dioph import Alphabet, IntVector
from .intlin import IntMatrix, hermite_normal_form, int_rank

CSV_HEADER = ["size", "rank", "n", "avg_time_s", "avg_nodes", "recovered", "trials"]

_MAX_ATTEMPTS = 50


class GenerationError(Exception):
    """Instance generation failed after the retry budget."""


@dataclass(frozen=True)
class GenSpec:
    """Parameters for one benchmark configuration.

    n_rows is both the number of planted rows and the target rank; n_cols is
    the row length; n_meas the number of measurement rows in Y and G;
    n_constraints the number of rows in A.  sigma scales the i.i.d. Gaussian
    noise added to Y.
    """

    n_rows: int
    n_cols: int
    n_meas: int
    alphabet: Alphabet
    n_constraints: int = 7
    sparsity: int = 4
    sigma: float = 0.2
    seed: int = 0
    trials: int = 5

    def __post_init__(self) -> None:
        if not 1 <= self.n_rows <= self.n_cols:
            raise ValueError("need 1 <= n_rows <= n_cols")
        if self.n_meas < self.n_rows:
            raise ValueError("need n_meas >= n_rows for a full-column-rank G")
        if not 1 <= self.sparsity <= self.n_cols:
            raise ValueError("sparsity must lie in [1, n_cols]")
        if self.n_constraints < 1:
            raise ValueError("need at least one constraint row")
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")
        if self.trials < 1:
            raise ValueError("need at least one trial")


@dataclass(frozen=True)
class BenchRecord:
    """Aggregate of one configuration's trials; avg_nodes counts dioph nodes."""

    spec: GenSpec
    n: int
    avg_time: float
    avg_nodes: float
    recovery_count: int


def _draw_planted_rows(rng: np.random.Generator, spec: GenSpec) -> IntMatrix | None:
    """N random sparse alphabet rows with exact rank N, or None if stuck."""
    nonzero_vals = [v for v in spec.alphabet if v != 0]
    if not nonzero_vals:
        return None
    rows: list[IntVector] = []
    for i in range(spec.n_rows):
        for _ in range(40):
            n_nz = int(rng.integers(1, spec.sparsity + 1))
            support = rng.choice(spec.n_cols, size=n_nz, replace=False)
            values = rng.choice(nonzero_vals, size=n_nz)
            row = [0] * spec.n_cols
            for c, v in zip(support, values):
                row[int(c)] = int(v)
            trial = rows + [tuple(row)]
            if int_rank(IntMatrix(tuple(trial))) == i + 1:
                rows.append(tuple(row))
                break
        else:
            return None
    return IntMatrix(tuple(rows))


def _constraint_matrix(
    rng: np.random.Generator, planted: IntMatrix, spec: GenSpec
) -> IntMatrix:
    """Random integer combinations of the planted rows' orthogonal complement.

    The complement basis comes from the unimodular transform of HNF(X^T): the
    transform rows aligned with zero rows of the echelon form span exactly the
    integer vectors orthogonal to every planted row.
    """
    hnf = hermite_normal_form(planted.transpose())
    basis = [
        hnf.U.row(i)
        for i in range(hnf.H.rows)
        if all(v == 0 for v in hnf.H.row(i))
    ]
    rows: list[IntVector] = []
    for _ in range(spec.n_constraints):
        if not basis:
            rows.append((0,) * spec.n_cols)
            continue
        for _ in range(20):
            coeffs = rng.integers(-3, 4, size=len(basis))
            combo = tuple(
                sum(int(c) * b[k] for c, b in zip(coeffs, basis))
                for k in range(spec.n_cols)
            )
            if any(combo):
                rows.append(combo)
                break
        else:
            rows.append(basis[0])
    return IntMatrix(tuple(rows))


def generate_instance(spec: GenSpec) -> tuple[ProblemInstance, IntMatrix]:
    """Draw one instance and its planted solution, deterministically from the seed."""
    rng = np.random.default_rng(spec.seed)
    for _ in range(_MAX_ATTEMPTS):
        planted = _draw_planted_rows(rng, spec)
        if planted is None:
            continue
        A = _constraint_matrix(rng, planted, spec)
        if not (A @ planted.transpose()).is_zero():
            continue
        G = np.abs(rng.standard_normal((spec.n_meas, spec.n_rows)))
        noise = rng.standard_normal((spec.n_meas, spec.n_cols)) * spec.sigma
        Y = G @ np.array(planted.entries, dtype=float) + noise
        instance = ProblemInstance(
            Y=Y,
            G=G,
            A=A,
            alphabet=spec.alphabet,
            sparsity=spec.sparsity,
            target_rank=spec.n_rows,
        )
        return instance, planted
    raise GenerationError(
        f"could not generate a feasible instance for {spec} in {_MAX_ATTEMPTS} attempts"
    )


def trial_seeds(spec: GenSpec) -> list[int]:
    """Independent per-trial seeds derived from the configuration seed."""
    state = np.random.SeedSequence(spec.seed).generate_state(spec.trials)
    return [int(s) for s in state]


def run_trial(spec: GenSpec, trial_seed: int) -> tuple[SolveResult, bool]:
    """Generate, solve, verify and score one trial; returns (result, recovered)."""
    instance, planted = generate_instance(replace(spec, seed=trial_seed))
    result = solve(instance)
    verify_solution(instance, result.X)
    return result, result.X == planted


def run_bench(specs: list[GenSpec], out_path) -> list[BenchRecord]:
    """Run every configuration and write one CSV row per configuration.

    Columns: size,rank,n,avg_time_s,avg_nodes,recovered,trials with size
    formatted as rows x cols.  Lines always end with LF.  Every solution is
    re-verified against the full constraint set before being counted.
    """
    records: list[BenchRecord] = []
    with open(out_path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for spec in specs:
            times: list[float] = []
            nodes: list[int] = []
            recovered = 0
            for t, tseed in enumerate(trial_seeds(spec)):
                t0 = time.perf_counter()
                result, hit = run_trial(spec, tseed)
                times.append(time.perf_counter() - t0)
                nodes.append(result.stats.dioph_nodes)
                recovered += int(hit)
                print(
                    f"[bench] {spec.n_rows}x{spec.n_cols} trial {t + 1}/{spec.trials}: "
                    f"objective={result.objective:.6g} nodes={result.stats.dioph_nodes} "
                    f"recovered={hit}"
                )
            record = BenchRecord(
                spec=spec,
                n=spec.n_rows * spec.n_cols,
                avg_time=statistics.fmean(times),
                avg_nodes=statistics.fmean(nodes),
                recovery_count=recovered,
            )
            records.append(record)
            writer.writerow(
                [
                    f"{spec.n_rows}x{spec.n_cols}",
                    spec.n_rows,
                    record.n,
                    f"{record.avg_time:.6f}",
                    f"{record.avg_nodes:.1f}",
                    record.recovery_count,
                    spec.trials,
                ]
            )
    return records
