"""Command-line front end: solve, check, gen, bench.

Instance files are JSON documents with keys Y (M x L reals), G (M x N reals),
A (P x L integers), S (alphabet values), K (sparsity budget), N (target
rank) and optionally d0 (initial radius).  Exit codes: 0 success, 1 input
error, 2 infeasible, 3 oracle budget refusal, 4 oracle cross-check mismatch.
The environment variable CILS_ORACLE_BUDGET overrides the oracle's
enumeration cap.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

import numpy as np

from .assembler import InfeasibleError, ProblemInstance, SolveResult, solve
from .dioph import Alphabet
from .harness import GenSpec, GenerationError, generate_instance, run_bench
from .intlin import IntMatrix
from .oracle import BudgetExceededError, OracleBudget, oracle_solve

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_BUDGET = 3
EXIT_MISMATCH = 4

_REQUIRED_KEYS = ("Y", "G", "A", "S", "K", "N")


def _fail(path, key: str, problem: str) -> ValueError:
    return ValueError(f"{path}: key {key!r}: {problem}")


def _int_matrix(path, key: str, raw) -> IntMatrix:
    if not isinstance(raw, list) or not raw or not all(isinstance(r, list) for r in raw):
        raise _fail(path, key, "expected a nonempty list of rows")
    try:
        return IntMatrix(tuple(tuple(v for v in row) for row in raw))
    except (TypeError, ValueError) as e:
        raise _fail(path, key, str(e)) from e


def _real_matrix(path, key: str, raw) -> np.ndarray:
    if not isinstance(raw, list) or not raw or not all(isinstance(r, list) for r in raw):
        raise _fail(path, key, "expected a nonempty list of rows")
    try:
        M = np.array(raw, dtype=float)
    except (TypeError, ValueError) as e:
        raise _fail(path, key, str(e)) from e
    if M.ndim != 2:
        raise _fail(path, key, "rows must all have the same length")
    return M


def load_instance(path) -> ProblemInstance:
    """Parse an instance file; all errors carry the path and offending key."""
    with open(path, "r", encoding="utf-8") as f:
        doc = json.load(f)
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: top level must be a JSON object")
    missing = [k for k in _REQUIRED_KEYS if k not in doc]
    if missing:
        raise ValueError(f"{path}: missing required keys {missing}")
    Y = _real_matrix(path, "Y", doc["Y"])
    G = _real_matrix(path, "G", doc["G"])
    A = _int_matrix(path, "A", doc["A"])
    if not isinstance(doc["S"], list):
        raise _fail(path, "S", "expected a list of integers")
    try:
        alphabet = Alphabet(tuple(doc["S"]))
    except (TypeError, ValueError) as e:
        raise _fail(path, "S", str(e)) from e
    if not isinstance(doc["K"], int) or isinstance(doc["K"], bool):
        raise _fail(path, "K", "expected an integer")
    if not isinstance(doc["N"], int) or isinstance(doc["N"], bool):
        raise _fail(path, "N", "expected an integer")
    radius = None
    if "d0" in doc and doc["d0"] is not None:
        if not isinstance(doc["d0"], (int, float)) or isinstance(doc["d0"], bool):
            raise _fail(path, "d0", "expected a number")
        radius = float(doc["d0"])
    try:
        return ProblemInstance(
            Y=Y,
            G=G,
            A=A,
            alphabet=alphabet,
            sparsity=doc["K"],
            target_rank=doc["N"],
            radius=radius,
        )
    except ValueError as e:
        raise ValueError(f"{path}: invalid instance: {e}") from e


def _instance_document(instance: ProblemInstance) -> dict:
    doc = {
        "Y": [[float(v) for v in row] for row in instance.Y],
        "G": [[float(v) for v in row] for row in instance.G],
        "A": [list(row) for row in instance.A.entries],
        "S": list(instance.alphabet.values),
        "K": instance.sparsity,
        "N": instance.target_rank,
    }
    if instance.radius is not None:
        doc["d0"] = instance.radius
    return doc


def _write_json(path, doc) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        json.dump(doc, f, indent=2, sort_keys=True)
        f.write("\n")


def _oracle_budget() -> OracleBudget:
    raw = os.environ.get("CILS_ORACLE_BUDGET")
    if raw is None:
        return OracleBudget()
    try:
        return OracleBudget(max_enumeration=int(raw))
    except ValueError as e:
        raise ValueError(f"CILS_ORACLE_BUDGET: {e}") from e


def _result_document(result: SolveResult) -> dict:
    return {
        "X": [list(row) for row in result.X.entries],
        "objective": result.objective,
        "stats": dataclasses.asdict(result.stats),
    }


def _print_result(result: SolveResult, show_stats: bool, as_json: bool) -> None:
    if as_json:
        print(json.dumps(_result_document(result), sort_keys=True))
        return
    for row in result.X.entries:
        print(" ".join(str(v) for v in row))
    print(f"objective: {result.objective!r}")
    if show_stats:
        for name, value in dataclasses.asdict(result.stats).items():
            print(f"{name}: {value}")


def cmd_solve(args) -> int:
    instance = load_instance(args.instance)
    if args.radius is not None:
        instance = dataclasses.replace(instance, radius=args.radius)
    result = solve(instance)
    _print_result(result, args.stats, args.json)
    return EXIT_OK


def cmd_check(args) -> int:
    instance = load_instance(args.instance)
    budget = _oracle_budget()
    ours = solve(instance)
    reference = oracle_solve(instance, budget)
    scale = max(abs(reference.objective), 1.0)
    match = abs(ours.objective - reference.objective) <= 1e-9 * scale
    print(f"solver objective: {ours.objective!r}")
    print(f"oracle objective: {reference.objective!r}")
    print(f"objectives match: {match}")
    return EXIT_OK if match else EXIT_MISMATCH


def _parse_alphabet(text: str) -> Alphabet:
    try:
        return Alphabet(tuple(int(tok) for tok in text.split(",") if tok.strip()))
    except ValueError as e:
        raise ValueError(f"alphabet {text!r}: {e}") from e


def planted_sidecar_path(out_path: str) -> str:
    base = out_path[:-5] if out_path.endswith(".json") else out_path
    return base + ".planted.json"


def cmd_gen(args) -> int:
    spec = GenSpec(
        n_rows=args.rows,
        n_cols=args.cols,
        n_meas=args.meas,
        alphabet=_parse_alphabet(args.alphabet),
        n_constraints=args.constraints,
        sparsity=args.sparsity,
        sigma=args.sigma,
        seed=args.seed,
        trials=1,
    )
    instance, planted = generate_instance(spec)
    _write_json(args.out, _instance_document(instance))
    sidecar = planted_sidecar_path(args.out)
    _write_json(sidecar, {"X": [list(row) for row in planted.entries]})
    print(f"instance: {args.out}")
    print(f"planted:  {sidecar}")
    return EXIT_OK


def _load_bench_specs(path) -> list[GenSpec]:
    with open(path, "r", encoding="utf-8") as f:
        doc = json.load(f)
    if not isinstance(doc, list):
        raise ValueError(f"{path}: top level must be a JSON array of spec objects")
    specs = []
    for i, entry in enumerate(doc):
        if not isinstance(entry, dict):
            raise ValueError(f"{path}: spec {i}: expected an object")
        try:
            specs.append(
                GenSpec(
                    n_rows=entry["rows"],
                    n_cols=entry["cols"],
                    n_meas=entry["meas"],
                    alphabet=Alphabet(tuple(entry["S"])),
                    n_constraints=entry.get("constraints", 7),
                    sparsity=entry.get("K", 4),
                    sigma=entry.get("sigma", 0.2),
                    seed=entry.get("seed", 0),
                    trials=entry.get("trials", 5),
                )
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ValueError(f"{path}: spec {i}: {e!r}") from e
    return specs


def cmd_bench(args) -> int:
    specs = _load_bench_specs(args.specfile)
    records = run_bench(specs, args.out)
    print(f"wrote {len(records)} record(s) to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cils",
        description="Constrained integer least-squares solver",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve an instance file")
    p_solve.add_argument("instance", help="path to an instance JSON file")
    p_solve.add_argument("--radius", type=float, default=None, help="override the initial sphere radius")
    p_solve.add_argument("--stats", action="store_true", help="print solver statistics")
    p_solve.add_argument("--json", action="store_true", help="emit the result as JSON")
    p_solve.set_defaults(func=cmd_solve)

    p_check = sub.add_parser("check", help="solve and cross-check against the brute-force oracle")
    p_check.add_argument("instance", help="path to an instance JSON file")
    p_check.set_defaults(func=cmd_check)

    p_gen = sub.add_parser("gen", help="generate a random instance and its planted solution")
    p_gen.add_argument("--rows", type=int, required=True, help="rows of X (= target rank)")
    p_gen.add_argument("--cols", type=int, required=True, help="columns of X")
    p_gen.add_argument("--meas", type=int, required=True, help="measurement rows of Y and G")
    p_gen.add_argument("--alphabet", default="-1,0,1", help="comma-separated alphabet values")
    p_gen.add_argument("--constraints", type=int, default=7, help="rows of A")
    p_gen.add_argument("--sparsity", type=int, default=4, help="per-row nonzero budget K")
    p_gen.add_argument("--sigma", type=float, default=0.2, help="noise standard deviation")
    p_gen.add_argument("--seed", type=int, default=0, help="generator seed")
    p_gen.add_argument("--out", default="instance.json", help="instance output path")
    p_gen.set_defaults(func=cmd_gen)

    p_bench = sub.add_parser("bench", help="run a benchmark spec file and write a CSV")
    p_bench.add_argument("specfile", help="JSON array of generation specs")
    p_bench.add_argument("--out", default="bench.csv", help="CSV output path")
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors; fold that into the input-error code
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT
    try:
        return args.func(args)
    except BudgetExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (InfeasibleError, GenerationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
