"""Exact integer linear algebra: Hermite normal form, rank, determinant.

Everything here runs on Python's arbitrary-precision ints, so there is no
overflow and no floating-point round-off anywhere in this module.  The rest
of the package relies on that: feasible-set enumeration reduces constraint
matrices with `hermite_normal_form`, and the rank constraint on assembled
solutions is checked with `int_rank`.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass


@dataclass(frozen=True)
class IntMatrix:
    """Immutable matrix of exact integers, stored as a tuple of row tuples."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(operator.index(v) for v in row) for row in self.entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValueError("rows must all have the same length")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(tuple((0,) * cols for _ in range(rows)))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries)))

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = other.transpose().entries
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.entries
            )
        )


@dataclass(frozen=True)
class HnfResult:
    """Row-style Hermite normal form H together with the transform U, H = U A."""

    H: IntMatrix
    U: IntMatrix


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, s, t) with g = s*a + t*b and g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hermite_normal_form(A: IntMatrix) -> HnfResult:
    """Compute the canonical row-style Hermite normal form of A.

    Returns H and a unimodular U with H = U A.  H is upper echelon, pivots
    are positive, entries above each pivot are reduced into [0, pivot), and
    zero rows sit at the bottom.  Eliminations use extended-gcd 2x2 row
    transforms, which keeps every intermediate value an exact integer.
    """
    nr, nc = A.rows, A.cols
    H = [list(row) for row in A.entries]
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    r = 0
    for c in range(nc):
        if r == nr:
            break
        for i in range(r + 1, nr):
            b = H[i][c]
            if b == 0:
                continue
            a = H[r][c]
            g, s, t = _xgcd(a, b)
            mu, nu = a // g, b // g
            # [[s, t], [-nu, mu]] has determinant (s*a + t*b)/g = 1.
            hr, hi = H[r], H[i]
            H[r] = [s * x + t * y for x, y in zip(hr, hi)]
            H[i] = [mu * y - nu * x for x, y in zip(hr, hi)]
            ur, ui = U[r], U[i]
            U[r] = [s * x + t * y for x, y in zip(ur, ui)]
            U[i] = [mu * y - nu * x for x, y in zip(ur, ui)]
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        p = H[r][c]
        for j in range(r):
            q = H[j][c] // p
            if q:
                H[j] = [x - q * y for x, y in zip(H[j], H[r])]
                U[j] = [x - q * y for x, y in zip(U[j], U[r])]
        r += 1
    return HnfResult(IntMatrix(tuple(map(tuple, H))), IntMatrix(tuple(map(tuple, U))))


def validate_hnf(H: IntMatrix, U: IntMatrix, A: IntMatrix) -> bool:
    """Check that (H, U) is a valid Hermite decomposition of A.

    Requires H = U A with U unimodular and H in row-echelon shape (pivot
    columns strictly increasing, zero rows only at the bottom).  Pivot signs
    and above-pivot reduction are deliberately not required, so decompositions
    from other conventions still validate.  Raises ValueError on mismatched
    dimensions; returns a bool for everything else.
    """
    if U.rows != U.cols:
        raise ValueError("U must be square")
    if U.rows != A.rows or H.rows != A.rows or H.cols != A.cols:
        raise ValueError(
            f"dimension mismatch: H is {H.rows}x{H.cols}, U is {U.rows}x{U.cols}, "
            f"A is {A.rows}x{A.cols}"
        )
    if U @ A != H:
        return False
    if abs(int_det(U)) != 1:
        return False
    last_pivot = -1
    seen_zero_row = False
    for row in H.entries:
        pivot = next((j for j, v in enumerate(row) if v != 0), None)
        if pivot is None:
            seen_zero_row = True
            continue
        if seen_zero_row or pivot <= last_pivot:
            return False
        last_pivot = pivot
    return True


def int_rank(M: IntMatrix) -> int:
    """Exact rank over the rationals, via fraction-free (Bareiss) elimination."""
    m = [list(row) for row in M.entries]
    nr, nc = M.rows, M.cols
    rank = 0
    prev = 1
    for col in range(nc):
        if rank == nr:
            break
        piv = next((r for r in range(rank, nr) if m[r][col] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nr):
            f = m[r][col]
            row_r, row_p = m[r], m[rank]
            for c2 in range(col + 1, nc):
                row_r[c2] = (p * row_r[c2] - f * row_p[c2]) // prev
            row_r[col] = 0
        prev = p
        rank += 1
    return rank


def int_det(M: IntMatrix) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    if M.rows != M.cols:
        raise ValueError(f"determinant requires a square matrix, got {M.rows}x{M.cols}")
    n = M.rows
    m = [list(row) for row in M.entries]
    sign = 1
    prev = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        p = m[col][col]
        for r in range(col + 1, n):
            f = m[r][col]
            row_r, row_p = m[r], m[col]
            for c2 in range(col + 1, n):
                row_r[c2] = (p * row_r[c2] - f * row_p[c2]) // prev
            row_r[col] = 0
        prev = p
    return sign * m[n - 1][n - 1]
