"""Sphere decoding over finite per-coordinate integer alphabets.

Finds every x with x_i in a given candidate set per coordinate and
||y - G x|| <= d, by QR-reducing G and enumerating coordinates last-to-first
inside the shrinking interval each partial residual allows.  Boundary policy:
a point counts as inside when its squared distance is at most
d^2 * (1 + 1e-9); internal pruning uses twice that slack so no boundary point
is lost to accumulation error, and reported distances are recomputed directly
from y and G.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .dioph import Alphabet, IntVector

# relative slack on the squared radius for the inclusion test
BOUNDARY_SLACK = 1e-9


class SphereCandidate(NamedTuple):
    x: IntVector
    dist2: float


@dataclass(frozen=True)
class CandidateSets:
    """Per-coordinate alphabets restricting the decoder's search."""

    sets: tuple[Alphabet, ...]

    def __post_init__(self) -> None:
        if not self.sets:
            raise ValueError("need at least one candidate set")
        object.__setattr__(self, "sets", tuple(self.sets))

    @classmethod
    def uniform(cls, alphabet: Alphabet, n: int) -> "CandidateSets":
        return cls((alphabet,) * n)

    def __len__(self) -> int:
        return len(self.sets)

    def __getitem__(self, i: int) -> Alphabet:
        return self.sets[i]


def _as_matrix(G) -> np.ndarray:
    G = np.asarray(G, dtype=float)
    if G.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {G.shape}")
    if not np.all(np.isfinite(G)):
        raise ValueError("matrix entries must be finite")
    return G


def _as_vector(y, length: int) -> np.ndarray:
    y = np.asarray(y, dtype=float).reshape(-1)
    if y.shape[0] != length:
        raise ValueError(f"expected a length-{length} vector, got {y.shape[0]}")
    if not np.all(np.isfinite(y)):
        raise ValueError("vector entries must be finite")
    return y


def qr_positive(G) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Full QR of a tall full-column-rank G with positive diagonal in R.

    Returns (Q1, Q2, R): G = Q1 R, columns of Q2 span the orthogonal
    complement, R is square upper triangular with strictly positive diagonal.
    Raises numpy.linalg.LinAlgError when G is numerically rank deficient.
    """
    G = _as_matrix(G)
    m, n = G.shape
    if n < 1 or m < n:
        raise ValueError(f"need a tall matrix (rows >= cols >= 1), got {m}x{n}")
    Q, R_full = np.linalg.qr(G, mode="complete")
    R = R_full[:n, :].copy()
    diag = np.abs(np.diag(R))
    tol = max(m, n) * np.finfo(float).eps * max(float(diag.max()), 1.0)
    if float(diag.min()) <= tol:
        raise np.linalg.LinAlgError("matrix is numerically rank deficient")
    Q = Q.copy()
    flip = np.flatnonzero(np.diag(R) < 0)
    R[flip, :] *= -1.0
    Q[:, flip] *= -1.0
    return Q[:, :n], Q[:, n:], R


def sphere_decode(y, G, radius: float, sets: CandidateSets) -> list[SphereCandidate]:
    """All x in the candidate product with ||y - G x|| <= radius.

    Exhaustive within the boundary policy above.  Results are sorted by
    (dist2, x) and each dist2 is the directly recomputed ||y - G x||^2, not
    the accumulated partial sum.
    """
    G = _as_matrix(G)
    m, n = G.shape
    y = _as_vector(y, m)
    radius = float(radius)
    if not radius > 0.0 or not math.isfinite(radius):
        raise ValueError("radius must be positive and finite")
    if len(sets) != n:
        raise ValueError(f"need {n} candidate sets, got {len(sets)}")
    Q1, Q2, R = qr_positive(G)
    z = Q1.T @ y
    # squared distance from y to the column span; fixed for every candidate
    base = float(np.dot(Q2.T @ y, Q2.T @ y)) if Q2.shape[1] else 0.0
    include = radius * radius * (1.0 + BOUNDARY_SLACK)
    prune = radius * radius * (1.0 + 2.0 * BOUNDARY_SLACK)
    out: list[SphereCandidate] = []
    if base > prune:
        return out
    x = [0] * n

    def descend(i: int, acc: float) -> None:
        b = float(z[i]) - sum(float(R[i, j]) * x[j] for j in range(i + 1, n))
        rii = float(R[i, i])
        rad = math.sqrt(max(prune - acc, 0.0))
        lo_v = (b - rad) / rii
        hi_v = (b + rad) / rii
        margin = 1e-9 * (1.0 + abs(lo_v) + abs(hi_v))
        vals = sets[i].values
        lo = bisect.bisect_left(vals, lo_v - margin)
        hi = bisect.bisect_right(vals, hi_v + margin)
        for v in vals[lo:hi]:
            step = (b - rii * v) ** 2
            if acc + step > prune:
                continue
            x[i] = v
            if i == 0:
                xv = tuple(x)
                r = y - G @ np.array(xv, dtype=float)
                d2 = float(np.dot(r, r))
                if d2 <= include:
                    out.append(SphereCandidate(xv, d2))
            else:
                descend(i - 1, acc + step)

    descend(n - 1, base)
    out.sort(key=lambda c: (c.dist2, c.x))
    return out


def babai_radius(y, G, sets: CandidateSets) -> float:
    """Search radius from rounding the unconstrained least-squares solution.

    Each coordinate of the real solution is snapped to the nearest value in
    its candidate set (ties to the smaller value); the returned radius is the
    residual of that point plus a small slack, so a sphere decode at this
    radius always sees at least one candidate.
    """
    G = _as_matrix(G)
    m, n = G.shape
    y = _as_vector(y, m)
    if len(sets) != n:
        raise ValueError(f"need {n} candidate sets, got {len(sets)}")
    xls = np.linalg.lstsq(G, y, rcond=None)[0]
    snapped = tuple(
        min(sets[i].values, key=lambda v: (abs(v - float(xls[i])), v)) for i in range(n)
    )
    r = y - G @ np.array(snapped, dtype=float)
    r0 = math.sqrt(float(np.dot(r, r)))
    return r0 + 1e-9 * (1.0 + r0)


def nearest_in_sets(x_real: Sequence[float], sets: CandidateSets) -> IntVector:
    """Coordinate-wise snap of a real vector onto the candidate sets."""
    if len(x_real) != len(sets):
        raise ValueError(f"need {len(sets)} coordinates, got {len(x_real)}")
    return tuple(
        min(sets[i].values, key=lambda v: (abs(v - float(t)), v))
        for i, t in enumerate(x_real)
    )
