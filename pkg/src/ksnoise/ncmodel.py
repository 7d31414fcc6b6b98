"""Noncontextual side: classical bounds by enumeration and joint-distribution feasibility.

A deterministic assignment fixes every measurement to +/-1.  Assignment
``k`` in binary counting order gives measurement ``i`` the value +1 when bit
``i`` of ``k`` is set and -1 otherwise.  A behaviour (one full correlator per
context) admits a global joint distribution exactly when it is a convex
combination of the assignments' correlator vectors.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .scenarios import Scenario
from .simplex import PIVOT_TOL, phase_one

BOUND_GUARD = 24
LP_GUARD = 12
FEASIBILITY_TOL = 1e-8
_CHUNK = 1 << 16


@dataclass(frozen=True)
class DeterministicAssignment:
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(v not in (-1, 1) for v in self.values):
            raise ValueError(f"assignment values must be +/-1, got {self.values}")

    @classmethod
    def from_index(cls, k: int, n: int) -> DeterministicAssignment:
        return cls(tuple(1 if (k >> i) & 1 else -1 for i in range(n)))


@dataclass(frozen=True)
class Behavior:
    correlators: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "correlators", tuple(float(c) for c in self.correlators))
        bad = [c for c in self.correlators if not -1.0 - 1e-12 <= c <= 1.0 + 1e-12]
        if bad:
            raise ValueError(f"correlators must lie in [-1, 1], got {bad[0]}")


@dataclass(frozen=True)
class ClassicalBound:
    min: float
    max: float
    argmin: DeterministicAssignment
    argmax: DeterministicAssignment
    n_assignments: int


def assignment_values(start: int, stop: int, n: int) -> np.ndarray:
    """Rows of +/-1 values for assignments ``start .. stop-1``."""
    k = np.arange(start, stop, dtype=np.int64)[:, None]
    bits = (k >> np.arange(n, dtype=np.int64)) & 1
    return 2 * bits - 1


def context_correlators(s: Scenario, values: np.ndarray) -> np.ndarray:
    """Per-context products of assigned values; shape (assignments, contexts)."""
    return np.stack([values[:, list(ctx)].prod(axis=1) for ctx in s.contexts], axis=1)


def classical_bound(s: Scenario) -> ClassicalBound:
    n = len(s.measurements)
    if n > BOUND_GUARD:
        raise ValueError(f"{n} measurements exceeds the enumeration guard of {BOUND_GUARD}")
    gamma = np.array(s.inequality.gamma)
    total = 1 << n
    lo = hi = None
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        vals = context_correlators(s, assignment_values(start, stop, n)) @ gamma
        i_lo, i_hi = int(np.argmin(vals)), int(np.argmax(vals))
        # strict comparison keeps the first index in counting order on ties
        if lo is None or vals[i_lo] < lo[0]:
            lo = (float(vals[i_lo]), start + i_lo)
        if hi is None or vals[i_hi] > hi[0]:
            hi = (float(vals[i_hi]), start + i_hi)
    return ClassicalBound(
        min=lo[0],
        max=hi[0],
        argmin=DeterministicAssignment.from_index(lo[1], n),
        argmax=DeterministicAssignment.from_index(hi[1], n),
        n_assignments=total,
    )


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    weights: np.ndarray | None  # one weight per assignment, counting order
    residual: float


def vertex_matrix(s: Scenario) -> np.ndarray:
    """Correlator vectors of every deterministic assignment, one column each."""
    n = len(s.measurements)
    return context_correlators(s, assignment_values(0, 1 << n, n)).T.astype(float)


def noncontextual_feasible(s: Scenario, b: Behavior | Sequence[float],
                           tol: float = FEASIBILITY_TOL) -> Feasibility:
    """Decide whether ``b`` lies in the convex hull of deterministic behaviours."""
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    n = len(s.measurements)
    if n > LP_GUARD:
        raise ValueError(f"{n} measurements exceeds the LP guard of {LP_GUARD}")
    if not isinstance(b, Behavior):
        b = Behavior(tuple(b))
    if len(b.correlators) != len(s.contexts):
        raise ValueError(f"behavior has {len(b.correlators)} entries for {len(s.contexts)} contexts")
    V = vertex_matrix(s)
    A = np.vstack([V, np.ones(V.shape[1])])
    rhs = np.append(np.array(b.correlators), 1.0)
    res = phase_one(A, rhs, pivot_tol=PIVOT_TOL)
    residual = float(np.max(np.abs(A @ res.x - rhs)))
    if res.infeasibility > tol or residual > tol:
        return Feasibility(False, None, residual)
    return Feasibility(True, res.x, residual)
