"""Phase-I simplex for feasibility of ``A x = b, x >= 0``.

Dense tableau, Bland's rule for both entering and leaving variables, so the
method terminates on degenerate problems.  Sized for a handful of rows and a
few thousand columns.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PIVOT_TOL = 1e-10


@dataclass
class PhaseOneResult:
    x: np.ndarray
    infeasibility: float  # optimal sum of artificial variables
    iterations: int


def phase_one(A: np.ndarray, b: np.ndarray, pivot_tol: float = PIVOT_TOL,
              max_iter: int = 10_000) -> PhaseOneResult:
    A = np.array(A, dtype=float)
    b = np.array(b, dtype=float)
    m, n = A.shape
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0

    tab = np.zeros((m + 1, n + m + 1))
    tab[:m, :n] = A
    tab[:m, n:n + m] = np.eye(m)
    tab[:m, -1] = b
    # reduced costs of "minimize sum of artificials" with the artificials basic
    tab[m, :n] = -A.sum(axis=0)
    tab[m, -1] = -b.sum()
    basis = list(range(n, n + m))

    it = 0
    while it < max_iter:
        candidates = np.flatnonzero(tab[m, :n + m] < -pivot_tol)
        if candidates.size == 0:
            break
        entering = int(candidates[0])
        col = tab[:m, entering]
        rows = np.flatnonzero(col > pivot_tol)
        if rows.size == 0:
            # cannot happen in phase I: the objective is bounded below by zero
            raise ArithmeticError("phase-I objective reported unbounded")
        ratios = tab[rows, -1] / col[rows]
        tied = rows[ratios <= ratios.min() + pivot_tol]
        leaving = int(min(tied, key=lambda i: basis[i]))
        tab[leaving] /= tab[leaving, entering]
        factors = tab[:, entering].copy()
        factors[leaving] = 0.0
        tab -= np.outer(factors, tab[leaving])
        basis[leaving] = entering
        it += 1
    else:
        raise ArithmeticError(f"simplex did not terminate within {max_iter} pivots")

    x = np.zeros(n)
    for i, j in enumerate(basis):
        if j < n:
            x[j] = tab[i, -1]
    return PhaseOneResult(x=x, infeasibility=max(-tab[m, -1], 0.0), iterations=it)
