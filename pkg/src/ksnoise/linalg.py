"""Small dense complex linear algebra on numpy ``complex128`` arrays.

Everything here is sized for operators of dimension at most 4 (one qutrit or
two qubits).  Matrices are plain 2-D numpy arrays; the helpers only add the
shape checks and finiteness guarantees the rest of the package relies on.
"""
from __future__ import annotations

import numpy as np

CMat = np.ndarray

HERMITIAN_TOL = 1e-9
JACOBI_OFFDIAG_TOL = 1e-14
_MAX_SWEEPS = 100


class DimensionError(ValueError):
    """Operand shapes are incompatible."""


class NotHermitianError(ValueError):
    """Matrix is not Hermitian within the requested tolerance."""


def _finite(a: CMat) -> CMat:
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def cmat(entries) -> CMat:
    """Build a 2-D complex matrix from nested sequences or an array."""
    a = np.array(entries, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise DimensionError(f"expected a non-empty 2-D matrix, got shape {a.shape}")
    return _finite(a)


def identity(d: int) -> CMat:
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    return np.eye(d, dtype=np.complex128)


def zeros(rows: int, cols: int | None = None) -> CMat:
    return np.zeros((rows, rows if cols is None else cols), dtype=np.complex128)


def matmul(a: CMat, b: CMat) -> CMat:
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return _finite(a @ b)


def mat_product(*mats: CMat) -> CMat:
    """Left-to-right product of one or more matrices."""
    out = mats[0]
    for m in mats[1:]:
        out = matmul(out, m)
    return out


def kron(a: CMat, b: CMat) -> CMat:
    return np.kron(a, b)


def dagger(a: CMat) -> CMat:
    return a.conj().T


def trace(a: CMat) -> complex:
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"trace of non-square matrix {a.shape}")
    return complex(np.trace(a))


def _same_shape(a: CMat, b: CMat) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")


def add(a: CMat, b: CMat) -> CMat:
    _same_shape(a, b)
    return _finite(a + b)


def scale(c: complex, a: CMat) -> CMat:
    return _finite(c * a)


def frob_dist(a: CMat, b: CMat) -> float:
    _same_shape(a, b)
    return float(np.linalg.norm(a - b))


def commutator(a: CMat, b: CMat) -> CMat:
    return matmul(a, b) - matmul(b, a)


def is_hermitian(a: CMat, tol: float = HERMITIAN_TOL) -> bool:
    return a.shape[0] == a.shape[1] and frob_dist(a, dagger(a)) <= tol


def hermitian_eigenvalues(a: CMat, tol: float = HERMITIAN_TOL) -> list[float]:
    """Ascending eigenvalues of a Hermitian matrix by cyclic complex Jacobi.

    Each rotation zeroes one off-diagonal pair ``(k, l)``; sweeps repeat
    until the off-diagonal Frobenius mass falls below ``JACOBI_OFFDIAG_TOL``
    (relative to the matrix norm for large entries).
    """
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"eigenvalues of non-square matrix {a.shape}")
    if frob_dist(a, dagger(a)) > tol:
        raise NotHermitianError(
            f"matrix is not Hermitian: ||A - A^dag||_F = {frob_dist(a, dagger(a)):.3e} > {tol:.1e}"
        )
    h = 0.5 * (a + dagger(a))
    n = h.shape[0]
    scale_ref = max(1.0, float(np.linalg.norm(h)))
    for _ in range(_MAX_SWEEPS):
        off = np.linalg.norm(h - np.diag(np.diag(h)))
        if off < JACOBI_OFFDIAG_TOL * scale_ref:
            break
        for k in range(n - 1):
            for l in range(k + 1, n):
                akl = h[k, l]
                mag = abs(akl)
                if mag == 0.0:
                    continue
                # phase-strip the pivot so the 2x2 block becomes real symmetric
                phase = akl / mag
                akk, all_ = h[k, k].real, h[l, l].real
                theta = 0.5 * np.arctan2(2.0 * mag, akk - all_)
                c, s = np.cos(theta), np.sin(theta)
                rot = np.eye(n, dtype=np.complex128)
                rot[k, k] = c
                rot[l, l] = c
                rot[k, l] = -s * phase
                rot[l, k] = s * np.conj(phase)
                h = dagger(rot) @ h @ rot
                h[k, l] = 0.0
                h[l, k] = 0.0
    return sorted(float(x) for x in np.diag(h).real)
