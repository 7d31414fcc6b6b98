"""CPTP maps with forward (state) and dual (observable) action.

Two representations are supported: an explicit Kraus list, and the
structured depolarizing map ``rho -> p rho + (1 - p) I/d`` which is stored as
just ``(p, d)``.  Kraus expansions of the depolarizing map are provided for a
qubit and for two qubits (via the Pauli twirl).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .linalg import (
    CMat,
    DimensionError,
    dagger,
    frob_dist,
    hermitian_eigenvalues,
    identity,
    kron,
    trace,
)

CHANNEL_TOL = 1e-9
STATE_TOL = 1e-9

SIGMA_I = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = {"I": SIGMA_I, "x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}


class InvalidStateError(ValueError):
    """Input is not a density matrix within tolerance."""


def check_state(rho: CMat, d: int | None = None, tol: float = STATE_TOL) -> None:
    """Raise ``InvalidStateError`` unless ``rho`` is a d x d density matrix."""
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidStateError(f"state must be square, got shape {rho.shape}")
    if d is not None and rho.shape[0] != d:
        raise DimensionError(f"state has dimension {rho.shape[0]}, expected {d}")
    if frob_dist(rho, dagger(rho)) > tol:
        raise InvalidStateError("state is not Hermitian")
    tr = trace(rho)
    if abs(tr - 1.0) > tol:
        raise InvalidStateError(f"state has trace {tr.real:.12g}, expected 1")
    lo = hermitian_eigenvalues(rho, tol)[0]
    if lo < -tol:
        raise InvalidStateError(f"state has negative eigenvalue {lo:.3e}")


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0 or math.isnan(p):
        raise ValueError(f"depolarizing parameter must lie in [0, 1], got {p}")
    return p


@dataclass(frozen=True)
class Kraus:
    """Channel given by Kraus operators ``rho -> sum_i K_i rho K_i^dag``."""

    operators: tuple[CMat, ...]
    dim: int = field(init=False)

    def __post_init__(self) -> None:
        ops = tuple(np.asarray(k, dtype=np.complex128) for k in self.operators)
        if not ops:
            raise ValueError("Kraus channel needs at least one operator")
        d = ops[0].shape[0]
        for k in ops:
            if k.shape != (d, d):
                raise DimensionError(f"Kraus operators must all be {d}x{d}, got {k.shape}")
        completeness = sum(dagger(k) @ k for k in ops)
        if frob_dist(completeness, identity(d)) > CHANNEL_TOL:
            raise ValueError("Kraus operators violate the completeness relation sum K^dag K = I")
        object.__setattr__(self, "operators", ops)
        object.__setattr__(self, "dim", d)

    @property
    def unital(self) -> bool:
        return frob_dist(sum(k @ dagger(k) for k in self.operators), identity(self.dim)) <= CHANNEL_TOL


@dataclass(frozen=True)
class Depolarizing:
    """Structured depolarizing channel ``rho -> p rho + (1 - p) I/d``."""

    p: float
    dim: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", _check_p(self.p))
        if self.dim < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dim}")

    @property
    def unital(self) -> bool:
        return True


Channel = Kraus | Depolarizing


def _check_dim(ch: Channel, m: CMat) -> None:
    if m.shape != (ch.dim, ch.dim):
        raise DimensionError(f"channel acts on dimension {ch.dim}, got operand of shape {m.shape}")


def apply(ch: Channel, rho: CMat) -> CMat:
    """Forward (Schrodinger) action on a density matrix."""
    _check_dim(ch, rho)
    check_state(rho)
    if isinstance(ch, Depolarizing):
        return ch.p * rho + (1.0 - ch.p) * identity(ch.dim) / ch.dim
    return sum(k @ rho @ dagger(k) for k in ch.operators)


def apply_map(ch: Channel, x: CMat) -> CMat:
    """Forward action on an arbitrary operator.

    Intermediate operators in a sequential measurement are not unit-trace,
    so the depolarizing part uses ``tr(x) I/d`` rather than ``I/d``.
    """
    _check_dim(ch, x)
    if isinstance(ch, Depolarizing):
        return ch.p * x + (1.0 - ch.p) * (trace(x) / ch.dim) * identity(ch.dim)
    return sum(k @ x @ dagger(k) for k in ch.operators)


def apply_dual(ch: Channel, obs: CMat) -> CMat:
    """Dual (Heisenberg) action, fixed by ``tr(A E(rho)) = tr(E^dag(A) rho)``."""
    _check_dim(ch, obs)
    if isinstance(ch, Depolarizing):
        return ch.p * obs + (1.0 - ch.p) * (trace(obs) / ch.dim) * identity(ch.dim)
    return sum(dagger(k) @ obs @ k for k in ch.operators)


def compose(second: Channel, first: Channel) -> Channel:
    """Channel ``second . first`` (``first`` acts on the state first)."""
    if first.dim != second.dim:
        raise DimensionError(f"cannot compose channels on dimensions {first.dim} and {second.dim}")
    if isinstance(first, Depolarizing) and isinstance(second, Depolarizing):
        return Depolarizing(first.p * second.p, first.dim)
    return Kraus(tuple(a @ b for a in _kraus_ops(second) for b in _kraus_ops(first)))


def _kraus_ops(ch: Channel) -> tuple[CMat, ...]:
    if isinstance(ch, Kraus):
        return ch.operators
    if ch.dim == 2:
        return qubit_depolarizing_kraus(ch.p).operators
    if ch.dim == 4:
        return two_qubit_pauli_twirl_kraus(ch.p).operators
    raise NotImplementedError(f"no Kraus expansion of the depolarizing channel for d={ch.dim}")


def qubit_depolarizing_kraus(p: float) -> Kraus:
    """Kraus form {sqrt(k) I, sqrt(i) X, sqrt(i) Y, sqrt(i) Z}, k=(1+3p)/4, i=(1-p)/4."""
    p = _check_p(p)
    kappa = (1.0 + 3.0 * p) / 4.0
    iota = (1.0 - p) / 4.0
    return Kraus((
        math.sqrt(kappa) * SIGMA_I,
        math.sqrt(iota) * SIGMA_X,
        math.sqrt(iota) * SIGMA_Y,
        math.sqrt(iota) * SIGMA_Z,
    ))


def two_qubit_paulis() -> dict[str, CMat]:
    """The sixteen two-qubit Pauli products keyed like ``"xz"`` (``"II"`` is identity)."""
    return {a + b: kron(PAULIS[a], PAULIS[b]) for a, b in product("xyzI", repeat=2)}


def two_qubit_pauli_twirl_kraus(p: float) -> Kraus:
    """Seventeen-term Kraus list: sqrt(p) I plus sqrt((1-p)/16) on every Pauli pair."""
    p = _check_p(p)
    w = math.sqrt((1.0 - p) / 16.0)
    ops = [math.sqrt(p) * identity(4)]
    ops.extend(w * s for s in two_qubit_paulis().values())
    return Kraus(tuple(ops))


def lindblad_p(gamma: float, t: float) -> float:
    """Survival parameter of isotropic qubit depolarizing dynamics after time t."""
    if gamma < 0 or t < 0:
        raise ValueError(f"gamma and t must be non-negative, got gamma={gamma}, t={t}")
    return math.exp(-4.0 * gamma * t)
