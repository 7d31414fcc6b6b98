"""Dichotomic observables, Luders instruments and sequential correlators.

A context is measured one observable at a time.  Each measurement is the
Luders "score" map ``S(X) = P+ X P+ - P- X P-``, whose trace after the last
step is the expectation of the product of the +/-1 outcomes.  Depolarizing
noise can be inserted once before the whole sequence or before every
measurement.  The same quantity is also computed in the Heisenberg picture
by pulling the identity back through the dual maps.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .channels import Channel, apply_dual, apply_map, check_state
from .linalg import (
    HERMITIAN_TOL,
    CMat,
    DimensionError,
    commutator,
    dagger,
    frob_dist,
    identity,
    trace,
)

COMMUTE_TOL = 1e-9
IMAG_TOL = 1e-10
BRANCH_EPS = 1e-12


class NoisePlacement(enum.Enum):
    NONE = "none"
    BEFORE_FIRST_ONLY = "before-first"
    BEFORE_EACH = "before-each"


class NonCommutingError(ValueError):
    def __init__(self, i: int, j: int, labels: tuple[str, str], norm: float):
        self.pair = (i, j)
        self.labels = labels
        super().__init__(
            f"observables {i} ({labels[0]}) and {j} ({labels[1]}) do not commute: "
            f"||[A, B]||_F = {norm:.3e}"
        )


@dataclass(frozen=True)
class Observable:
    """Hermitian involution with outcomes +/-1."""

    label: str
    matrix: CMat = field(repr=False)

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"observable {self.label!r} must be square, got {m.shape}")
        object.__setattr__(self, "matrix", m)
        if frob_dist(m, dagger(m)) > HERMITIAN_TOL:
            raise ValueError(f"observable {self.label!r} is not Hermitian")
        if frob_dist(m @ m, identity(self.dim)) > HERMITIAN_TOL:
            raise ValueError(f"observable {self.label!r} does not square to the identity")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def projectors(self) -> tuple[CMat, CMat]:
        """``(P+, P-)`` with ``P+/- = (I +/- A)/2``."""
        eye = identity(self.dim)
        return 0.5 * (eye + self.matrix), 0.5 * (eye - self.matrix)


def _check_compat(obs: Observable, x: CMat) -> None:
    if x.shape != (obs.dim, obs.dim):
        raise DimensionError(
            f"observable {obs.label!r} has dimension {obs.dim}, operand has shape {x.shape}"
        )


def luders_score(obs: Observable, rho: CMat) -> CMat:
    """``P+ rho P+ - P- rho P-``; its trace is ``<A>_rho``.

    The map is self-dual, so the same function is the Heisenberg step.
    """
    _check_compat(obs, rho)
    pp, pm = obs.projectors
    return pp @ rho @ pp - pm @ rho @ pm


@dataclass(frozen=True)
class Branch:
    outcome: int
    prob: float
    state: CMat | None  # None when prob <= BRANCH_EPS


def luders_branch(obs: Observable, rho: CMat) -> tuple[Branch, Branch]:
    """Outcome probabilities and normalized Luders post-measurement states."""
    _check_compat(obs, rho)
    out = []
    for sign, proj in zip((+1, -1), obs.projectors):
        unnorm = proj @ rho @ proj
        prob = max(trace(unnorm).real, 0.0)
        out.append(Branch(sign, prob, unnorm / prob if prob > BRANCH_EPS else None))
    return out[0], out[1]


def _real(z: complex) -> float:
    if abs(z.imag) >= IMAG_TOL:
        raise ArithmeticError(f"trace has imaginary residue {z.imag:.3e}; expected a real value")
    return float(z.real)


def _check_inputs(rho: CMat, obs_list: Sequence[Observable], noise: Channel | None,
                  placement: NoisePlacement) -> None:
    if not obs_list:
        raise ValueError("need at least one observable")
    for obs in obs_list:
        _check_compat(obs, rho)
    if placement is not NoisePlacement.NONE:
        if noise is None:
            raise ValueError(f"placement {placement.value!r} requires a noise channel")
        if noise.dim != rho.shape[0]:
            raise DimensionError(f"noise acts on dimension {noise.dim}, state is {rho.shape[0]}")


def sequential_correlator(rho: CMat, obs_list: Sequence[Observable], noise: Channel | None = None,
                          placement: NoisePlacement = NoisePlacement.NONE) -> float:
    """Schrodinger picture: nest score maps in list order, noise per placement."""
    _check_inputs(rho, obs_list, noise, placement)
    check_state(rho)
    x = rho
    for n, obs in enumerate(obs_list):
        if placement is NoisePlacement.BEFORE_EACH or (
            placement is NoisePlacement.BEFORE_FIRST_ONLY and n == 0
        ):
            x = apply_map(noise, x)
        x = luders_score(obs, x)
    return _real(trace(x))


def heisenberg_operator(obs_list: Sequence[Observable], noise: Channel | None = None,
                        placement: NoisePlacement = NoisePlacement.NONE) -> CMat:
    """Pull the identity back through the dual maps, last measurement first."""
    d = obs_list[0].dim
    x = identity(d)
    last = len(obs_list) - 1
    for n in range(last, -1, -1):
        x = luders_score(obs_list[n], x)
        if placement is NoisePlacement.BEFORE_EACH or (
            placement is NoisePlacement.BEFORE_FIRST_ONLY and n == 0
        ):
            x = apply_dual(noise, x)
    return x


def sequential_correlator_heisenberg(rho: CMat, obs_list: Sequence[Observable],
                                     noise: Channel | None = None,
                                     placement: NoisePlacement = NoisePlacement.NONE) -> float:
    _check_inputs(rho, obs_list, noise, placement)
    check_state(rho)
    return _real(trace(rho @ heisenberg_operator(obs_list, noise, placement)))


def check_commuting(obs_list: Sequence[Observable], tol: float = COMMUTE_TOL) -> None:
    """Raise ``NonCommutingError`` naming the first non-commuting pair."""
    for i in range(len(obs_list)):
        for j in range(i + 1, len(obs_list)):
            norm = float(np.linalg.norm(commutator(obs_list[i].matrix, obs_list[j].matrix)))
            if norm > tol:
                raise NonCommutingError(i, j, (obs_list[i].label, obs_list[j].label), norm)


def product_correlator(rho: CMat, obs_list: Sequence[Observable]) -> float:
    """``Re tr(rho A_1 ... A_n)`` for a commuting list."""
    check_commuting(obs_list)
    _check_inputs(rho, obs_list, None, NoisePlacement.NONE)
    prod = identity(rho.shape[0])
    for obs in obs_list:
        prod = prod @ obs.matrix
    return _real(trace(rho @ prod))
