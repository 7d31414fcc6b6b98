"""KCBS and Peres-Mermin scenarios, inequality evaluation, closed-form noisy values."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .channels import SIGMA_X, SIGMA_Y, SIGMA_Z, Channel, check_state
from .linalg import CMat, DimensionError, commutator, dagger, frob_dist, identity, kron
from .measure import (
    COMMUTE_TOL,
    NoisePlacement,
    Observable,
    sequential_correlator,
    sequential_correlator_heisenberg,
)

VIOLATION_TOL = 1e-10
PICTURE_TOL = 1e-10
KCBS_MAX_VIOLATION = 5.0 - 4.0 * math.sqrt(5.0)
KCBS_MAXMIX_VALUE = -5.0 / 3.0


class Picture(enum.Enum):
    SCHRODINGER = "schrodinger"
    HEISENBERG = "heisenberg"
    BOTH = "both"


@dataclass(frozen=True)
class Inequality:
    """``sum_k gamma_k <C_k>  (<= | >=)  bound``."""

    gamma: tuple[float, ...]
    bound: float
    direction: str  # "<=" or ">="

    def __post_init__(self) -> None:
        if self.direction not in ("<=", ">="):
            raise ValueError(f"direction must be '<=' or '>=', got {self.direction!r}")
        object.__setattr__(self, "gamma", tuple(float(g) for g in self.gamma))

    def value(self, correlators: Sequence[float]) -> float:
        return float(sum(g * c for g, c in zip(self.gamma, correlators)))

    def violated_by(self, value: float, tol: float = VIOLATION_TOL) -> bool:
        if self.direction == "<=":
            return value > self.bound + tol
        return value < self.bound - tol


@dataclass(frozen=True)
class Scenario:
    name: str
    dimension: int
    measurements: tuple[Observable, ...]
    contexts: tuple[tuple[int, ...], ...]
    inequality: Inequality

    def __post_init__(self) -> None:
        object.__setattr__(self, "measurements", tuple(self.measurements))
        object.__setattr__(self, "contexts", tuple(tuple(int(i) for i in c) for c in self.contexts))
        for obs in self.measurements:
            if obs.dim != self.dimension:
                raise DimensionError(
                    f"measurement {obs.label!r} has dimension {obs.dim}, scenario has {self.dimension}"
                )
        n = len(self.measurements)
        for k, ctx in enumerate(self.contexts):
            if not ctx:
                raise ValueError(f"context {k} is empty")
            bad = [i for i in ctx if not 0 <= i < n]
            if bad:
                raise ValueError(f"context {k} references unknown measurement index {bad[0]}")
        if len(self.inequality.gamma) != len(self.contexts):
            raise ValueError(
                f"inequality has {len(self.inequality.gamma)} coefficients for {len(self.contexts)} contexts"
            )

    def context_observables(self, k: int) -> list[Observable]:
        return [self.measurements[i] for i in self.contexts[k]]

    def context_label(self, k: int) -> str:
        return "*".join(o.label for o in self.context_observables(k))


@dataclass
class Diagnostics:
    ok: bool
    checks: list[str] = field(default_factory=list)
    failure: str | None = None


def validate_scenario(s: Scenario) -> Diagnostics:
    """Check compatibility structure and observable invariants; stop at the first failure."""
    diag = Diagnostics(ok=True)

    def fail(msg: str) -> Diagnostics:
        diag.ok = False
        diag.failure = msg
        return diag

    eye = identity(s.dimension)
    for i, obs in enumerate(s.measurements):
        m = obs.matrix
        if frob_dist(m, dagger(m)) > COMMUTE_TOL or frob_dist(m @ m, eye) > COMMUTE_TOL:
            return fail(f"measurement {i} ({obs.label}) is not a Hermitian involution")
    diag.checks.append("observables are Hermitian involutions")

    for k, ctx in enumerate(s.contexts):
        if len(set(ctx)) != len(ctx):
            return fail(f"context {k} lists a measurement index twice")
        for a in range(len(ctx)):
            for b in range(a + 1, len(ctx)):
                i, j = ctx[a], ctx[b]
                A, B = s.measurements[i], s.measurements[j]
                if frob_dist(A.matrix, B.matrix) <= COMMUTE_TOL:
                    return fail(
                        f"context {k} duplicate: measurements {i} ({A.label}) and {j} ({B.label}) are identical"
                    )
                norm = float(np.linalg.norm(commutator(A.matrix, B.matrix)))
                if norm > COMMUTE_TOL:
                    return fail(
                        f"context {k} non-commuting: measurements {i} ({A.label}) and {j} ({B.label}), "
                        f"||[A, B]||_F = {norm:.3e}"
                    )
    diag.checks.append("context observables pairwise commute")

    covered = {i for ctx in s.contexts for i in ctx}
    missing = [i for i in range(len(s.measurements)) if i not in covered]
    if missing:
        return fail(f"measurement {missing[0]} ({s.measurements[missing[0]].label}) appears in no context")
    diag.checks.append("every measurement appears in a context")
    return diag


def kcbs_vectors() -> list[np.ndarray]:
    a = 5.0 ** -0.25
    b = math.sqrt(1.0 - 1.0 / math.sqrt(5.0))
    return [
        np.array([a, b * math.cos(4.0 * i * math.pi / 5.0), b * math.sin(4.0 * i * math.pi / 5.0)],
                 dtype=np.complex128)
        for i in range(5)
    ]


def kcbs_scenario() -> Scenario:
    obs = []
    for i, v in enumerate(kcbs_vectors()):
        obs.append(Observable(f"A{i}", 2.0 * np.outer(v, v.conj()) - identity(3)))
    return Scenario(
        name="kcbs",
        dimension=3,
        measurements=tuple(obs),
        contexts=tuple((i, (i + 1) % 5) for i in range(5)),
        inequality=Inequality((1.0,) * 5, -3.0, ">="),
    )


def kcbs_optimal_state() -> CMat:
    psi = np.array([1.0, 0.0, 0.0], dtype=np.complex128)
    return np.outer(psi, psi.conj())


PM_GRID = (
    (("A11", SIGMA_Y, SIGMA_Z), ("A12", SIGMA_Z, SIGMA_Y), ("A13", SIGMA_X, SIGMA_X)),
    (("A21", SIGMA_Z, SIGMA_X), ("A22", SIGMA_X, SIGMA_Z), ("A23", SIGMA_Y, SIGMA_Y)),
    (("A31", SIGMA_X, SIGMA_Y), ("A32", SIGMA_Y, SIGMA_X), ("A33", SIGMA_Z, SIGMA_Z)),
)


def peres_mermin_scenario() -> Scenario:
    obs = [Observable(label, kron(a, b)) for row in PM_GRID for label, a, b in row]
    rows = tuple(tuple(3 * r + c for c in range(3)) for r in range(3))
    cols = tuple(tuple(3 * r + c for r in range(3)) for c in range(3))
    return Scenario(
        name="pm",
        dimension=4,
        measurements=tuple(obs),
        contexts=rows + cols,
        inequality=Inequality((1.0, 1.0, 1.0, -1.0, -1.0, -1.0), 4.0, "<="),
    )


def maximally_mixed(d: int) -> CMat:
    return identity(d) / d


def basis_state(d: int, k: int) -> CMat:
    if not 0 <= k < d:
        raise ValueError(f"basis index {k} out of range for dimension {d}")
    rho = np.zeros((d, d), dtype=np.complex128)
    rho[k, k] = 1.0
    return rho


def random_state(d: int, rng: np.random.Generator) -> CMat:
    """Full-rank state ``M M^dag / tr`` from a complex Gaussian ``M``."""
    m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = m @ dagger(m)
    return rho / np.trace(rho).real


@dataclass(frozen=True)
class EvalReport:
    scenario: str
    state: str
    p: float | None
    placement: NoisePlacement
    correlators: tuple[float, ...]
    value: float
    bound: float
    direction: str
    violated: bool
    picture: str  # "schrodinger", "heisenberg" or "both-agree"

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "state": self.state,
            "p": self.p,
            "placement": self.placement.value,
            "correlators": list(self.correlators),
            "value": self.value,
            "bound": self.bound,
            "direction": self.direction,
            "violated": self.violated,
            "picture": self.picture,
        }


class PictureMismatchError(ArithmeticError):
    pass


def evaluate_inequality(s: Scenario, rho: CMat, noise: Channel | None = None,
                        placement: NoisePlacement = NoisePlacement.NONE,
                        picture: Picture = Picture.BOTH, state_label: str = "custom") -> EvalReport:
    check_state(rho, s.dimension)
    if noise is not None and noise.dim != s.dimension:
        raise DimensionError(f"noise acts on dimension {noise.dim}, scenario has {s.dimension}")
    correlators = []
    for k in range(len(s.contexts)):
        obs = s.context_observables(k)
        if picture is Picture.HEISENBERG:
            c = sequential_correlator_heisenberg(rho, obs, noise, placement)
        else:
            c = sequential_correlator(rho, obs, noise, placement)
            if picture is Picture.BOTH:
                h = sequential_correlator_heisenberg(rho, obs, noise, placement)
                if abs(c - h) >= PICTURE_TOL:
                    raise PictureMismatchError(
                        f"context {k}: Schrodinger {c!r} vs Heisenberg {h!r} differ by {abs(c - h):.3e}"
                    )
        correlators.append(c)
    value = s.inequality.value(correlators)
    p = getattr(noise, "p", None) if placement is not NoisePlacement.NONE else None
    return EvalReport(
        scenario=s.name,
        state=state_label,
        p=p,
        placement=placement,
        correlators=tuple(correlators),
        value=value,
        bound=s.inequality.bound,
        direction=s.inequality.direction,
        violated=s.inequality.violated_by(value),
        picture="both-agree" if picture is Picture.BOTH else picture.value,
    )


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")


def kcbs_noisy_value(s_rho: float, p: float) -> float:
    """KCBS sum after depolarizing the state: ``p S - (1 - p) 5/3``."""
    _check_p(p)
    return p * s_rho - (1.0 - p) * 5.0 / 3.0


def kcbs_p_crit(s_rho: float) -> float:
    """Largest p at which a state with noiseless KCBS sum ``s_rho`` stops violating."""
    if not s_rho < -3.0:
        raise ValueError(f"state does not violate (S = {s_rho} >= -3); threshold undefined")
    return (-4.0 / 3.0) / (s_rho + 5.0 / 3.0)
