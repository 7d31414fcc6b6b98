"""Depolarizing-strength sweeps and bisection for the classicalization threshold."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .channels import Depolarizing, lindblad_p
from .linalg import CMat
from .measure import NoisePlacement
from .scenarios import (
    EvalReport,
    Picture,
    Scenario,
    evaluate_inequality,
    kcbs_p_crit,
)

NEVER_VIOLATES = "never violates"
ALWAYS_VIOLATES = "always violates"
DEFAULT_TOL = 1e-8
MAX_BISECTIONS = 64
_SCAN_POINTS = 101


class NonMonotoneError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SweepPoint:
    p: float
    value: float
    violated: bool


@dataclass
class SweepSeries:
    scenario: str
    placement: NoisePlacement
    state: str
    bound: float
    points: list[SweepPoint] = field(default_factory=list)
    analytic_threshold: float | None = None
    numeric_threshold: float | str | None = None

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "placement": self.placement.value,
            "state": self.state,
            "bound": self.bound,
            "points": [{"p": q.p, "value": q.value, "violated": q.violated} for q in self.points],
            "analytic_threshold": self.analytic_threshold,
            "numeric_threshold": self.numeric_threshold,
        }


def evaluate_at(s: Scenario, rho: CMat, placement: NoisePlacement, p: float,
                picture: Picture = Picture.BOTH, state_label: str = "custom") -> EvalReport:
    noise = Depolarizing(p, s.dimension)
    return evaluate_inequality(s, rho, noise, placement, picture, state_label)


def analytic_threshold(s: Scenario, rho: CMat, placement: NoisePlacement) -> float | None:
    """Closed-form threshold where one is known: KCBS with noise before the test,
    Peres-Mermin with noise before each measurement."""
    if s.name == "kcbs" and placement is NoisePlacement.BEFORE_FIRST_ONLY:
        s_rho = evaluate_inequality(s, rho, picture=Picture.SCHRODINGER).value
        return kcbs_p_crit(s_rho) if s_rho < -3.0 else None
    if s.name == "pm" and placement is NoisePlacement.BEFORE_EACH:
        return math.sqrt(2.0 / 3.0)
    return None


def sweep(s: Scenario, rho: CMat, placement: NoisePlacement, p_min: float = 0.0, p_max: float = 1.0,
          steps: int = 11, state_label: str = "custom", threshold_tol: float | None = None) -> SweepSeries:
    if not 0.0 <= p_min < p_max <= 1.0:
        raise ValueError(f"need 0 <= p_min < p_max <= 1, got [{p_min}, {p_max}]")
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    series = SweepSeries(s.name, placement, state_label, s.inequality.bound)
    for p in np.linspace(p_min, p_max, steps):
        rep = evaluate_at(s, rho, placement, float(p), state_label=state_label)
        series.points.append(SweepPoint(float(p), rep.value, rep.violated))
    series.analytic_threshold = analytic_threshold(s, rho, placement)
    if threshold_tol is not None:
        series.numeric_threshold = find_threshold(s, rho, placement, threshold_tol)
    return series


def sweep_time(s: Scenario, rho: CMat, placement: NoisePlacement, gamma: float,
               times: Sequence[float], state_label: str = "custom") -> list[tuple[float, float, float]]:
    """``(t, p(t), value)`` along the isotropic qubit-decoherence trajectory."""
    out = []
    for t in times:
        p = lindblad_p(gamma, t)
        out.append((float(t), p, evaluate_at(s, rho, placement, p, state_label=state_label).value))
    return out


def find_threshold(s: Scenario, rho: CMat, placement: NoisePlacement,
                   tol: float = DEFAULT_TOL) -> float | str:
    """Bisect on p in [0, 1] for the point where the inequality starts being violated.

    Returns a float within ``tol`` of the crossing, or one of the sentinels
    ``NEVER_VIOLATES`` / ``ALWAYS_VIOLATES``.  Violation exactly at the
    bound counts as no violation.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")

    def violated(p: float) -> bool:
        return evaluate_at(s, rho, placement, p, picture=Picture.SCHRODINGER).violated

    v0, v1 = violated(0.0), violated(1.0)
    if v0 == v1:
        interior = [violated(float(p)) for p in np.linspace(0.0, 1.0, _SCAN_POINTS)[1:-1]]
        if any(x != v0 for x in interior):
            raise NonMonotoneError(
                f"{s.name}: endpoints agree (violated={v0}) but the verdict changes inside (0, 1)"
            )
        return ALWAYS_VIOLATES if v0 else NEVER_VIOLATES
    lo, hi = 0.0, 1.0  # verdict at lo is v0, at hi is v1
    for _ in range(MAX_BISECTIONS):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if violated(mid) == v0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def experiment_consistency(p: float) -> float:
    """Noisy Peres-Mermin value ``6 p^2`` for noise before each measurement."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return 6.0 * p * p
