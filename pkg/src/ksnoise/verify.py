"""Self-verification suite behind ``ksnoise verify``.

Each check reports the worst residual it measured against a fixed tolerance.
Random sampling is driven by a single seed so repeated runs are identical.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import channels as ch
from .linalg import frob_dist, identity, mat_product, trace
from .measure import NoisePlacement, sequential_correlator, sequential_correlator_heisenberg
from .ncmodel import classical_bound, noncontextual_feasible
from .noisescan import find_threshold
from .scenarios import (
    KCBS_MAX_VIOLATION,
    Picture,
    evaluate_inequality,
    kcbs_optimal_state,
    kcbs_p_crit,
    kcbs_scenario,
    kcbs_vectors,
    maximally_mixed,
    peres_mermin_scenario,
    random_state,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tol: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.residual < self.tol


def random_hermitian(d: int, rng: np.random.Generator) -> np.ndarray:
    m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return 0.5 * (m + m.conj().T)


def matrix_basis(d: int) -> list[np.ndarray]:
    out = []
    for i in range(d):
        for j in range(d):
            e = np.zeros((d, d), dtype=np.complex128)
            e[i, j] = 1.0
            out.append(e)
    return out


def _kcbs_orthogonality(rng) -> CheckResult:
    v = kcbs_vectors()
    r = max(abs(np.vdot(v[i], v[(i + 1) % 5])) for i in range(5))
    return CheckResult("kcbs-orthogonality", r, 1e-12)


def _kcbs_trace_identity(rng) -> CheckResult:
    s = kcbs_scenario()
    r = max(abs(trace(s.measurements[i].matrix @ s.measurements[(i + 1) % 5].matrix) + 1) for i in range(5))
    return CheckResult("kcbs-trace-identity", r, 1e-10)


def _kcbs_values(rng) -> CheckResult:
    s = kcbs_scenario()
    r1 = abs(evaluate_inequality(s, kcbs_optimal_state()).value - KCBS_MAX_VIOLATION)
    r2 = abs(evaluate_inequality(s, maximally_mixed(3)).value + 5.0 / 3.0)
    return CheckResult("kcbs-quantum-values", max(r1, r2), 1e-10, "5-4*sqrt(5) and -5/3")


def _pm_products(rows: bool) -> Callable:
    def check(rng) -> CheckResult:
        s = peres_mermin_scenario()
        sign = 1.0 if rows else -1.0
        ctxs = s.contexts[:3] if rows else s.contexts[3:]
        r = max(frob_dist(mat_product(*(s.measurements[i].matrix for i in c)), sign * identity(4)) for c in ctxs)
        return CheckResult("pm-row-product" if rows else "pm-column-product", r, 1e-12)
    return check


def _pm_state_independence(rng) -> CheckResult:
    s = peres_mermin_scenario()
    states = [maximally_mixed(4)] + [random_state(4, rng) for _ in range(20)]
    r = max(abs(evaluate_inequality(s, rho).value - 6.0) for rho in states)
    return CheckResult("pm-state-independence", r, 1e-10, f"{len(states)} states")


def _pm_noisy_law(rng) -> CheckResult:
    s = peres_mermin_scenario()
    r = 0.0
    for rho in [random_state(4, rng) for _ in range(5)]:
        for p in np.linspace(0.0, 1.0, 21):
            rep = evaluate_inequality(s, rho, ch.Depolarizing(p, 4), NoisePlacement.BEFORE_EACH)
            r = max(r, abs(rep.value - 6.0 * p * p))
    return CheckResult("pm-noisy-law", r, 1e-9, "6 p^2, noise before each measurement")


def _kcbs_noisy_law(rng) -> CheckResult:
    s = kcbs_scenario()
    r = 0.0
    for rho in [kcbs_optimal_state()] + [random_state(3, rng) for _ in range(10)]:
        s_rho = evaluate_inequality(s, rho).value
        for p in np.linspace(0.0, 1.0, 11):
            rep = evaluate_inequality(s, rho, ch.Depolarizing(p, 3), NoisePlacement.BEFORE_FIRST_ONLY,
                                      Picture.SCHRODINGER)
            r = max(r, abs(rep.value - (p * s_rho - (1 - p) * 5.0 / 3.0)))
    return CheckResult("kcbs-noisy-law", r, 1e-10, "p S - (1-p) 5/3, noise before the test")


def _duality(rng) -> CheckResult:
    r, n = 0.0, 0
    for d in (2, 3, 4):
        chans = [ch.Depolarizing(float(rng.uniform()), d)]
        if d == 2:
            chans.append(ch.qubit_depolarizing_kraus(float(rng.uniform())))
        if d == 4:
            chans.append(ch.two_qubit_pauli_twirl_kraus(float(rng.uniform())))
        for c in chans:
            for _ in range(200):
                a, rho = random_hermitian(d, rng), random_state(d, rng)
                lhs = trace(a @ ch.apply(c, rho))
                rhs = trace(ch.apply_dual(c, a) @ rho)
                r = max(r, abs(lhs - rhs))
                n += 1
    return CheckResult("duality", r, 1e-10, f"{n} pairs")


def _kraus_equivalence(rng) -> CheckResult:
    r = 0.0
    for p in (0.0, 0.25, 0.5, 0.75, 1.0):
        for d, kraus in ((2, ch.qubit_depolarizing_kraus(p)), (4, ch.two_qubit_pauli_twirl_kraus(p))):
            dep = ch.Depolarizing(p, d)
            for e in matrix_basis(d):
                r = max(r, frob_dist(ch.apply_map(kraus, e), ch.apply_map(dep, e)))
    return CheckResult("kraus-equivalence", r, 1e-12)


def _picture_equivalence(rng) -> CheckResult:
    r = 0.0
    for s in (kcbs_scenario(), peres_mermin_scenario()):
        states = [random_state(s.dimension, rng) for _ in range(20)]
        for p in (0.0, 0.3, 0.6, 1.0):
            noise = ch.Depolarizing(p, s.dimension)
            for placement in NoisePlacement:
                for rho in states:
                    for k in range(len(s.contexts)):
                        obs = s.context_observables(k)
                        a = sequential_correlator(rho, obs, noise, placement)
                        b = sequential_correlator_heisenberg(rho, obs, noise, placement)
                        r = max(r, abs(a - b))
    return CheckResult("picture-equivalence", r, 1e-10)


def _classical_bounds(rng) -> CheckResult:
    k, pm = classical_bound(kcbs_scenario()), classical_bound(peres_mermin_scenario())
    r = abs(k.min + 3.0) + abs(pm.max - 4.0)
    return CheckResult("classical-bounds", r, 1e-15, "KCBS min -3, PM max 4")


def _thresholds(rng) -> CheckResult:
    kcbs, pm = kcbs_scenario(), peres_mermin_scenario()
    t1 = find_threshold(kcbs, kcbs_optimal_state(), NoisePlacement.BEFORE_FIRST_ONLY, 1e-9)
    t2 = find_threshold(pm, maximally_mixed(4), NoisePlacement.BEFORE_EACH, 1e-9)
    r = max(abs(t1 - kcbs_p_crit(KCBS_MAX_VIOLATION)), abs(t2 - math.sqrt(2.0 / 3.0)))
    return CheckResult("thresholds", r, 1e-8, "bisection vs closed form")


def _fine_feasibility(rng) -> CheckResult:
    pm, kcbs = peres_mermin_scenario(), kcbs_scenario()
    bad = 0
    if noncontextual_feasible(pm, [1, 1, 1, -1, -1, -1]).feasible:
        bad += 1
    res = noncontextual_feasible(kcbs, [-1.0 / 3.0] * 5)
    if not res.feasible:
        bad += 1
    return CheckResult("fine-feasibility", float(bad), 0.5, "PM ideal infeasible, KCBS mixed feasible")


CHECKS = [
    _kcbs_orthogonality,
    _kcbs_trace_identity,
    _kcbs_values,
    _pm_products(True),
    _pm_products(False),
    _pm_state_independence,
    _pm_noisy_law,
    _kcbs_noisy_law,
    _duality,
    _kraus_equivalence,
    _picture_equivalence,
    _classical_bounds,
    _thresholds,
    _fine_feasibility,
]


def run_all(seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    return [check(rng) for check in CHECKS]
