import math

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import random_state, seeds
from ksnoise.channels import SIGMA_Y, SIGMA_Z, Depolarizing, InvalidStateError
from ksnoise.linalg import DimensionError, commutator, frob_dist, identity, kron, mat_product, trace
from ksnoise.measure import NoisePlacement, Observable
from ksnoise.scenarios import (
    KCBS_MAX_VIOLATION,
    Inequality,
    Picture,
    Scenario,
    evaluate_inequality,
    kcbs_noisy_value,
    kcbs_optimal_state,
    kcbs_p_crit,
    kcbs_scenario,
    kcbs_vectors,
    maximally_mixed,
    peres_mermin_scenario,
    validate_scenario,
)

KCBS = kcbs_scenario()
PM = peres_mermin_scenario()
SQRT5 = math.sqrt(5)


def test_kcbs_structure():
    assert KCBS.dimension == 3 and len(KCBS.measurements) == 5
    assert KCBS.contexts == ((0, 1), (1, 2), (2, 3), (3, 4), (4, 0))
    assert KCBS.inequality == Inequality((1,) * 5, -3, ">=")
    v = kcbs_vectors()
    # 1/sqrt5 + (1 - 1/sqrt5) cos(4 pi / 5) = 0
    assert 1 / SQRT5 + (1 - 1 / SQRT5) * math.cos(4 * math.pi / 5) == pytest.approx(0, abs=1e-15)
    for i in range(5):
        assert abs(np.vdot(v[i], v[(i + 1) % 5])) < 1e-12
        a, b = KCBS.measurements[i].matrix, KCBS.measurements[(i + 1) % 5].matrix
        assert np.linalg.norm(commutator(a, b)) < 1e-10
        assert trace(a).real == pytest.approx(-1, abs=1e-12)
        assert trace(a @ b).real == pytest.approx(-1, abs=1e-10)


def test_kcbs_optimal_state():
    psi = kcbs_optimal_state()
    assert trace(psi) == 1 and frob_dist(psi @ psi, psi) == 0
    assert evaluate_inequality(KCBS, psi).value == pytest.approx(5 - 4 * SQRT5, abs=1e-10)
    assert evaluate_inequality(KCBS, maximally_mixed(3)).value == pytest.approx(-5 / 3, abs=1e-12)


def test_pm_structure(rng):
    assert PM.dimension == 4 and len(PM.measurements) == 9 and len(PM.contexts) == 6
    assert PM.inequality == Inequality((1, 1, 1, -1, -1, -1), 4, "<=")
    for k, ctx in enumerate(PM.contexts):
        prod = mat_product(*(PM.measurements[i].matrix for i in ctx))
        assert frob_dist(prod, (1 if k < 3 else -1) * identity(4)) < 1e-12
    assert frob_dist(PM.measurements[0].matrix, kron(SIGMA_Y, SIGMA_Z)) == 0
    for rho in [maximally_mixed(4)] + [random_state(4, rng) for _ in range(20)]:
        assert evaluate_inequality(PM, rho).value == pytest.approx(6, abs=1e-10)


def test_validate_builtin_and_broken():
    assert validate_scenario(KCBS).ok
    assert validate_scenario(PM).ok
    meas = list(PM.measurements)
    meas[1] = Observable("A12'", kron(SIGMA_Y, SIGMA_Z))
    broken = Scenario("pm-broken", 4, tuple(meas), PM.contexts, PM.inequality)
    diag = validate_scenario(broken)
    assert not diag.ok
    assert diag.failure.startswith("context 0 duplicate")
    assert "A11" in diag.failure and "A12'" in diag.failure


def test_validate_non_commuting_and_uncovered():
    z, y = Observable("Z", SIGMA_Z), Observable("Y", SIGMA_Y)
    s = Scenario("toy", 2, (z, y), ((0, 1),), Inequality((1,), 1, "<="))
    diag = validate_scenario(s)
    assert not diag.ok and "non-commuting" in diag.failure and "Z" in diag.failure
    s = Scenario("toy", 2, (z, y), ((0,),), Inequality((1,), 1, "<="))
    assert "appears in no context" in validate_scenario(s).failure


def test_scenario_structural_errors():
    z = Observable("Z", SIGMA_Z)
    with pytest.raises(ValueError):
        Scenario("toy", 2, (z,), ((0, 3),), Inequality((1,), 1, "<="))
    with pytest.raises(ValueError):
        Scenario("toy", 2, (z,), ((0,),), Inequality((1, 1), 1, "<="))
    with pytest.raises(DimensionError):
        Scenario("toy", 3, (z,), ((0,),), Inequality((1,), 1, "<="))
    with pytest.raises(ValueError):
        Inequality((1,), 1, "<")


def test_evaluate_noisy_pm_examples(rng):
    rho = random_state(4, rng)
    for p in (0.5, 0.81, 0.82, 0.9):
        rep = evaluate_inequality(PM, rho, Depolarizing(p, 4), NoisePlacement.BEFORE_EACH)
        assert rep.value == pytest.approx(6 * p * p, abs=1e-9)
        assert rep.violated == (p * p > 2 / 3)
        assert rep.picture == "both-agree" and rep.p == p
        assert rep.value == pytest.approx(sum(g * c for g, c in zip(PM.inequality.gamma, rep.correlators)), abs=1e-12)


def test_evaluate_noisy_kcbs_examples():
    psi = kcbs_optimal_state()
    for p in (0.0, 0.4, 0.7, 1.0):
        rep = evaluate_inequality(KCBS, psi, Depolarizing(p, 3), NoisePlacement.BEFORE_FIRST_ONLY,
                                  Picture.SCHRODINGER)
        assert rep.value == pytest.approx(p * (5 - 4 * SQRT5) - (1 - p) * 5 / 3, abs=1e-10)
        assert rep.picture == "schrodinger"
    rep = evaluate_inequality(KCBS, maximally_mixed(3))
    assert rep.value == pytest.approx(-5 / 3, abs=1e-12) and not rep.violated
    assert rep.p is None and rep.placement is NoisePlacement.NONE


def test_evaluate_errors():
    with pytest.raises(DimensionError):
        evaluate_inequality(KCBS, maximally_mixed(4))
    with pytest.raises(DimensionError):
        evaluate_inequality(KCBS, maximally_mixed(3), Depolarizing(0.5, 4), NoisePlacement.BEFORE_EACH)
    with pytest.raises(InvalidStateError):
        evaluate_inequality(KCBS, identity(3))


def test_violation_at_bound_is_not_violation():
    assert not PM.inequality.violated_by(4.0)
    assert not PM.inequality.violated_by(4.0 + 5e-11)
    assert PM.inequality.violated_by(4.0 + 1e-9)
    assert not KCBS.inequality.violated_by(-3.0)
    assert KCBS.inequality.violated_by(-3.0 - 1e-9)


def test_kcbs_noisy_value_and_p_crit():
    assert kcbs_noisy_value(KCBS_MAX_VIOLATION, 1) == KCBS_MAX_VIOLATION
    assert kcbs_noisy_value(12.3, 0) == pytest.approx(-5 / 3, abs=1e-15)
    # 0.5 (5 - 4 sqrt5) - 0.5 (5/3) = 5/3 - 2 sqrt5
    assert kcbs_noisy_value(5 - 4 * SQRT5, 0.5) == pytest.approx(-2.8054692883329, abs=1e-12)
    with pytest.raises(ValueError):
        kcbs_noisy_value(-3.5, 1.1)
    assert kcbs_p_crit(5 - 4 * SQRT5) == pytest.approx((5 + 3 * SQRT5) / 20, abs=1e-12)
    assert kcbs_p_crit(5 - 4 * SQRT5) == pytest.approx(0.5854101966, abs=1e-10)
    assert kcbs_p_crit(-3.5) == pytest.approx(8 / 11, abs=1e-15)
    with pytest.raises(ValueError, match="does not violate"):
        kcbs_p_crit(-3.0)


def test_noisy_value_matches_simulation():
    psi = kcbs_optimal_state()
    rep = evaluate_inequality(KCBS, psi, Depolarizing(0.5, 3), NoisePlacement.BEFORE_FIRST_ONLY)
    assert rep.value == pytest.approx(kcbs_noisy_value(KCBS_MAX_VIOLATION, 0.5), abs=1e-10)


@settings(max_examples=25)
@given(seeds)
def test_noisy_laws_random_states(seed):
    rng = np.random.default_rng(seed)
    rho3, rho4 = random_state(3, rng), random_state(4, rng)
    s_rho = evaluate_inequality(KCBS, rho3).value
    for p in np.linspace(0, 1, 11):
        rep = evaluate_inequality(KCBS, rho3, Depolarizing(p, 3), NoisePlacement.BEFORE_FIRST_ONLY)
        assert abs(rep.value - kcbs_noisy_value(s_rho, p)) < 1e-10
        rep = evaluate_inequality(PM, rho4, Depolarizing(p, 4), NoisePlacement.BEFORE_EACH)
        assert abs(rep.value - 6 * p * p) < 1e-9


def test_monotonicity(rng):
    grid = np.linspace(0, 1, 21)
    rho = random_state(4, rng)
    pm_vals = [evaluate_inequality(PM, rho, Depolarizing(p, 4), NoisePlacement.BEFORE_EACH).value for p in grid]
    assert all(b >= a - 1e-12 for a, b in zip(pm_vals, pm_vals[1:]))
    psi = kcbs_optimal_state()
    k_vals = [evaluate_inequality(KCBS, psi, Depolarizing(p, 3), NoisePlacement.BEFORE_FIRST_ONLY).value
              for p in grid]
    assert all(b <= a + 1e-12 for a, b in zip(k_vals, k_vals[1:]))


def test_report_to_dict_roundtrip():
    rep = evaluate_inequality(PM, maximally_mixed(4), Depolarizing(0.9, 4), NoisePlacement.BEFORE_EACH)
    d = rep.to_dict()
    assert d["placement"] == "before-each" and d["violated"] is True
    assert sum(g * c for g, c in zip(PM.inequality.gamma, d["correlators"])) == pytest.approx(d["value"], abs=1e-12)
