"""Depolarizing noise and Kochen-Specker contextuality (KCBS and Peres-Mermin)."""

from .channels import (
    Depolarizing,
    Kraus,
    apply,
    apply_dual,
    compose,
    lindblad_p,
    qubit_depolarizing_kraus,
    two_qubit_pauli_twirl_kraus,
)
from .measure import (
    NoisePlacement,
    Observable,
    luders_branch,
    luders_score,
    product_correlator,
    sequential_correlator,
    sequential_correlator_heisenberg,
)
from .ncmodel import Behavior, classical_bound, noncontextual_feasible
from .noisescan import ALWAYS_VIOLATES, NEVER_VIOLATES, experiment_consistency, find_threshold, sweep
from .scenarios import (
    EvalReport,
    Picture,
    Scenario,
    evaluate_inequality,
    kcbs_noisy_value,
    kcbs_optimal_state,
    kcbs_p_crit,
    kcbs_scenario,
    maximally_mixed,
    peres_mermin_scenario,
    random_state,
    validate_scenario,
)

__version__ = "0.1.0"
