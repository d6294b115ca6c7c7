"""Sequential-hypothesis-testing feedback aggregation for collaborative
intrusion detection, with trust-weighted and simple-average baselines and a
Monte Carlo experiment harness."""

from ._kernels import BACKEND
from .aggregate import (
    AggregatorConfig,
    DecisionOutcome,
    OutcomeCategory,
    average_cost,
    classify,
    outcome_cost,
    simple_average,
    trust_weight,
    weighted_average,
)
from .config import ConfigError, ExperimentConfig, load_config, parse_overrides
from .decision import (
    CostMatrix,
    Hypothesis,
    PeerProfile,
    Priors,
    bayes_decide,
    bayes_threshold,
    likelihood_ratio,
    likelihood_ratio_term,
    log_likelihood_ratio,
    log_likelihood_ratio_term,
    ml_decide,
)
from .experiments import (
    EXPERIMENT_IDS,
    Network,
    ResultRow,
    bootstrap_trust,
    build_network,
    emit_csv,
    population_for,
    run_consultation,
    run_experiment,
)
from .peers import (
    DeterministicLimit,
    PeerModel,
    Scenario,
    analytic_rates,
    feedback,
    feedback_tail_rates,
    sample_assessment,
    sample_assessments,
    sample_feedback,
    shape_params,
)
from .sprt import (
    ConsultationError,
    SequentialCosts,
    SprtResult,
    SprtState,
    SprtThresholds,
    SymmetricPeerPopulation,
    TargetRates,
    acquaintance_bound,
    expected_sample_size,
    initial_state,
    kl_divergence,
    posterior_stopping_bounds,
    posterior_update,
    run_sprt,
    simulate_stopping,
    sprt_step,
    stopping_rule,
    terminal_decision,
    terminal_risk,
    thresholds_from_targets,
)
from .trust import (
    BetaTrust,
    DiagnosisRecord,
    accumulate,
    accumulate_arrays,
    beta_density,
    expected_rates,
    gaussian_approx,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "__version__",
    # decision core
    "Hypothesis",
    "PeerProfile",
    "Priors",
    "CostMatrix",
    "likelihood_ratio_term",
    "log_likelihood_ratio_term",
    "log_likelihood_ratio",
    "likelihood_ratio",
    "bayes_threshold",
    "bayes_decide",
    "ml_decide",
    # trust
    "BetaTrust",
    "DiagnosisRecord",
    "accumulate",
    "accumulate_arrays",
    "expected_rates",
    "gaussian_approx",
    "beta_density",
    # peer model
    "PeerModel",
    "Scenario",
    "DeterministicLimit",
    "shape_params",
    "sample_assessment",
    "sample_assessments",
    "feedback",
    "sample_feedback",
    "feedback_tail_rates",
    "analytic_rates",
    # aggregation baselines
    "AggregatorConfig",
    "OutcomeCategory",
    "DecisionOutcome",
    "simple_average",
    "weighted_average",
    "trust_weight",
    "classify",
    "outcome_cost",
    "average_cost",
    # sequential test
    "TargetRates",
    "SprtThresholds",
    "SequentialCosts",
    "SymmetricPeerPopulation",
    "SprtState",
    "SprtResult",
    "ConsultationError",
    "initial_state",
    "thresholds_from_targets",
    "posterior_update",
    "posterior_stopping_bounds",
    "sprt_step",
    "stopping_rule",
    "terminal_decision",
    "terminal_risk",
    "run_sprt",
    "kl_divergence",
    "expected_sample_size",
    "acquaintance_bound",
    "simulate_stopping",
    # experiments
    "ExperimentConfig",
    "ConfigError",
    "parse_overrides",
    "load_config",
    "Network",
    "build_network",
    "bootstrap_trust",
    "run_consultation",
    "run_experiment",
    "ResultRow",
    "emit_csv",
    "EXPERIMENT_IDS",
    "population_for",
]
