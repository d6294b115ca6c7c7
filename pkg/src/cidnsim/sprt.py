"""Sequential probability ratio test over peer consultations.

A node consults acquaintances one at a time, adding each answer's
log-likelihood-ratio term, and stops as soon as the running ratio leaves the
open interval (a, b).  Crossing the upper threshold raises the alarm;
crossing the lower one clears; running out of peers falls back to the
zero-sample Bayes rule applied to the current posterior.  The module also
carries the threshold approximation from target error rates, the expected
consultation counts, and the KL-divergence acquaintance bound, plus a
vectorized Monte Carlo walk driver for population-level studies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .decision import (
    Hypothesis,
    PeerProfile,
    log_likelihood_ratio_term,
)
from ._kernels import walk_chunk

__all__ = [
    "STEP_CAP",
    "ConsultationError",
    "TargetRates",
    "SprtThresholds",
    "SequentialCosts",
    "SymmetricPeerPopulation",
    "SprtState",
    "SprtResult",
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
]

# Hard cap on consultations per run; guards against non-terminating walks
# when the two feedback distributions coincide.
STEP_CAP = 100_000


class ConsultationError(ValueError):
    """A peer was consulted twice within one SPRT run."""


@dataclass(frozen=True)
class TargetRates:
    """Desired error bounds: false-alarm cap and detection floor."""

    false_alarm_cap: float
    detection_floor: float

    def __post_init__(self) -> None:
        if not 0.0 < self.false_alarm_cap < 1.0:
            raise ValueError("false_alarm_cap must lie in (0, 1)")
        if not 0.0 < self.detection_floor < 1.0:
            raise ValueError("detection_floor must lie in (0, 1)")
        if not self.false_alarm_cap < self.detection_floor:
            raise ValueError(
                "degenerate targets: false_alarm_cap must be below detection_floor"
            )


@dataclass(frozen=True)
class SprtThresholds:
    """Likelihood-ratio stopping interval (lower, upper)."""

    lower: float
    upper: float

    def __post_init__(self) -> None:
        if not 0.0 < self.lower < self.upper:
            raise ValueError("thresholds must satisfy 0 < lower < upper")

    @property
    def log_lower(self) -> float:
        return math.log(self.lower)

    @property
    def log_upper(self) -> float:
        return math.log(self.upper)


@dataclass(frozen=True)
class SequentialCosts:
    """Costs steering the sequential decision.

    per_feedback is carried for risk reporting; the threshold approximation
    works from the target rates alone.
    """

    false_alarm: float
    miss: float
    per_feedback: float = 0.0

    def __post_init__(self) -> None:
        if self.false_alarm <= 0.0 or self.miss <= 0.0:
            raise ValueError("false_alarm and miss costs must be positive")
        if self.per_feedback < 0.0:
            raise ValueError("per_feedback cost must be nonnegative")

    @property
    def fallback_threshold(self) -> float:
        """Posterior (no-intrusion) below which the zero-sample rule alarms."""
        return self.miss / (self.false_alarm + self.miss)


@dataclass(frozen=True)
class SymmetricPeerPopulation:
    """Homogeneous peer pool: probability of answering 0 under each truth."""

    theta0: float  # P(feedback 0 | clean)
    theta1: float  # P(feedback 0 | intrusion)

    def __post_init__(self) -> None:
        if not 0.0 < self.theta0 < 1.0 or not 0.0 < self.theta1 < 1.0:
            raise ValueError("theta0 and theta1 must lie in (0, 1)")

    @classmethod
    def from_profile(cls, profile: PeerProfile) -> "SymmetricPeerPopulation":
        return cls(1.0 - profile.false_alarm_rate, 1.0 - profile.detection_rate)

    def to_profile(self) -> PeerProfile:
        return PeerProfile(1.0 - self.theta0, 1.0 - self.theta1)


@dataclass(frozen=True)
class SprtState:
    """Immutable consultation state: prior, accumulated log ratio, peers used."""

    prior_no_intrusion: float
    log_ratio: float = 0.0
    consulted: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not 0.0 <= self.prior_no_intrusion <= 1.0:
            raise ValueError("prior must lie in [0, 1]")

    @property
    def n(self) -> int:
        return len(self.consulted)

    @property
    def ratio(self) -> float:
        return math.exp(self.log_ratio)

    @property
    def posterior_no_intrusion(self) -> float:
        pi0 = self.prior_no_intrusion
        if pi0 in (0.0, 1.0):
            return pi0
        # sigmoid form avoids overflow for large accumulated evidence
        z = self.log_ratio + math.log((1.0 - pi0) / pi0)
        if z >= 0.0:
            e = math.exp(-z)
            return e / (1.0 + e)
        return 1.0 / (1.0 + math.exp(z))


@dataclass(frozen=True)
class SprtResult:
    decision: Hypothesis
    n_consulted: int
    trace: tuple[SprtState, ...]


def initial_state(prior_no_intrusion: float) -> SprtState:
    return SprtState(prior_no_intrusion=prior_no_intrusion)


def thresholds_from_targets(targets: TargetRates) -> SprtThresholds:
    """First-order threshold approximation from target rates.

    lower = (1 - detection floor) / (1 - false-alarm cap), upper =
    detection floor / false-alarm cap; valid targets give lower < 1 < upper.
    """
    lower = (1.0 - targets.detection_floor) / (1.0 - targets.false_alarm_cap)
    upper = targets.detection_floor / targets.false_alarm_cap
    return SprtThresholds(lower=lower, upper=upper)


def posterior_update(pi0: float, ratio: float) -> float:
    """Posterior no-intrusion probability after evidence with the given ratio."""
    if not 0.0 <= pi0 <= 1.0:
        raise ValueError("pi0 must lie in [0, 1]")
    if not ratio > 0.0:
        raise ValueError("ratio must be positive")
    if pi0 in (0.0, 1.0):
        return pi0
    return pi0 / (pi0 + (1.0 - pi0) * ratio)


def posterior_stopping_bounds(
    prior_no_intrusion: float, thresholds: SprtThresholds
) -> tuple[float, float]:
    """The stopping interval rephrased on the posterior scale.

    Consultation continues while the posterior sits strictly between the
    returned (low, high); the ratio hitting the upper threshold maps to the
    posterior hitting the low bound.
    """
    return (
        posterior_update(prior_no_intrusion, thresholds.upper),
        posterior_update(prior_no_intrusion, thresholds.lower),
    )


def sprt_step(
    state: SprtState, feedback: int, profile: PeerProfile, peer_id: int
) -> SprtState:
    """Consume one feedback; returns a new state, the input is unchanged."""
    if peer_id in state.consulted:
        raise ConsultationError(f"peer {peer_id} already consulted in this run")
    return SprtState(
        prior_no_intrusion=state.prior_no_intrusion,
        log_ratio=state.log_ratio + log_likelihood_ratio_term(feedback, profile),
        consulted=state.consulted + (peer_id,),
    )


def stopping_rule(state: SprtState, thresholds: SprtThresholds) -> bool:
    """True when consultation must stop; boundary values stop."""
    return not (thresholds.log_lower < state.log_ratio < thresholds.log_upper)


def terminal_decision(
    state: SprtState, thresholds: SprtThresholds, costs: SequentialCosts
) -> Hypothesis:
    """Decision at stop or exhaustion.

    At or above the upper threshold: alarm.  At or below the lower: clear.
    Strictly inside the interval (list exhausted), apply the zero-sample
    Bayes rule to the current posterior.
    """
    if state.log_ratio >= thresholds.log_upper:
        return Hypothesis.INTRUSION
    if state.log_ratio <= thresholds.log_lower:
        return Hypothesis.NO_INTRUSION
    if state.posterior_no_intrusion < costs.fallback_threshold:
        return Hypothesis.INTRUSION
    return Hypothesis.NO_INTRUSION


def terminal_risk(pi0: float, costs: SequentialCosts) -> float:
    """Expected cost of deciding now with no further feedback."""
    if not 0.0 <= pi0 <= 1.0:
        raise ValueError("pi0 must lie in [0, 1]")
    if pi0 < costs.fallback_threshold:
        return costs.false_alarm * pi0
    return costs.miss * (1.0 - pi0)


def run_sprt(
    acquaintances: Sequence[tuple[int, PeerProfile]],
    feedback_source: Callable[[int], int],
    thresholds: SprtThresholds,
    costs: SequentialCosts,
    prior_no_intrusion: float,
    step_cap: int = STEP_CAP,
) -> SprtResult:
    """Consult peers in list order until the stopping rule fires or the list ends.

    An empty list decides immediately through the exhaustion fallback.  The
    step cap bounds pathological runs; hitting it is treated as exhaustion.
    """
    state = initial_state(prior_no_intrusion)
    trace = [state]
    for peer_id, profile in acquaintances:
        if stopping_rule(state, thresholds) or state.n >= step_cap:
            break
        state = sprt_step(state, feedback_source(peer_id), profile, peer_id)
        trace.append(state)
    decision = terminal_decision(state, thresholds, costs)
    return SprtResult(decision=decision, n_consulted=state.n, trace=tuple(trace))


def kl_divergence(pop: SymmetricPeerPopulation, direction: str = "h0") -> float:
    """Per-feedback divergence between the two answer distributions.

    direction "h0": expected log drift of the (clean-side) ratio per answer
    drawn under no intrusion, D(p0 || p1).  direction "h1": the reverse.
    """
    t0, t1 = pop.theta0, pop.theta1
    if t0 == t1:
        return 0.0
    if direction == "h0":
        p, q = t0, t1
    elif direction == "h1":
        p, q = t1, t0
    else:
        raise ValueError("direction must be 'h0' or 'h1'")
    return p * math.log(p / q) + (1.0 - p) * math.log((1.0 - p) / (1.0 - q))


def expected_sample_size(
    achieved: TargetRates, pop: SymmetricPeerPopulation
) -> tuple[float, float]:
    """Expected consultations to reach a decision under each truth.

    The argument carries achieved error rates (reusing the TargetRates
    shape): they weight the exit points of the first-order identity, and the
    interval comes from thresholds_from_targets on the same rates.  Returns
    (mean under no intrusion, mean under intrusion).
    """
    d01 = kl_divergence(pop, "h0")
    d10 = kl_divergence(pop, "h1")
    if d01 == 0.0 or d10 == 0.0:
        raise ValueError("zero divergence: the two answer distributions coincide")
    thresholds = thresholds_from_targets(achieved)
    ln_a, ln_b = thresholds.log_lower, thresholds.log_upper
    p_f = achieved.false_alarm_cap
    p_d = achieved.detection_floor
    e_h0 = ((1.0 - p_f) * ln_a + p_f * ln_b) / (-d01)
    e_h1 = ((1.0 - p_d) * ln_a + p_d * ln_b) / d10
    return e_h0, e_h1


def acquaintance_bound(
    achieved: TargetRates, pop: SymmetricPeerPopulation, variant: str = "wald"
) -> int:
    """Acquaintances needed on average to reach a decision.

    variant "wald" (default): ceiling of the larger expected_sample_size
    value, with exit weights (1-P_F, P_F) under the clean truth and
    (1-P_D, P_D) under intrusion.  variant "literal": the same ratio with
    exit weights (P_F, P_D) in both numerators.  variant "approx": the
    log-free small-error form; degenerate (nonpositive) for realistic
    rates, retained for comparison only.
    """
    d01 = kl_divergence(pop, "h0")
    d10 = kl_divergence(pop, "h1")
    if d01 == 0.0 or d10 == 0.0:
        raise ValueError("zero divergence: the two answer distributions coincide")
    p_f = achieved.false_alarm_cap
    p_d = achieved.detection_floor
    if variant == "wald":
        e_h0, e_h1 = expected_sample_size(achieved, pop)
    elif variant == "literal":
        thresholds = thresholds_from_targets(achieved)
        ln_a, ln_b = thresholds.log_lower, thresholds.log_upper
        e_h0 = (p_f * ln_b + p_d * ln_a) / (-d01)
        e_h1 = (p_f * ln_a + p_d * ln_b) / d10
    elif variant == "approx":
        e_h0 = (p_d - 1.0) / d01
        e_h1 = -p_f / d10
    else:
        raise ValueError("variant must be 'wald', 'literal' or 'approx'")
    return max(math.ceil(e_h0), math.ceil(e_h1))


def simulate_stopping(
    pop: SymmetricPeerPopulation,
    thresholds: SprtThresholds,
    intrusion: bool,
    n_runs: int,
    rng: np.random.Generator,
    step_cap: int = STEP_CAP,
    chunk: int = 64,
) -> tuple[np.ndarray, np.ndarray]:
    """Monte Carlo walks with unlimited i.i.d. peer supply.

    Returns (alarmed, steps): whether each run exited at the upper
    threshold, and after how many answers.  Runs still undecided at the
    step cap raise, since with distinct answer distributions that signals
    a modeling error rather than bad luck.
    """
    if n_runs <= 0:
        raise ValueError("n_runs must be positive")
    p_zero = pop.theta1 if intrusion else pop.theta0
    inc_zero = math.log(pop.theta1 / pop.theta0)
    inc_one = math.log((1.0 - pop.theta1) / (1.0 - pop.theta0))
    log_a, log_b = thresholds.log_lower, thresholds.log_upper

    alarmed = np.zeros(n_runs, dtype=bool)
    steps = np.zeros(n_runs, dtype=np.int64)
    state = np.zeros(n_runs, dtype=np.float64)
    active = np.arange(n_runs)
    done_steps = np.zeros(n_runs, dtype=np.int64)

    while active.size:
        if done_steps[active[0]] >= step_cap:
            raise RuntimeError(f"SPRT walk exceeded the {step_cap}-step cap")
        u = rng.random((active.size, chunk))
        status, in_chunk, new_state = walk_chunk(
            u, state[active], p_zero, inc_zero, inc_one, log_a, log_b
        )
        state[active] = new_state
        done_steps[active] += in_chunk
        finished = status != 0
        if finished.any():
            idx = active[finished]
            alarmed[idx] = status[finished] == 2
            steps[idx] = done_steps[idx]
            active = active[~finished]
    return alarmed, steps
