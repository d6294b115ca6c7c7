"""Beta-reputation trust built from time-stamped test-message outcomes.

Each observer keeps, per acquaintance, discounted counts of alarms and
non-alarms split by the known ground truth of the test scenario.  Old
records are down-weighted exponentially in their age, so recent behavior
dominates.  Trust is directional: the harness keys tables by
(observer, subject).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .decision import Hypothesis, PeerProfile, clamp_rate
from .special import log_beta

__all__ = [
    "DiagnosisRecord",
    "BetaTrust",
    "accumulate",
    "accumulate_arrays",
    "expected_rates",
    "gaussian_approx",
    "beta_density",
]


@dataclass(frozen=True)
class DiagnosisRecord:
    """One test-message outcome.

    truth is the known ground truth of the test scenario; result is the
    peer's binary feedback (1 = alarm).  On clean scenarios result 1 is a
    false alarm; on intrusion scenarios result 1 is a correct detection.
    """

    timestamp: float
    truth: Hypothesis
    result: int

    def __post_init__(self) -> None:
        if self.timestamp < 0.0:
            raise ValueError("timestamp must be nonnegative")
        if self.result not in (0, 1):
            raise ValueError("result must be 0 or 1")


@dataclass(frozen=True)
class BetaTrust:
    """Discounted evidence accumulators, one Beta pair per scenario class.

    alpha_f/beta_f: weighted alarms / non-alarms on clean scenarios.
    alpha_d/beta_d: the same on intrusion scenarios.  The discount factors
    used to build the accumulators ride along for reference.
    """

    alpha_f: float = 0.0
    beta_f: float = 0.0
    alpha_d: float = 0.0
    beta_d: float = 0.0
    lambda_f: float = 1.0
    lambda_d: float = 1.0

    def __post_init__(self) -> None:
        for name in ("alpha_f", "beta_f", "alpha_d", "beta_d"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be nonnegative")
        for name in ("lambda_f", "lambda_d"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")

    def false_alarm_shapes(self) -> tuple[float, float]:
        """Beta density shapes for the false-alarm rate (accumulators + 1)."""
        return self.alpha_f + 1.0, self.beta_f + 1.0

    def detection_shapes(self) -> tuple[float, float]:
        return self.alpha_d + 1.0, self.beta_d + 1.0


def accumulate(
    records: Iterable[DiagnosisRecord],
    lambda_f: float,
    lambda_d: float,
    now: float,
) -> BetaTrust:
    """Fold records into discounted accumulators.

    The discount exponent is the record age (now - timestamp): recent
    records carry more weight.  A record from the future is an error.
    """
    if not 0.0 < lambda_f <= 1.0 or not 0.0 < lambda_d <= 1.0:
        raise ValueError("discount factors must lie in (0, 1]")
    alpha_f = beta_f = alpha_d = beta_d = 0.0
    for rec in records:
        age = now - rec.timestamp
        if age < 0.0:
            raise ValueError(
                f"record timestamp {rec.timestamp} is later than now={now}"
            )
        if rec.truth is Hypothesis.NO_INTRUSION:
            w = lambda_f**age
            if rec.result == 1:
                alpha_f += w
            else:
                beta_f += w
        else:
            w = lambda_d**age
            if rec.result == 1:
                alpha_d += w
            else:
                beta_d += w
    return BetaTrust(alpha_f, beta_f, alpha_d, beta_d, lambda_f, lambda_d)


def accumulate_arrays(
    timestamps: np.ndarray,
    intrusion: np.ndarray,
    results: np.ndarray,
    lambda_f: float,
    lambda_d: float,
    now: float,
) -> BetaTrust:
    """Vectorized accumulate; same result as the record-based form."""
    if not 0.0 < lambda_f <= 1.0 or not 0.0 < lambda_d <= 1.0:
        raise ValueError("discount factors must lie in (0, 1]")
    ts = np.asarray(timestamps, dtype=np.float64)
    if ts.size and float(ts.max()) > now:
        raise ValueError("record timestamp later than now")
    truth = np.asarray(intrusion, dtype=bool)
    res = np.asarray(results)
    ages = now - ts
    w_f = np.power(lambda_f, ages[~truth])
    w_d = np.power(lambda_d, ages[truth])
    r_f = res[~truth]
    r_d = res[truth]
    return BetaTrust(
        float(np.sum(w_f * r_f)),
        float(np.sum(w_f * (1 - r_f))),
        float(np.sum(w_d * r_d)),
        float(np.sum(w_d * (1 - r_d))),
        lambda_f,
        lambda_d,
    )


def expected_rates(trust: BetaTrust) -> PeerProfile:
    """Mean of each Beta accumulator pair, as a clamped profile.

    A class with zero accumulated weight falls back to the uninformative
    rate 0.5, so a peer with no history looks useless rather than breaking
    the likelihood arithmetic.
    """
    total_f = trust.alpha_f + trust.beta_f
    total_d = trust.alpha_d + trust.beta_d
    p_f = trust.alpha_f / total_f if total_f > 0.0 else 0.5
    p_d = trust.alpha_d / total_d if total_d > 0.0 else 0.5
    return PeerProfile(clamp_rate(p_f), clamp_rate(p_d))


def gaussian_approx(alpha: float, beta: float) -> tuple[float, float]:
    """Mean and standard deviation of the matching Beta-shaped belief."""
    total = alpha + beta
    if total <= 0.0:
        raise ValueError("insufficient data: zero total accumulator weight")
    mean = alpha / total
    var = (alpha * beta) / (total * total * (total + 1.0))
    return mean, math.sqrt(var)


def beta_density(x: float, alpha: float, beta: float) -> float:
    """Beta(alpha, beta) density at x.

    Takes density shapes, not raw accumulators; convert accumulators via
    the +1 smoothing helpers on BetaTrust.
    """
    if alpha <= 0.0 or beta <= 0.0:
        raise ValueError("beta density shapes must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if x == 0.0:
        if alpha > 1.0:
            return 0.0
        if alpha == 1.0:
            return math.exp(-log_beta(alpha, beta))
        return math.inf
    if x == 1.0:
        if beta > 1.0:
            return 0.0
        if beta == 1.0:
            return math.exp(-log_beta(alpha, beta))
        return math.inf
    return math.exp(
        (alpha - 1.0) * math.log(x)
        + (beta - 1.0) * math.log1p(-x)
        - log_beta(alpha, beta)
    )
