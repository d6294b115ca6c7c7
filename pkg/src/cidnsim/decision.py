"""Fixed-sample Bayesian binary hypothesis testing over independent peer feedback.

Feedback is binary (1 = alarm).  Each peer is summarized by its false-alarm
rate and detection rate; independent feedback multiplies likelihood-ratio
terms, and a cost/prior threshold turns the ratio into a decision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

__all__ = [
    "RATE_CLAMP",
    "Hypothesis",
    "PeerProfile",
    "Priors",
    "CostMatrix",
    "likelihood_ratio_term",
    "log_likelihood_ratio_term",
    "likelihood_ratio",
    "log_likelihood_ratio",
    "bayes_threshold",
    "bayes_decide",
    "ml_decide",
]

# Peer rates are clamped away from {0, 1} so ratio terms stay finite.
RATE_CLAMP = 1e-6


class Hypothesis(Enum):
    NO_INTRUSION = 0
    INTRUSION = 1


def clamp_rate(p: float) -> float:
    """Pull a probability into [RATE_CLAMP, 1 - RATE_CLAMP]."""
    return min(max(p, RATE_CLAMP), 1.0 - RATE_CLAMP)


@dataclass(frozen=True)
class PeerProfile:
    """A peer's feedback error rates: P(alarm | clean) and P(alarm | intrusion)."""

    false_alarm_rate: float
    detection_rate: float

    def __post_init__(self) -> None:
        for name in ("false_alarm_rate", "detection_rate"):
            v = getattr(self, name)
            if not RATE_CLAMP <= v <= 1.0 - RATE_CLAMP:
                raise ValueError(
                    f"{name} must lie in [{RATE_CLAMP}, {1.0 - RATE_CLAMP}], got {v!r}"
                )

    @property
    def miss_rate(self) -> float:
        return 1.0 - self.detection_rate

    @staticmethod
    def from_raw(false_alarm_rate: float, detection_rate: float) -> "PeerProfile":
        """Build a profile from unclamped rates, applying the clamp."""
        return PeerProfile(clamp_rate(false_alarm_rate), clamp_rate(detection_rate))


@dataclass(frozen=True)
class Priors:
    """Prior probabilities of the two hypotheses."""

    no_intrusion: float
    intrusion: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.no_intrusion <= 1.0 and 0.0 <= self.intrusion <= 1.0):
            raise ValueError("priors must lie in [0, 1]")
        if abs(self.no_intrusion + self.intrusion - 1.0) > 1e-12:
            raise ValueError("priors must sum to 1")


@dataclass(frozen=True)
class CostMatrix:
    """Decision costs; an error must cost more than the matching correct call.

    false_alarm: decide intrusion, truth clean.   miss: decide clean, truth
    intrusion.  true_alarm / true_clear: the correct calls.
    """

    false_alarm: float = 1.0
    miss: float = 1.0
    true_alarm: float = 0.0
    true_clear: float = 0.0

    def __post_init__(self) -> None:
        for name in ("false_alarm", "miss", "true_alarm", "true_clear"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"cost {name} must be nonnegative")
        if not self.false_alarm > self.true_clear:
            raise ValueError("false_alarm cost must exceed true_clear cost")
        if not self.miss > self.true_alarm:
            raise ValueError("miss cost must exceed true_alarm cost")


def likelihood_ratio_term(feedback: int, profile: PeerProfile) -> float:
    """Single-feedback likelihood ratio P(y | intrusion) / P(y | clean)."""
    if feedback not in (0, 1):
        raise ValueError("feedback must be 0 or 1")
    if feedback == 1:
        return profile.detection_rate / profile.false_alarm_rate
    return (1.0 - profile.detection_rate) / (1.0 - profile.false_alarm_rate)


def log_likelihood_ratio_term(feedback: int, profile: PeerProfile) -> float:
    if feedback not in (0, 1):
        raise ValueError("feedback must be 0 or 1")
    if feedback == 1:
        return math.log(profile.detection_rate) - math.log(profile.false_alarm_rate)
    return math.log1p(-profile.detection_rate) - math.log1p(-profile.false_alarm_rate)


def log_likelihood_ratio(
    feedbacks: Sequence[int], profiles: Sequence[PeerProfile]
) -> float:
    """Sum of per-peer log ratio terms; 0.0 for empty input."""
    if len(feedbacks) != len(profiles):
        raise ValueError(
            f"feedback/profile length mismatch: {len(feedbacks)} vs {len(profiles)}"
        )
    return sum(log_likelihood_ratio_term(y, p) for y, p in zip(feedbacks, profiles))


def likelihood_ratio(
    feedbacks: Sequence[int], profiles: Sequence[PeerProfile]
) -> float:
    """Joint likelihood ratio of independent feedback; empty input gives 1.0."""
    # accumulated in log space, exponentiated once at the end
    return math.exp(log_likelihood_ratio(feedbacks, profiles))


def bayes_threshold(costs: CostMatrix, priors: Priors) -> float:
    """Ratio threshold above which alarming has lower expected cost."""
    if priors.intrusion == 0.0:
        raise ValueError("degenerate prior: intrusion probability is zero")
    return ((costs.false_alarm - costs.true_clear) * priors.no_intrusion) / (
        (costs.miss - costs.true_alarm) * priors.intrusion
    )


def bayes_decide(ratio: float, tau: float) -> Hypothesis:
    """Threshold rule; the boundary ratio == tau decides intrusion."""
    if not (math.isfinite(ratio) and ratio > 0.0):
        raise ValueError("ratio must be finite and positive")
    if not (math.isfinite(tau) and tau > 0.0):
        raise ValueError("tau must be finite and positive")
    if ratio >= tau:
        return Hypothesis.INTRUSION
    return Hypothesis.NO_INTRUSION


def ml_decide(feedbacks: Sequence[int], profiles: Sequence[PeerProfile]) -> Hypothesis:
    """Maximum-likelihood rule: the Bayes rule with unit threshold."""
    return bayes_decide(likelihood_ratio(feedbacks, profiles), 1.0)
