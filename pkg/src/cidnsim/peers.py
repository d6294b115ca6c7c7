"""Generative model of one IDS's diagnosis.

A peer confronted with a scenario forms a confidence p_bar in [0, 1] drawn
from a Beta distribution whose shapes depend on the peer's expertise and the
scenario's difficulty, then answers 1 when the confidence strictly exceeds
its decision threshold.  The Beta tails have closed forms, which serve as
exact rate oracles throughout the tests and the harness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decision import PeerProfile, clamp_rate
from .special import regularized_incomplete_beta

__all__ = [
    "DeterministicLimit",
    "PeerModel",
    "Scenario",
    "shape_params",
    "sample_assessment",
    "sample_assessments",
    "feedback",
    "sample_feedback",
    "feedback_tail_rates",
    "analytic_rates",
]


class DeterministicLimit(Exception):
    """Raised where expertise 1 or difficulty 0 makes the assessment exact."""


@dataclass(frozen=True)
class PeerModel:
    """Simulated IDS: expertise level and feedback decision threshold."""

    node_id: int
    expertise: float
    threshold: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.expertise <= 1.0:
            raise ValueError("expertise must lie in [0, 1]")
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError("threshold must lie in [0, 1]")


@dataclass(frozen=True)
class Scenario:
    """A consultation subject: how hard it is to judge, and the truth."""

    difficulty: float
    intrusion: bool

    def __post_init__(self) -> None:
        if not 0.0 <= self.difficulty <= 1.0:
            raise ValueError("difficulty must lie in [0, 1]")


def _shape_coefficient(expertise: float, difficulty: float) -> float:
    # k = l(1-d) / (d(1-l)); grows without bound as l -> 1 or d -> 0
    return expertise * (1.0 - difficulty) / (difficulty * (1.0 - expertise))


def shape_params(model: PeerModel, scenario: Scenario) -> tuple[float, float]:
    """Beta shapes of the confidence draw for this peer on this scenario.

    The informative shape sits on the side of the truth: alarms get the
    heavy alpha when an intrusion is present.
    """
    if model.expertise >= 1.0 or scenario.difficulty <= 0.0:
        raise DeterministicLimit(
            "expertise 1 or difficulty 0: assessment equals the ground truth"
        )
    k = _shape_coefficient(model.expertise, scenario.difficulty)
    r = 1.0 if scenario.intrusion else 0.0
    return 1.0 + k * r, 1.0 + k * (1.0 - r)


def sample_assessment(
    model: PeerModel, scenario: Scenario, rng: np.random.Generator
) -> float:
    """Draw one confidence value; exact truth in the deterministic limit."""
    try:
        alpha, beta = shape_params(model, scenario)
    except DeterministicLimit:
        return 1.0 if scenario.intrusion else 0.0
    return float(rng.beta(alpha, beta))


def sample_assessments(
    model: PeerModel, scenario: Scenario, rng: np.random.Generator, size: int
) -> np.ndarray:
    """Vectorized sample_assessment."""
    try:
        alpha, beta = shape_params(model, scenario)
    except DeterministicLimit:
        return np.full(size, 1.0 if scenario.intrusion else 0.0)
    return rng.beta(alpha, beta, size=size)


def feedback(assessment: float, threshold: float) -> int:
    """1 when the confidence strictly exceeds the threshold, else 0."""
    if not 0.0 <= assessment <= 1.0 or not 0.0 <= threshold <= 1.0:
        raise ValueError("assessment and threshold must lie in [0, 1]")
    return 1 if assessment > threshold else 0


def sample_feedback(
    model: PeerModel, scenario: Scenario, rng: np.random.Generator
) -> int:
    return feedback(sample_assessment(model, scenario, rng), model.threshold)


def feedback_tail_rates(
    expertise: float, difficulty: float, threshold: float
) -> tuple[float, float]:
    """Exact unclamped (false-alarm, detection) rates of the peer model.

    Closed form: under a clean scenario the confidence is Beta(1, 1+k), so
    P(confidence > t) = (1-t)^(1+k); under an intrusion it is Beta(1+k, 1)
    with tail 1 - t^(1+k).  Deterministic limits give exactly (0, 1).
    """
    if expertise >= 1.0 or difficulty <= 0.0:
        return 0.0, 1.0
    k = _shape_coefficient(expertise, difficulty)
    p_false = (1.0 - threshold) ** (1.0 + k)
    p_detect = 1.0 - threshold ** (1.0 + k)
    return p_false, p_detect


def analytic_rates(
    model: PeerModel, difficulty: float, threshold: float | None = None
) -> PeerProfile:
    """True rates of the generative model as a clamped PeerProfile.

    Computed through the regularized incomplete beta so the general-case
    code path exercises the same special function the tests pin down; the
    power-form tails in feedback_tail_rates serve as an independent check.
    """
    t = model.threshold if threshold is None else threshold
    if not 0.0 <= t <= 1.0:
        raise ValueError("threshold must lie in [0, 1]")
    if model.expertise >= 1.0 or difficulty <= 0.0:
        return PeerProfile.from_raw(0.0, 1.0)
    clean = Scenario(difficulty=difficulty, intrusion=False)
    hit = Scenario(difficulty=difficulty, intrusion=True)
    a0, b0 = shape_params(model, clean)
    a1, b1 = shape_params(model, hit)
    p_false = 1.0 - regularized_incomplete_beta(a0, b0, t)
    p_detect = 1.0 - regularized_incomplete_beta(a1, b1, t)
    return PeerProfile.from_raw(p_false, p_detect)
