"""Fixed-sample baseline aggregators and decision-cost bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .decision import CostMatrix, Hypothesis, PeerProfile

__all__ = [
    "AggregatorConfig",
    "OutcomeCategory",
    "DecisionOutcome",
    "simple_average",
    "weighted_average",
    "trust_weight",
    "classify",
    "average_cost",
    "outcome_cost",
]


@dataclass(frozen=True)
class AggregatorConfig:
    """Decision thresholds of the two baseline schemes."""

    tau_sa: float = 0.5
    tau_wa: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 <= self.tau_sa <= 1.0 or not 0.0 <= self.tau_wa <= 1.0:
            raise ValueError("aggregator thresholds must lie in [0, 1]")


class OutcomeCategory(Enum):
    TRUE_POSITIVE = "tp"
    TRUE_NEGATIVE = "tn"
    FALSE_POSITIVE = "fp"
    FALSE_NEGATIVE = "fn"


@dataclass(frozen=True)
class DecisionOutcome:
    decision: Hypothesis
    truth: int
    category: OutcomeCategory


def simple_average(feedbacks: Sequence[int], tau_sa: float) -> Hypothesis:
    """Alarm when the mean feedback strictly exceeds the threshold."""
    if len(feedbacks) == 0:
        raise ValueError("simple_average needs at least one feedback")
    mean = sum(feedbacks) / len(feedbacks)
    return Hypothesis.INTRUSION if mean > tau_sa else Hypothesis.NO_INTRUSION


def weighted_average(
    feedbacks: Sequence[int], weights: Sequence[float], tau_wa: float
) -> Hypothesis:
    """Alarm when the weight-normalized feedback strictly exceeds the threshold."""
    if len(feedbacks) != len(weights):
        raise ValueError(
            f"feedback/weight length mismatch: {len(feedbacks)} vs {len(weights)}"
        )
    if any(w < 0.0 for w in weights):
        raise ValueError("weights must be nonnegative")
    total = sum(weights)
    if total <= 0.0:
        raise ValueError("total weight must be positive")
    score = sum(w * y for w, y in zip(weights, feedbacks)) / total
    return Hypothesis.INTRUSION if score > tau_wa else Hypothesis.NO_INTRUSION


def trust_weight(profile: PeerProfile) -> float:
    """Expected balanced accuracy of a peer; uninformative peers weigh 0.5."""
    return (profile.detection_rate + (1.0 - profile.false_alarm_rate)) / 2.0


def classify(decision: Hypothesis, truth: int) -> DecisionOutcome:
    if truth not in (0, 1):
        raise ValueError("truth must be 0 or 1")
    if decision is Hypothesis.INTRUSION:
        cat = OutcomeCategory.TRUE_POSITIVE if truth == 1 else OutcomeCategory.FALSE_POSITIVE
    else:
        cat = OutcomeCategory.FALSE_NEGATIVE if truth == 1 else OutcomeCategory.TRUE_NEGATIVE
    return DecisionOutcome(decision=decision, truth=truth, category=cat)


_COST_FIELD = {
    OutcomeCategory.FALSE_POSITIVE: "false_alarm",
    OutcomeCategory.FALSE_NEGATIVE: "miss",
    OutcomeCategory.TRUE_POSITIVE: "true_alarm",
    OutcomeCategory.TRUE_NEGATIVE: "true_clear",
}


def outcome_cost(category: OutcomeCategory, costs: CostMatrix) -> float:
    return getattr(costs, _COST_FIELD[category])


def average_cost(outcomes: Sequence[DecisionOutcome], costs: CostMatrix) -> float:
    """Mean per-decision cost over a nonempty outcome sequence."""
    if len(outcomes) == 0:
        raise ValueError("average_cost needs at least one outcome")
    return sum(outcome_cost(o.category, costs) for o in outcomes) / len(outcomes)
