"""Decision-core unit tests: ratio terms, thresholds, validation."""

import math

import numpy as np
import pytest

from cidnsim.decision import (
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

BALANCED = PeerProfile(0.25, 0.75)


def test_ratio_terms():
    assert likelihood_ratio_term(1, BALANCED) == pytest.approx(3.0)
    assert likelihood_ratio_term(0, BALANCED) == pytest.approx(1 / 3)
    uninformative = PeerProfile(0.5, 0.5)
    assert likelihood_ratio_term(1, uninformative) == pytest.approx(1.0)
    assert likelihood_ratio_term(0, uninformative) == pytest.approx(1.0)


def test_log_term_consistent_with_term():
    rng = np.random.default_rng(3)
    for _ in range(200):
        p = PeerProfile.from_raw(float(rng.uniform()), float(rng.uniform()))
        for y in (0, 1):
            assert math.exp(log_likelihood_ratio_term(y, p)) == pytest.approx(
                likelihood_ratio_term(y, p), rel=1e-12
            )


def test_feedback_must_be_binary():
    with pytest.raises(ValueError):
        likelihood_ratio_term(2, BALANCED)
    with pytest.raises(ValueError):
        log_likelihood_ratio_term(-1, BALANCED)


def test_joint_ratio_and_length_mismatch():
    profiles = [BALANCED] * 3
    assert likelihood_ratio([1, 1, 1], profiles) == pytest.approx(27.0)
    assert likelihood_ratio([], []) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        log_likelihood_ratio([1, 0], profiles)


def test_factorization_property():
    """Joint log ratio is the sum of the parts, up to float addition order."""
    rng = np.random.default_rng(11)
    for _ in range(500):
        n = int(rng.integers(1, 12))
        profiles = [
            PeerProfile.from_raw(float(rng.uniform()), float(rng.uniform()))
            for _ in range(n)
        ]
        ys = [int(b) for b in rng.integers(0, 2, n)]
        joint = log_likelihood_ratio(ys, profiles)
        parts = sum(log_likelihood_ratio_term(y, p) for y, p in zip(ys, profiles))
        assert joint == pytest.approx(parts, abs=1e-9)


def test_permutation_invariance():
    rng = np.random.default_rng(12)
    profiles = [
        PeerProfile.from_raw(float(rng.uniform()), float(rng.uniform()))
        for _ in range(8)
    ]
    ys = [int(b) for b in rng.integers(0, 2, 8)]
    base = log_likelihood_ratio(ys, profiles)
    for _ in range(20):
        order = rng.permutation(8)
        permuted = log_likelihood_ratio(
            [ys[i] for i in order], [profiles[i] for i in order]
        )
        assert permuted == pytest.approx(base, abs=1e-12)


def test_bayes_threshold_values():
    assert bayes_threshold(CostMatrix(), Priors(0.5, 0.5)) == pytest.approx(1.0)
    assert bayes_threshold(CostMatrix(), Priors(2 / 3, 1 / 3)) == pytest.approx(2.0)
    assert bayes_threshold(
        CostMatrix(false_alarm=1.0, miss=2.0), Priors(0.5, 0.5)
    ) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        bayes_threshold(CostMatrix(), Priors(1.0, 0.0))


def test_bayes_decide_boundary_alarms():
    assert bayes_decide(1.0, 1.0) is Hypothesis.INTRUSION
    assert bayes_decide(0.999, 1.0) is Hypothesis.NO_INTRUSION
    with pytest.raises(ValueError):
        bayes_decide(0.0, 1.0)
    with pytest.raises(ValueError):
        bayes_decide(math.inf, 1.0)


def test_ml_decide():
    assert ml_decide([1, 1, 0], [BALANCED] * 3) is Hypothesis.INTRUSION
    assert ml_decide([0, 0, 1], [BALANCED] * 3) is Hypothesis.NO_INTRUSION


def test_profile_validation_and_clamp():
    with pytest.raises(ValueError):
        PeerProfile(0.0, 0.5)
    with pytest.raises(ValueError):
        PeerProfile(0.5, 1.0)
    clamped = PeerProfile.from_raw(0.0, 1.0)
    assert clamped.false_alarm_rate == pytest.approx(1e-6)
    assert clamped.detection_rate == pytest.approx(1.0 - 1e-6)
    assert BALANCED.miss_rate == pytest.approx(0.25)


def test_priors_and_costs_validation():
    with pytest.raises(ValueError):
        Priors(0.6, 0.6)
    with pytest.raises(ValueError):
        CostMatrix(false_alarm=0.0)
    with pytest.raises(ValueError):
        CostMatrix(miss=1.0, true_alarm=1.0)
