"""Peer generative model: shapes, sampling, feedback, rate oracles."""

import numpy as np
import pytest

from cidnsim.decision import clamp_rate
from cidnsim.peers import (
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

CLEAN = Scenario(difficulty=0.5, intrusion=False)
HIT = Scenario(difficulty=0.5, intrusion=True)


def test_shape_examples():
    m = PeerModel(0, 0.5, 0.5)
    assert shape_params(m, HIT) == pytest.approx((2.0, 1.0))
    assert shape_params(m, CLEAN) == pytest.approx((1.0, 2.0))
    m7 = PeerModel(0, 0.7, 0.5)
    a, b = shape_params(m7, HIT)
    assert a == pytest.approx(1.0 + 7.0 / 3.0, abs=1e-12)
    assert b == pytest.approx(1.0)


def test_deterministic_limits():
    with pytest.raises(DeterministicLimit):
        shape_params(PeerModel(0, 1.0, 0.5), HIT)
    with pytest.raises(DeterministicLimit):
        shape_params(PeerModel(0, 0.5, 0.5), Scenario(difficulty=0.0, intrusion=True))
    rng = np.random.default_rng(0)
    assert sample_assessment(PeerModel(0, 1.0, 0.5), HIT, rng) == 1.0
    assert sample_assessment(PeerModel(0, 1.0, 0.5), CLEAN, rng) == 0.0
    vals = sample_assessments(PeerModel(0, 0.5, 0.5), Scenario(0.0, True), rng, 5)
    assert (vals == 1.0).all()


def test_sample_mean_matches_beta_mean():
    rng = np.random.default_rng(42)
    draws = sample_assessments(PeerModel(0, 0.5, 0.5), HIT, rng, 100_000)
    # Beta(2,1) mean is 2/3
    assert draws.mean() == pytest.approx(2.0 / 3.0, abs=0.005)


def test_sampling_is_stream_deterministic():
    m = PeerModel(0, 0.6, 0.5)
    a = sample_assessment(m, HIT, np.random.default_rng(123))
    b = sample_assessment(m, HIT, np.random.default_rng(123))
    assert a == b


def test_feedback_strictness():
    assert feedback(0.6, 0.5) == 1
    assert feedback(0.5, 0.5) == 0
    assert feedback(0.999999, 1.0) == 0
    with pytest.raises(ValueError):
        feedback(1.2, 0.5)


def test_analytic_rate_examples():
    p = analytic_rates(PeerModel(0, 0.5, 0.5), 0.5)
    assert p.false_alarm_rate == pytest.approx(0.25, abs=1e-10)
    assert p.detection_rate == pytest.approx(0.75, abs=1e-10)
    p7 = analytic_rates(PeerModel(0, 0.7, 0.5), 0.5)
    assert p7.false_alarm_rate == pytest.approx(0.09921256574801249, abs=1e-9)
    assert p7.detection_rate == pytest.approx(0.9007874342519875, abs=1e-9)


def test_rates_at_threshold_endpoints():
    # everything clears threshold 0; nothing clears threshold 1
    assert feedback_tail_rates(0.5, 0.5, 0.0) == (1.0, 1.0)
    assert feedback_tail_rates(0.5, 0.5, 1.0) == (0.0, 0.0)
    p0 = analytic_rates(PeerModel(0, 0.5, 0.5), 0.5, 0.0)
    assert p0.false_alarm_rate == pytest.approx(1.0, abs=1e-5)
    assert p0.detection_rate == pytest.approx(1.0, abs=1e-5)


def test_tail_rates_match_incomplete_beta():
    # analytic_rates clamps into [1e-6, 1-1e-6]; compare post-clamp
    for l in (0.1, 0.3, 0.5, 0.7, 0.9):
        for tau in (0.2, 0.5, 0.8):
            p_f, p_d = feedback_tail_rates(l, 0.5, tau)
            prof = analytic_rates(PeerModel(0, l, tau), 0.5)
            assert prof.false_alarm_rate == pytest.approx(clamp_rate(p_f), abs=1e-9)
            assert prof.detection_rate == pytest.approx(clamp_rate(p_d), abs=1e-9)


def test_mirror_symmetry_at_central_threshold():
    """At threshold 0.5 the false-alarm and miss rates coincide."""
    for l in np.linspace(0.05, 0.95, 19):
        p_f, p_d = feedback_tail_rates(float(l), 0.5, 0.5)
        assert p_f == pytest.approx(1.0 - p_d, abs=1e-12)


def test_monotone_in_expertise_and_threshold():
    rates = [feedback_tail_rates(l, 0.5, 0.5) for l in np.linspace(0.1, 0.9, 9)]
    fps = [r[0] for r in rates]
    fds = [r[1] for r in rates]
    assert all(b < a for a, b in zip(fps, fps[1:]))
    assert all(b > a for a, b in zip(fds, fds[1:]))
    by_tau = [feedback_tail_rates(0.5, 0.5, t) for t in np.linspace(0.1, 0.9, 9)]
    assert all(b[0] < a[0] for a, b in zip(by_tau, by_tau[1:]))
    assert all(b[1] < a[1] for a, b in zip(by_tau, by_tau[1:]))


def test_sampled_feedback_matches_analytic_rates():
    rng = np.random.default_rng(8)
    m = PeerModel(0, 0.65, 0.45)
    n = 20_000
    clean_hits = sum(sample_feedback(m, CLEAN, rng) for _ in range(200))
    draws = sample_assessments(m, HIT, rng, n)
    p_f, p_d = feedback_tail_rates(0.65, 0.5, 0.45)
    assert clean_hits / 200 == pytest.approx(p_f, abs=0.1)
    assert (draws > 0.45).mean() == pytest.approx(p_d, abs=0.01)


def test_model_validation():
    with pytest.raises(ValueError):
        PeerModel(0, -0.1, 0.5)
    with pytest.raises(ValueError):
        PeerModel(0, 0.5, 1.1)
    with pytest.raises(ValueError):
        Scenario(difficulty=1.5, intrusion=False)
