"""Trust accumulator tests: discounting, rate extraction, densities."""

import math

import numpy as np
import pytest

from cidnsim.decision import Hypothesis
from cidnsim.trust import (
    BetaTrust,
    DiagnosisRecord,
    accumulate,
    accumulate_arrays,
    beta_density,
    expected_rates,
    gaussian_approx,
)


def _rec(ts, intrusion, result):
    truth = Hypothesis.INTRUSION if intrusion else Hypothesis.NO_INTRUSION
    return DiagnosisRecord(timestamp=ts, truth=truth, result=result)


def test_undiscounted_counting():
    records = [_rec(float(t), True, 1) for t in range(4)]
    t = accumulate(records, 1.0, 1.0, now=10.0)
    assert t.alpha_d == pytest.approx(4.0)
    assert t.beta_d == pytest.approx(0.0)
    assert t.alpha_f == t.beta_f == 0.0


def test_discounted_two_records():
    # ages 0 and 1 with discount 0.9: weights 1 and 0.9
    records = [_rec(5.0, True, 1), _rec(4.0, True, 1)]
    t = accumulate(records, 0.9, 0.9, now=5.0)
    assert t.alpha_d == pytest.approx(1.9, abs=1e-12)
    assert t.beta_d == pytest.approx(0.0)


def test_empty_history():
    t = accumulate([], 0.9, 0.9, now=0.0)
    assert (t.alpha_f, t.beta_f, t.alpha_d, t.beta_d) == (0.0, 0.0, 0.0, 0.0)


def test_future_record_rejected():
    with pytest.raises(ValueError):
        accumulate([_rec(2.0, False, 0)], 0.9, 0.9, now=1.0)
    with pytest.raises(ValueError):
        accumulate_arrays(
            np.array([2.0]), np.array([False]), np.array([0]), 0.9, 0.9, 1.0
        )


def test_discount_bounds():
    with pytest.raises(ValueError):
        accumulate([], 0.0, 0.9, now=0.0)
    with pytest.raises(ValueError):
        accumulate([], 0.9, 1.5, now=0.0)


def test_order_independence():
    rng = np.random.default_rng(2024)
    records = [
        _rec(float(rng.uniform(0, 9)), bool(rng.integers(2)), int(rng.integers(2)))
        for _ in range(60)
    ]
    base = accumulate(records, 0.8, 0.95, now=10.0)
    for _ in range(10):
        order = rng.permutation(len(records))
        t = accumulate([records[i] for i in order], 0.8, 0.95, now=10.0)
        for name in ("alpha_f", "beta_f", "alpha_d", "beta_d"):
            assert getattr(t, name) == pytest.approx(getattr(base, name), abs=1e-12)


def test_array_form_matches_record_form():
    rng = np.random.default_rng(99)
    n = 200
    ts = rng.uniform(0, 5, n)
    intr = rng.integers(0, 2, n).astype(bool)
    res = rng.integers(0, 2, n)
    records = [_rec(float(t), bool(i), int(r)) for t, i, r in zip(ts, intr, res)]
    a = accumulate(records, 0.9, 0.7, now=5.0)
    b = accumulate_arrays(ts, intr, res, 0.9, 0.7, 5.0)
    for name in ("alpha_f", "beta_f", "alpha_d", "beta_d"):
        assert getattr(a, name) == pytest.approx(getattr(b, name), rel=1e-12)


def test_recent_records_weigh_more():
    old = accumulate([_rec(0.0, True, 1)], 0.9, 0.9, now=10.0)
    recent = accumulate([_rec(10.0, True, 1)], 0.9, 0.9, now=10.0)
    assert old.alpha_d < recent.alpha_d


def test_expected_rates_examples():
    t = BetaTrust(alpha_f=1, beta_f=3, alpha_d=3, beta_d=1)
    p = expected_rates(t)
    assert p.false_alarm_rate == pytest.approx(0.25)
    assert p.detection_rate == pytest.approx(0.75)
    sym = expected_rates(BetaTrust(2, 2, 5, 5))
    assert sym.false_alarm_rate == pytest.approx(0.5)
    assert sym.detection_rate == pytest.approx(0.5)


def test_expected_rates_empty_fallback():
    p = expected_rates(BetaTrust())
    assert p.false_alarm_rate == pytest.approx(0.5)
    assert p.detection_rate == pytest.approx(0.5)


def test_gaussian_approx():
    mean, sd = gaussian_approx(10.0, 10.0)
    assert mean == pytest.approx(0.5)
    assert sd == pytest.approx(math.sqrt(100.0 / (400.0 * 21.0)), abs=1e-15)
    assert gaussian_approx(3.5, 3.5)[0] == pytest.approx(0.5)
    # same mean, more data: tighter
    assert gaussian_approx(50, 50)[1] < gaussian_approx(5, 5)[1]
    with pytest.raises(ValueError):
        gaussian_approx(0.0, 0.0)


def test_gaussian_mean_equals_expected_rate():
    t = BetaTrust(alpha_f=1.7, beta_f=4.1, alpha_d=6.2, beta_d=0.9)
    p = expected_rates(t)
    assert gaussian_approx(t.alpha_f, t.beta_f)[0] == pytest.approx(
        p.false_alarm_rate
    )
    assert gaussian_approx(t.alpha_d, t.beta_d)[0] == pytest.approx(p.detection_rate)


def test_beta_density_values():
    assert beta_density(0.5, 1.0, 1.0) == pytest.approx(1.0)
    assert beta_density(0.5, 2.0, 1.0) == pytest.approx(1.0)
    assert beta_density(0.25, 2.0, 2.0) == pytest.approx(1.125)
    with pytest.raises(ValueError):
        beta_density(0.5, 0.0, 1.0)
    with pytest.raises(ValueError):
        beta_density(1.5, 1.0, 1.0)


def test_beta_density_integrates_to_one():
    # trapezoid quadrature; shapes >= 1 keep the density bounded, but
    # fractional exponents still leave an unbounded derivative at an
    # endpoint, so convergence is O(h^min(a,b)) rather than O(h^2)
    for a, b in [(2.0, 5.0), (1.0, 1.0), (3.3, 1.1), (1.2, 2.1)]:
        xs = np.linspace(0.0, 1.0, 20_001)
        ys = np.array([beta_density(float(x), a, b) for x in xs])
        assert np.trapezoid(ys, xs) == pytest.approx(1.0, abs=1e-4)


def test_density_shapes_from_accumulators():
    t = BetaTrust(alpha_f=3.0, beta_f=1.0, alpha_d=0.0, beta_d=0.0)
    assert t.false_alarm_shapes() == (4.0, 2.0)
    assert t.detection_shapes() == (1.0, 1.0)


def test_record_validation():
    with pytest.raises(ValueError):
        DiagnosisRecord(timestamp=-1.0, truth=Hypothesis.INTRUSION, result=1)
    with pytest.raises(ValueError):
        DiagnosisRecord(timestamp=0.0, truth=Hypothesis.INTRUSION, result=2)
