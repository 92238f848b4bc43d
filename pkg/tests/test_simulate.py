"""Seeded Monte Carlo: determinism, banding, and the stop-time distribution."""

import json
import math

import numpy as np
import pytest
import scipy.stats

from lastsuccess import (
    estimate_win,
    first_rule,
    float_algebra,
    last_rule,
    plugin_rule,
    plugin_value,
    sample_stop_times,
    stop_distribution,
)


class TestDeterminism:
    def test_identical_seed_identical_result(self):
        a = estimate_win(plugin_rule(), 10, 0.3, 50_000, seed=123)
        b = estimate_win(plugin_rule(), 10, 0.3, 50_000, seed=123)
        assert a == b

    def test_thread_count_does_not_change_counts(self):
        serial = estimate_win(first_rule(), 12, 0.25, 200_000, seed=9)
        threaded = estimate_win(first_rule(), 12, 0.25, 200_000, seed=9, threads=4)
        assert serial == threaded

    def test_different_seeds_differ(self):
        a = estimate_win(plugin_rule(), 10, 0.3, 50_000, seed=1)
        b = estimate_win(plugin_rule(), 10, 0.3, 50_000, seed=2)
        assert a.wins != b.wins


class TestEstimates:
    def test_plugin_within_band(self):
        res = estimate_win(plugin_rule(), 10, 0.3, 100_000)
        assert abs(res.estimate - plugin_value(10, 0.3)) <= res.half_width

    def test_last_rule_near_half(self):
        res = estimate_win(last_rule(), 8, 0.5, 100_000)
        assert abs(res.estimate - 0.5) <= res.half_width

    def test_half_width_formula(self):
        res = estimate_win(first_rule(), 5, 0.2, 10_000)
        expected = 4.0 * math.sqrt(res.estimate * (1 - res.estimate) / res.trials)
        assert res.half_width == pytest.approx(expected, rel=1e-12)

    def test_json_fields(self):
        res = estimate_win(first_rule(), 5, 0.2, 1000, seed=7)
        payload = json.loads(res.to_json())
        assert set(payload) == {
            "rule", "n", "p", "trials", "wins", "estimate", "half_width", "seed",
        }
        assert payload["seed"] == 7 and payload["rule"] == "first"

    def test_trials_validation(self):
        with pytest.raises(ValueError):
            estimate_win(first_rule(), 5, 0.2, 0)


class TestStopTimeDistribution:
    def test_sample_layout_matches_estimate(self):
        stops = sample_stop_times(plugin_rule(), 9, 0.4, 70_000, seed=11)
        assert stops.shape == (70_000,)
        assert stops.min() >= 0 and stops.max() <= 9

    def test_critical_regime_dp_cross_check(self):
        # Monte Carlo route, independent of the DP recursion, confirms the
        # plug-in value deep in the critical regime p = c/n
        n, p = 2000, 0.2 / 2000
        res = estimate_win(plugin_rule(), n, p, 100_000, seed=29, threads=4)
        assert abs(res.estimate - plugin_value(n, p)) <= res.half_width

    def test_chi_square_against_dp(self):
        # empirical stop-time histogram vs the exact distribution at 1e-4
        n, p, trials = 12, 0.4, 1_000_000
        sd = stop_distribution(n, float_algebra(p))
        stops = sample_stop_times(plugin_rule(), n, p, trials, seed=3)
        times = list(range(1, n + 1))
        expected = np.array([sd.ell[t] * trials for t in times] + [sd.residual * trials])
        observed = np.array(
            [(stops == t).sum() for t in times] + [(stops == 0).sum()], dtype=float
        )
        keep = expected > 0
        # structurally-zero bins must be empirically empty as well
        assert observed[~keep].sum() == 0
        stat = ((observed[keep] - expected[keep]) ** 2 / expected[keep]).sum()
        dof = keep.sum() - 1
        threshold = scipy.stats.chi2.isf(1e-4, dof)
        assert stat < threshold
