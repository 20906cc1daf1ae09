"""Equilibrium, barrier, trigger, continuation and chain statics tests."""

import math

import numpy as np
import pytest

from snapgrip.errors import NotBistableError, SaddleOrderError
from snapgrip.model import (set_design_value, total_energy_1dof,
                            gradient_1dof, chain_gradient, chain_hessian,
                            uniform_chain)
from snapgrip.statics import (continuation_ramped_load, default_chain_seeds,
                              find_equilibria_1dof, find_equilibria_chain,
                              saddle_search_chain, snap_through_energy,
                              trigger_moment)

# Grid-scan oracle values for the shipped baseline, frozen from an
# independent 10^6-point scan of the energy landscape.
BASELINE_OPEN_THETA = -0.8562836011793207
BASELINE_SADDLE_THETA = 0.30628360117897013
BASELINE_CLOSED_THETA = 1.600000000000079
BASELINE_BARRIER = 0.018855386813254223


def grid_oracle(design, n=1_000_001, window=(-math.pi, math.pi)):
    """Independent oracle: locate interior extrema by dense grid scan."""
    th = np.linspace(window[0], window[1], n)
    u = np.asarray(total_energy_1dof(th, design), dtype=float)
    du = np.diff(u)
    sign = np.sign(du)
    idx = np.where(np.diff(sign) != 0)[0] + 1
    return th[idx], u[idx]


class TestFindEquilibria1Dof:

    def test_baseline_is_bistable_with_three_equilibria(self, baseline):
        report = find_equilibria_1dof(baseline)
        assert report.bistable
        assert len(report.equilibria) == 3
        assert [e.stable for e in report.equilibria] == [True, False, True]

    def test_baseline_matches_frozen_oracle_values(self, baseline):
        report = find_equilibria_1dof(baseline)
        assert report.open_state.theta == pytest.approx(
            BASELINE_OPEN_THETA, abs=1e-9)
        assert report.saddle.theta == pytest.approx(
            BASELINE_SADDLE_THETA, abs=1e-9)
        assert report.closed_state.theta == pytest.approx(
            BASELINE_CLOSED_THETA, abs=1e-9)
        assert report.snap_through_energy == pytest.approx(
            BASELINE_BARRIER, abs=1e-12)

    def test_matches_grid_oracle_on_randomized_designs(self, baseline):
        rng = np.random.default_rng(11)
        checked = 0
        while checked < 5:
            d = set_design_value(baseline, "ring.stiffness",
                                 float(rng.uniform(0.05, 0.3)))
            d = set_design_value(d, "ring.well_center",
                                 float(rng.uniform(0.1, 0.6)))
            report = find_equilibria_1dof(d)
            if not report.bistable:
                continue
            checked += 1
            th_o, u_o = grid_oracle(d)
            assert len(th_o) == len(report.equilibria)
            for t_oracle, eq in zip(th_o, report.equilibria):
                assert abs(t_oracle - eq.theta) < 1e-5

    def test_gradient_vanishes_at_reported_equilibria(self, baseline):
        for eq in find_equilibria_1dof(baseline).equilibria:
            assert abs(float(gradient_1dof(eq.theta, baseline))) < 1e-9

    def test_zero_ring_stiffness_is_monostable(self, baseline):
        d = set_design_value(baseline, "ring.stiffness", 0.0)
        report = find_equilibria_1dof(d)
        assert not report.bistable
        assert len(report.equilibria) == 1
        assert report.equilibria[0].theta == pytest.approx(
            baseline.finger.rest_angle, abs=1e-9)

    def test_invalid_window_rejected(self, baseline):
        with pytest.raises(ValueError):
            find_equilibria_1dof(baseline, theta_min=1.0, theta_max=-1.0)

    def test_snap_through_on_monostable_raises(self, baseline):
        d = set_design_value(baseline, "ring.stiffness", 0.0)
        with pytest.raises(NotBistableError):
            snap_through_energy(d)

    def test_barrier_is_saddle_minus_open(self, baseline):
        report = find_equilibria_1dof(baseline)
        assert report.snap_through_energy == pytest.approx(
            report.saddle.energy - report.open_state.energy, abs=1e-15)


class TestTriggerMoment:

    def test_pure_quartic_analytic_value(self, baseline):
        # With a negligible finger, the maximum restoring slope of the
        # quartic double well is k_eff * halfwidth / (3*sqrt(3)).
        d = set_design_value(baseline, "material.youngs_modulus", 1e-3)
        d = set_design_value(d, "ring.well_center", 0.0)
        k = d.ring.effective_stiffness
        delta = d.ring.well_halfwidth
        expected = k * delta / (3.0 * math.sqrt(3.0))
        assert trigger_moment(d) == pytest.approx(expected, rel=1e-6)

    def test_exceeds_zero_and_removes_open_minimum(self, baseline):
        tau = trigger_moment(baseline)
        assert tau > 0.0
        # Tilting the landscape by slightly more than the trigger moment
        # leaves no equilibrium in the open region.
        grid = np.linspace(-math.pi, 0.3, 4001)
        g = np.asarray(gradient_1dof(grid, baseline), dtype=float)
        assert np.all(g - 1.001 * tau < 0.0)
        assert np.any(g - 0.999 * tau > 0.0)

    def test_monostable_raises(self, baseline):
        d = set_design_value(baseline, "ring.stiffness", 0.0)
        with pytest.raises(NotBistableError):
            trigger_moment(d)


class TestContinuation:

    def test_ramp_past_trigger_detects_one_fold(self, baseline):
        tau_star = trigger_moment(baseline)
        path = continuation_ramped_load(baseline, 1.5 * tau_star, 200)
        assert len(path.fold_points) == 1
        fold_tau, fold_theta = path.fold_points[0]
        step = 1.5 * tau_star / 199
        assert abs(fold_tau - tau_star) < 2 * step
        # After the fold the branch lands near the closed state.
        assert path.thetas[-1] > 1.5

    def test_ramp_below_trigger_stays_on_open_branch(self, baseline):
        tau_star = trigger_moment(baseline)
        path = continuation_ramped_load(baseline, 0.8 * tau_star, 100)
        assert path.fold_points == ()
        assert np.all(path.thetas < 0.35)
        assert np.all(np.diff(path.thetas) >= -1e-9)

    def test_path_shapes_consistent(self, baseline):
        path = continuation_ramped_load(baseline, 0.01, 50)
        assert path.taus.shape == path.thetas.shape == path.energies.shape


class TestChainStatics:

    def test_single_segment_chain_matches_reduced_model(self, baseline):
        report1 = find_equilibria_1dof(baseline)
        eqs = find_equilibria_chain(baseline,
                                    default_chain_seeds(baseline, report1))
        stable = [e for e in eqs if e.stable]
        assert len(stable) == 2
        assert stable[0].theta == pytest.approx(report1.open_state.theta,
                                                abs=1e-9)
        assert stable[1].theta == pytest.approx(report1.closed_state.theta,
                                                abs=1e-9)
        assert stable[0].energy == pytest.approx(report1.open_state.energy,
                                                 abs=1e-9)

    def test_single_segment_saddle_matches_reduced_model(self, baseline):
        report1 = find_equilibria_1dof(baseline)
        eqs = find_equilibria_chain(baseline,
                                    default_chain_seeds(baseline, report1))
        stable = [e for e in eqs if e.stable]
        saddle = saddle_search_chain(baseline, stable[0].configuration,
                                     stable[1].configuration)
        assert saddle.theta == pytest.approx(report1.saddle.theta, abs=1e-6)
        assert saddle.energy == pytest.approx(report1.saddle.energy, abs=1e-9)

    def test_eight_segment_barrier_within_15_percent(self, baseline):
        d = set_design_value(baseline, "finger.n_segments", 8)
        report1 = find_equilibria_1dof(d)
        eqs = find_equilibria_chain(d, default_chain_seeds(d, report1))
        stable = [e for e in eqs if e.stable]
        assert len(stable) == 2
        saddle = saddle_search_chain(d, stable[0].configuration,
                                     stable[1].configuration)
        barrier_chain = saddle.energy - stable[0].energy
        assert barrier_chain == pytest.approx(report1.snap_through_energy,
                                              rel=0.15)

    def test_chain_saddle_has_exactly_one_unstable_direction(self, baseline):
        d = set_design_value(baseline, "finger.n_segments", 8)
        report1 = find_equilibria_1dof(d)
        eqs = find_equilibria_chain(d, default_chain_seeds(d, report1))
        stable = [e for e in eqs if e.stable]
        saddle = saddle_search_chain(d, stable[0].configuration,
                                     stable[1].configuration)
        hess = chain_hessian(saddle.configuration.as_array(), d)
        eigs = np.linalg.eigvalsh(hess)
        assert int(np.sum(eigs < 0.0)) == 1
        grad = chain_gradient(saddle.configuration.as_array(), d)
        assert float(np.linalg.norm(grad)) < 1e-7

    def test_duplicate_seeds_are_merged(self, baseline):
        d = set_design_value(baseline, "finger.n_segments", 4)
        seed = uniform_chain(d, 1.6)
        eqs = find_equilibria_chain(d, [seed, seed + 1e-8, seed.copy()])
        assert len(eqs) == 1

    def test_string_endpoints_must_be_stable(self, baseline):
        d = set_design_value(baseline, "finger.n_segments", 4)
        report1 = find_equilibria_1dof(d)
        eqs = find_equilibria_chain(d, default_chain_seeds(d, report1))
        stable = [e for e in eqs if e.stable]
        bad = uniform_chain(d, 0.0)  # not an equilibrium
        with pytest.raises(ValueError):
            saddle_search_chain(d, bad, stable[1].configuration)
