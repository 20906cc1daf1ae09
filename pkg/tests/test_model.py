"""Energy model unit tests: constitutive laws, reduced model, chain model."""

import math

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from snapgrip.errors import CurvatureOutOfRangeError, InvalidDesignError
from snapgrip.model import (ChainConfiguration, CrossSection, FingerDesign,
                            GripperDesign, LinearElastic, RingDesign, Yeoh,
                            chain_energy, chain_gradient, chain_hessian,
                            finger_energy_1dof, forward_kinematics,
                            gradient_1dof, gravity_energy_1dof,
                            moment_curvature, ring_energy_1dof,
                            sample_landscape, second_derivative_1dof,
                            set_design_value, tip_chord, total_energy_1dof,
                            uniform_chain)


def pure_quartic_ring(k=1.0, center=0.0, halfwidth=1.0):
    return RingDesign(attach_fraction=0.5, well_center=center,
                      well_halfwidth=halfwidth, stiffness=k, width_scale=1.0)


# ---------------------------------------------------------------------------
# Constitutive laws
# ---------------------------------------------------------------------------

class TestMomentCurvature:

    def test_linear_material_gives_ei_kappa(self):
        sec = CrossSection(0.015, 0.006)
        mat = LinearElastic(6.0e5)
        kappa = 12.5
        assert moment_curvature(kappa, sec, mat) == pytest.approx(
            6.0e5 * sec.second_moment * kappa, rel=1e-12)

    def test_yeoh_small_strain_matches_linear_equivalent(self):
        sec = CrossSection(0.015, 0.006)
        c10 = 1.0e5
        yeoh = Yeoh(c10, 0.0, 0.0)
        errors = []
        for strain in (1e-2, 1e-3, 1e-4):
            kappa = strain * 2.0 / sec.thickness
            m = moment_curvature(kappa, sec, yeoh)
            m_lin = 6.0 * c10 * sec.second_moment * kappa
            errors.append(abs(m - m_lin) / m_lin)
        assert errors[0] < 1e-2
        assert errors[0] > errors[1] > errors[2]

    def test_yeoh_moment_is_odd_in_curvature(self):
        sec = CrossSection(0.015, 0.006)
        yeoh = Yeoh(1.0e5, 2.0e4, 0.0)
        m_pos = moment_curvature(40.0, sec, yeoh)
        m_neg = moment_curvature(-40.0, sec, yeoh)
        assert m_pos == pytest.approx(-m_neg, rel=1e-9)

    def test_extreme_fiber_compression_rejected(self):
        sec = CrossSection(0.015, 0.006)
        yeoh = Yeoh(1.0e5, 0.0, 0.0)
        with pytest.raises(CurvatureOutOfRangeError):
            moment_curvature(0.95 * 2.0 / sec.thickness, sec, yeoh)

    def test_zero_curvature_zero_moment(self):
        sec = CrossSection(0.015, 0.006)
        assert moment_curvature(0.0, sec, Yeoh(1.0e5, 0.0, 0.0)) == 0.0


class TestDesignInvariants:

    def test_negative_stiffness_rejected(self):
        with pytest.raises(InvalidDesignError):
            RingDesign(attach_fraction=0.5, well_center=0.0,
                       well_halfwidth=1.0, stiffness=-1.0)

    def test_attach_fraction_outside_unit_interval_rejected(self):
        with pytest.raises(InvalidDesignError):
            RingDesign(attach_fraction=1.5, well_center=0.0,
                       well_halfwidth=1.0, stiffness=1.0)

    def test_width_scale_above_one_rejected(self):
        with pytest.raises(InvalidDesignError):
            RingDesign(attach_fraction=0.5, well_center=0.0,
                       well_halfwidth=1.0, stiffness=1.0, width_scale=1.1)

    def test_nonpositive_section_rejected(self):
        with pytest.raises(InvalidDesignError):
            CrossSection(0.0, 0.006)

    def test_yeoh_without_positive_c10_rejected(self):
        with pytest.raises(InvalidDesignError):
            Yeoh(0.0, 1.0e4, 0.0)

    def test_wells_property(self):
        ring = pure_quartic_ring(center=0.35, halfwidth=1.25)
        assert ring.wells == (0.35 - 1.25, 0.35 + 1.25)


# ---------------------------------------------------------------------------
# Reduced (1-DOF) energies
# ---------------------------------------------------------------------------

class TestRingEnergy:

    def test_pure_quartic_barrier_is_k_delta_sq_over_8(self):
        ring = pure_quartic_ring(k=1.0, halfwidth=1.0)
        assert float(ring_energy_1dof(0.0, ring)) == pytest.approx(0.125)

    def test_zero_at_both_wells(self):
        ring = pure_quartic_ring(k=0.7, center=0.35, halfwidth=1.25)
        for well in ring.wells:
            assert float(ring_energy_1dof(well, ring)) == pytest.approx(
                0.0, abs=1e-15)

    def test_well_curvature_equals_effective_stiffness(self):
        ring = pure_quartic_ring(k=0.7, center=0.35, halfwidth=1.25)
        h = 1e-5
        for well in ring.wells:
            curv = (float(ring_energy_1dof(well + h, ring))
                    - 2.0 * float(ring_energy_1dof(well, ring))
                    + float(ring_energy_1dof(well - h, ring))) / h ** 2
            assert curv == pytest.approx(ring.effective_stiffness, rel=1e-4)

    def test_width_scale_scales_energy_linearly(self):
        full = pure_quartic_ring(k=0.7)
        trimmed = RingDesign(attach_fraction=0.5, well_center=0.0,
                             well_halfwidth=1.0, stiffness=0.7,
                             width_scale=0.25)
        theta = 0.4
        assert float(ring_energy_1dof(theta, trimmed)) == pytest.approx(
            0.25 * float(ring_energy_1dof(theta, full)), rel=1e-12)

    @given(st.floats(-3.0, 3.0))
    @hyp_settings(max_examples=50, deadline=None)
    def test_ring_energy_never_negative(self, theta):
        ring = pure_quartic_ring(k=0.7, center=0.35, halfwidth=1.25)
        assert float(ring_energy_1dof(theta, ring)) >= 0.0


class TestFingerEnergy:

    def test_zero_at_rest_angle(self, baseline):
        rest = baseline.finger.rest_angle
        assert float(finger_energy_1dof(rest, baseline.finger)) == 0.0

    def test_linear_closed_form(self, baseline):
        f = baseline.finger
        ei = f.bending_stiffness
        theta = 0.3
        expected = 0.5 * ei / f.length * (theta - f.rest_angle) ** 2
        assert float(finger_energy_1dof(theta, f)) == pytest.approx(
            expected, rel=1e-12)

    def test_yeoh_finger_energy_close_to_linear_equivalent(self, baseline):
        lin = baseline.finger
        e_equiv = lin.material.youngs_modulus
        yeoh = FingerDesign(length=lin.length,
                            natural_curvature=lin.natural_curvature,
                            cross_section=lin.cross_section,
                            material=Yeoh(e_equiv / 6.0, 0.0, 0.0),
                            n_segments=lin.n_segments,
                            linear_density=lin.linear_density)
        theta = 1.0
        u_lin = float(finger_energy_1dof(theta, lin))
        u_yeoh = float(finger_energy_1dof(theta, yeoh))
        assert u_yeoh == pytest.approx(u_lin, rel=2e-2)


class TestGravityEnergy:

    def test_zero_without_gravity(self, baseline):
        assert float(gravity_energy_1dof(0.7, baseline)) == 0.0

    def test_matches_segmentwise_quadrature_oracle(self, baseline):
        # Independent oracle: discretize the constant-curvature arc into
        # 20000 straight pieces and sum their centroid potentials.
        d = set_design_value(baseline, "gripper.gravity", 9.81)
        d = set_design_value(d, "gripper.payload_mass", 0.02)
        length = d.finger.length
        mass = d.finger.mass
        for theta in (-0.9, -1e-6, 0.4, 1.6):
            n = 20000
            s = (np.arange(n) + 0.5) / n
            psi = theta * s
            ds = length / n
            x_mid = np.cumsum(np.sin(psi) * ds) - 0.5 * np.sin(psi) * ds
            u_finger = -mass * 9.81 * np.mean(x_mid)
            kappa = theta / length
            if abs(theta) > 1e-9:
                x_tip = (1.0 - math.cos(theta)) / kappa
            else:
                x_tip = 0.0
            u_payload = -d.payload_mass * 9.81 * x_tip
            expected = u_finger + u_payload
            assert float(gravity_energy_1dof(theta, d)) == pytest.approx(
                expected, rel=1e-6, abs=1e-12)


class TestGradients:

    def test_1dof_gradient_matches_finite_differences(self, baseline):
        d = set_design_value(baseline, "gripper.gravity", 9.81)
        d = set_design_value(d, "gripper.payload_mass", 0.01)
        rng = np.random.default_rng(7)
        h = 1e-6
        for theta in rng.uniform(-2.5, 2.5, 100):
            g = float(gradient_1dof(theta, d))
            fd = (float(total_energy_1dof(theta + h, d))
                  - float(total_energy_1dof(theta - h, d))) / (2.0 * h)
            assert g == pytest.approx(fd, rel=1e-6, abs=1e-9)

    @pytest.mark.parametrize("n", [1, 4, 8, 32])
    def test_chain_gradient_matches_finite_differences(self, baseline, n):
        d = set_design_value(baseline, "finger.n_segments", n)
        d = set_design_value(d, "gripper.gravity", 9.81)
        rng = np.random.default_rng(n)
        h = 1e-5
        for _ in range(25):
            phi = rng.uniform(-0.5, 0.5, n)
            g = chain_gradient(phi, d)
            scale = max(float(np.max(np.abs(g))), 1e-12)
            for i in range(n):
                p = phi.copy()
                p[i] += h
                up = chain_energy(p, d)
                p[i] -= 2.0 * h
                um = chain_energy(p, d)
                fd = (up - um) / (2.0 * h)
                denom = max(abs(g[i]), 1e-3 * scale)
                assert abs(g[i] - fd) / denom < 1e-6

    def test_second_derivative_positive_in_wells(self, baseline):
        for theta in (-0.85, 1.6):
            assert float(second_derivative_1dof(theta, baseline)) > 0.0

    def test_chain_hessian_is_symmetric(self, baseline):
        d = set_design_value(baseline, "finger.n_segments", 6)
        phi = np.linspace(-0.2, 0.3, 6)
        hess = chain_hessian(phi, d)
        assert np.allclose(hess, hess.T, atol=1e-10)


# ---------------------------------------------------------------------------
# Chain model and kinematics
# ---------------------------------------------------------------------------

class TestChainReduction:

    def test_single_segment_chain_equals_reduced_model(self, baseline):
        d = set_design_value(baseline, "gripper.gravity", 9.81)
        d = set_design_value(d, "gripper.payload_mass", 0.02)
        for theta in np.linspace(-2.0, 2.5, 19):
            u1 = float(total_energy_1dof(theta, d))
            uc = chain_energy(np.array([theta]), d)
            assert uc == pytest.approx(u1, rel=1e-12, abs=1e-15)
            g1 = float(gradient_1dof(theta, d))
            gc = float(chain_gradient(np.array([theta]), d)[0])
            assert gc == pytest.approx(g1, rel=1e-9, abs=1e-12)

    def test_chain_energy_converges_with_refinement(self, baseline):
        # The uniform-curvature configuration has the same elastic energy
        # at any refinement; only gravity discretization changes.
        d = set_design_value(baseline, "gripper.gravity", 9.81)
        theta = 1.1
        u8 = chain_energy(uniform_chain(
            set_design_value(d, "finger.n_segments", 8), theta),
            set_design_value(d, "finger.n_segments", 8))
        u64 = chain_energy(uniform_chain(
            set_design_value(d, "finger.n_segments", 64), theta),
            set_design_value(d, "finger.n_segments", 64))
        u1 = float(total_energy_1dof(theta, d))
        assert abs(u64 - u1) < abs(u8 - u1) + 1e-12
        assert u64 == pytest.approx(u1, rel=1e-3)

    def test_wrong_shape_rejected(self, baseline):
        d = set_design_value(baseline, "finger.n_segments", 4)
        with pytest.raises(InvalidDesignError):
            chain_energy(np.zeros(3), d)


class TestKinematics:

    def test_straight_chain_reaches_full_length(self, baseline):
        d = set_design_value(baseline, "finger.n_segments", 10)
        xy = forward_kinematics(np.zeros(10), d.finger)
        assert xy[-1, 0] == pytest.approx(0.0, abs=1e-15)
        assert xy[-1, 1] == pytest.approx(d.finger.length, rel=1e-12)

    def test_link_lengths_preserved(self, baseline):
        d = set_design_value(baseline, "finger.n_segments", 8)
        rng = np.random.default_rng(3)
        phi = rng.uniform(-0.4, 0.4, 8)
        xy = forward_kinematics(phi, d.finger)
        seg = np.linalg.norm(np.diff(xy, axis=0), axis=1)
        assert np.allclose(seg, d.finger.length / 8, rtol=1e-12)

    def test_uniform_chain_tip_angle(self, baseline):
        d = set_design_value(baseline, "finger.n_segments", 16)
        phi = uniform_chain(d, 1.6)
        assert float(np.sum(phi)) == pytest.approx(1.6, rel=1e-12)

    def test_tip_chord_limits(self):
        length = 0.08
        assert float(tip_chord(0.0, length)) == pytest.approx(length)
        assert float(tip_chord(math.pi, length)) == pytest.approx(
            2.0 * length / math.pi, rel=1e-12)

    def test_tip_chord_small_angle_series_matches_exact(self):
        length = 0.08
        theta = 9.9e-5  # inside the series branch
        exact = 2.0 * length * math.sin(theta / 2.0) / theta
        assert float(tip_chord(theta, length)) == pytest.approx(
            exact, abs=1e-15)


class TestDesignPaths:

    def test_set_design_value_round_trip(self, baseline):
        d = set_design_value(baseline, "ring.stiffness", 0.5)
        assert d.ring.stiffness == 0.5
        assert baseline.ring.stiffness != 0.5  # original untouched

    def test_unknown_path_rejected(self, baseline):
        with pytest.raises(InvalidDesignError):
            set_design_value(baseline, "ring.color", 1.0)

    def test_material_path_requires_matching_model(self, baseline):
        with pytest.raises(InvalidDesignError):
            set_design_value(baseline, "material.c10", 2.0e5)


class TestLandscapeSampling:

    def test_components_sum_to_total(self, baseline):
        d = set_design_value(baseline, "gripper.gravity", 9.81)
        grid = np.linspace(-2.0, 2.5, 301)
        scape = sample_landscape(d, grid)
        assert np.allclose(scape.total,
                           scape.finger + scape.ring + scape.gravity,
                           rtol=1e-12, atol=1e-15)

    def test_grid_preserved(self, baseline):
        grid = np.linspace(-1.0, 2.0, 11)
        scape = sample_landscape(baseline, grid)
        assert np.array_equal(scape.theta_grid, grid)


class TestChainConfiguration:

    def test_tip_angle_is_angle_sum(self):
        cfg = ChainConfiguration((0.1, 0.2, 0.3))
        assert cfg.tip_angle == pytest.approx(0.6)

    def test_as_array_copies(self):
        cfg = ChainConfiguration((0.1, 0.2))
        arr = cfg.as_array()
        arr[0] = 99.0
        assert cfg.as_array()[0] == 0.1
