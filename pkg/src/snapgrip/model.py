"""Potential-energy model of a pre-curved elastic finger with a bistable ring.

Two fidelities share the same ingredients:

* a reduced single-coordinate model where the finger bends with uniform
  curvature and the whole state is the tip bend angle ``theta``;
* a planar chain of rigid-ish segments joined by torsional springs, whose
  joint angles discretize the same beam.

All quantities are SI.  Positive ``theta`` is the closing direction; the
open stable state sits in the negative-angle well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable, Sequence, Union

import numpy as np

from .errors import CurvatureOutOfRangeError, InvalidDesignError

# Below this bend angle the circular-arc kinematics switch to their
# 4th-order series to avoid 0/0.
SMALL_ANGLE = 1e-4


@lru_cache(maxsize=None)
def _gauss_legendre(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


# ---------------------------------------------------------------------------
# Constitutive models
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearElastic:
    """Linear elastic material, characterized by its Young's modulus."""

    youngs_modulus: float

    def __post_init__(self):
        if not (self.youngs_modulus > 0):
            raise InvalidDesignError(
                f"youngs_modulus must be > 0, got {self.youngs_modulus}")

    def uniaxial_stress(self, stretch):
        return self.youngs_modulus * (stretch - 1.0)


@dataclass(frozen=True)
class Yeoh:
    """Incompressible Yeoh solid, cubic in the first invariant.

    ``c20``/``c30`` may take any sign, but the uniaxial stress must remain
    monotonically increasing for stretches in [0.5, 2.0]; that is checked
    by sampling at construction.
    """

    c10: float
    c20: float = 0.0
    c30: float = 0.0

    def __post_init__(self):
        if not (self.c10 > 0):
            raise InvalidDesignError(f"c10 must be > 0, got {self.c10}")
        lam = np.linspace(0.5, 2.0, 601)
        stress = self.uniaxial_stress(lam)
        if np.any(np.diff(stress) <= 0):
            raise InvalidDesignError(
                "Yeoh coefficients give non-monotonic uniaxial stress "
                "on stretch in [0.5, 2.0]")

    def dW_dI1(self, i1):
        x = i1 - 3.0
        return self.c10 + 2.0 * self.c20 * x + 3.0 * self.c30 * x * x

    def uniaxial_stress(self, stretch):
        lam = np.asarray(stretch, dtype=float)
        i1 = lam * lam + 2.0 / lam
        return 2.0 * (lam * lam - 1.0 / lam) * self.dW_dI1(i1)


MaterialModel = Union[LinearElastic, Yeoh]


# ---------------------------------------------------------------------------
# Geometry / design records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CrossSection:
    """Rectangular finger cross-section."""

    width: float
    thickness: float

    def __post_init__(self):
        if not (self.width > 0 and self.thickness > 0):
            raise InvalidDesignError(
                f"cross-section width/thickness must be > 0, "
                f"got {self.width} x {self.thickness}")

    @property
    def area(self) -> float:
        return self.width * self.thickness

    @property
    def second_moment(self) -> float:
        return self.width * self.thickness ** 3 / 12.0


@dataclass(frozen=True)
class FingerDesign:
    """One finger: a slender pre-curved elastic beam."""

    length: float
    natural_curvature: float
    cross_section: CrossSection
    material: MaterialModel
    n_segments: int = 1
    linear_density: float = 0.1

    def __post_init__(self):
        if not (self.length > 0):
            raise InvalidDesignError(f"length must be > 0, got {self.length}")
        if not (isinstance(self.n_segments, int) and self.n_segments >= 1):
            raise InvalidDesignError(
                f"n_segments must be an int >= 1, got {self.n_segments}")
        if not (self.linear_density >= 0):
            raise InvalidDesignError(
                f"linear_density must be >= 0, got {self.linear_density}")

    @property
    def rest_angle(self) -> float:
        """Stress-free tip bend angle (natural curvature times length)."""
        return self.natural_curvature * self.length

    @property
    def mass(self) -> float:
        return self.linear_density * self.length

    @property
    def bending_stiffness(self) -> float:
        """EI for the linear material; small-strain tangent 6*c10*I for Yeoh."""
        i = self.cross_section.second_moment
        if isinstance(self.material, LinearElastic):
            return self.material.youngs_modulus * i
        return 6.0 * self.material.c10 * i


@dataclass(frozen=True)
class RingDesign:
    """Elastic ring wrapped around the fingers, bistable by itself.

    The two zero-energy bend angles (on the tip-angle scale) are
    ``well_center - well_halfwidth`` and ``well_center + well_halfwidth``;
    ``stiffness`` is the torsional stiffness at each well and trimming the
    ring scales it linearly through ``width_scale``.
    """

    attach_fraction: float
    well_center: float
    well_halfwidth: float
    stiffness: float
    width_scale: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.attach_fraction <= 1.0):
            raise InvalidDesignError(
                f"attach_fraction must be in (0, 1], got {self.attach_fraction}")
        if not (self.well_halfwidth > 0):
            raise InvalidDesignError(
                f"well_halfwidth must be > 0, got {self.well_halfwidth}")
        if not (self.stiffness >= 0):
            raise InvalidDesignError(
                f"stiffness must be >= 0, got {self.stiffness}")
        if not (0.0 < self.width_scale <= 1.0):
            raise InvalidDesignError(
                f"width_scale must be in (0, 1], got {self.width_scale}")

    @property
    def effective_stiffness(self) -> float:
        return self.stiffness * self.width_scale

    @property
    def wells(self) -> tuple:
        return (self.well_center - self.well_halfwidth,
                self.well_center + self.well_halfwidth)


@dataclass(frozen=True)
class GripperDesign:
    """Complete design: finger + ring + lumped dynamic parameters.

    ``gravity`` is the signed acceleration along the closing coordinate;
    positive values pull the finger toward the closed state.
    """

    finger: FingerDesign
    ring: RingDesign
    inertia: float = 2.0e-5
    damping: float = 1.0e-4
    payload_mass: float = 0.0
    gravity: float = 0.0

    def __post_init__(self):
        if not (self.inertia > 0):
            raise InvalidDesignError(f"inertia must be > 0, got {self.inertia}")
        if not (self.damping >= 0):
            raise InvalidDesignError(f"damping must be >= 0, got {self.damping}")
        if not (self.payload_mass >= 0):
            raise InvalidDesignError(
                f"payload_mass must be >= 0, got {self.payload_mass}")


@dataclass(frozen=True)
class ChainConfiguration:
    """Joint angles of the segment chain, one per segment."""

    joint_angles: tuple

    def __post_init__(self):
        angles = tuple(float(a) for a in self.joint_angles)
        if not all(math.isfinite(a) for a in angles):
            raise InvalidDesignError("joint angles must be finite")
        object.__setattr__(self, "joint_angles", angles)

    def as_array(self) -> np.ndarray:
        return np.array(self.joint_angles, dtype=float)

    @property
    def tip_angle(self) -> float:
        return float(sum(self.joint_angles))


@dataclass(frozen=True)
class EnergyLandscape:
    """Total energy and its decomposition sampled on a bend-angle grid."""

    theta_grid: np.ndarray
    total: np.ndarray
    finger: np.ndarray
    ring: np.ndarray
    gravity: np.ndarray


# ---------------------------------------------------------------------------
# Constitutive law: bending moment vs curvature
# ---------------------------------------------------------------------------

def moment_curvature(kappa, section: CrossSection, material: MaterialModel):
    """Bending moment at curvature ``kappa`` (relative to stress-free).

    The Yeoh branch integrates the incompressible uniaxial stress through
    the thickness with Gauss quadrature, doubling the point count from 32
    until converged to 1e-8 relative.  Curvatures that compress the extreme
    fiber past 10% of full collapse are rejected.
    """
    if isinstance(material, LinearElastic):
        return material.youngs_modulus * section.second_moment * kappa

    kappa = float(kappa)
    half_t = section.thickness / 2.0
    if abs(kappa) * half_t >= 0.9:
        raise CurvatureOutOfRangeError(
            f"|kappa|*t/2 = {abs(kappa) * half_t:.3g} >= 0.9: fiber strain "
            "outside the validity range of the constitutive law")
    if kappa == 0.0:
        return 0.0

    def integral(n):
        x, w = _gauss_legendre(n)
        z = half_t * x
        lam = 1.0 + kappa * z
        sigma = material.uniaxial_stress(lam)
        return section.width * half_t * float(np.dot(w, sigma * z))

    m = integral(32)
    for n in (64, 128, 256, 512):
        m_next = integral(n)
        if abs(m_next - m) <= 1e-8 * max(abs(m_next), 1e-300):
            return m_next
        m = m_next
    return m


def _bend_energy_generic(theta, rest_angle, length, section, material,
                         n_quad: int = 96):
    """Elastic energy of a uniformly bent beam, any constitutive law.

    Integrates the moment along the bend angle from the stress-free angle;
    for a linear material this is evaluated in closed form.
    """
    if isinstance(material, LinearElastic):
        ei = material.youngs_modulus * section.second_moment
        d = np.asarray(theta, dtype=float) - rest_angle
        return 0.5 * ei / length * d * d

    def scalar(th):
        span = th - rest_angle
        if span == 0.0:
            return 0.0
        x, w = _gauss_legendre(n_quad)
        phi = rest_angle + 0.5 * span * (x + 1.0)
        vals = [moment_curvature((p - rest_angle) / length, section, material)
                for p in phi]
        return 0.5 * span * float(np.dot(w, vals))

    arr = np.asarray(theta, dtype=float)
    if arr.ndim == 0:
        return scalar(float(arr))
    return np.array([scalar(t) for t in arr.ravel()]).reshape(arr.shape)


# ---------------------------------------------------------------------------
# Reduced single-coordinate model
# ---------------------------------------------------------------------------

def finger_energy_1dof(theta, finger: FingerDesign):
    """Bending strain energy of the finger at tip bend angle ``theta``."""
    return _bend_energy_generic(theta, finger.rest_angle, finger.length,
                                finger.cross_section, finger.material)


def finger_gradient_1dof(theta, finger: FingerDesign):
    """d/d(theta) of the finger bending energy (the restoring moment)."""
    if isinstance(finger.material, LinearElastic):
        ei = finger.bending_stiffness
        return ei / finger.length * (np.asarray(theta, dtype=float)
                                     - finger.rest_angle)
    arr = np.asarray(theta, dtype=float)
    kap = (arr - finger.rest_angle) / finger.length
    if arr.ndim == 0:
        return moment_curvature(float(kap), finger.cross_section,
                                finger.material)
    return np.array([moment_curvature(k, finger.cross_section, finger.material)
                     for k in kap.ravel()]).reshape(arr.shape)


def ring_energy_1dof(theta, ring: RingDesign):
    """Double-well ring energy; zero at both wells, stiffness k_eff there."""
    k = ring.effective_stiffness
    d = ring.well_halfwidth
    x = np.asarray(theta, dtype=float) - ring.well_center
    q = x * x - d * d
    return k / (8.0 * d * d) * q * q


def ring_gradient_1dof(theta, ring: RingDesign):
    k = ring.effective_stiffness
    d = ring.well_halfwidth
    x = np.asarray(theta, dtype=float) - ring.well_center
    return k / (2.0 * d * d) * x * (x * x - d * d)


# Circular-arc kinematics helpers.  A segment of length ell starts with
# tangent rotation psi and bends uniformly by phi; these give the advance of
# the end point and of the segment centroid along the closing axis, plus the
# partial derivatives needed for analytic gradients.  The exact expressions
# cancel catastrophically as phi -> 0 (up to three leading digits lost per
# power of phi in the denominator), so all switch to a fifth-order series
# below ARC_SERIES_SWITCH, where both branches agree to ~1e-10 relative.

ARC_SERIES_SWITCH = 1e-2


def _arc_end_dx(psi, phi, ell):
    phi = np.asarray(phi, dtype=float)
    c, s = np.cos(psi), np.sin(psi)
    small = np.abs(phi) < ARC_SERIES_SWITCH
    safe = np.where(small, 1.0, phi)
    exact = ell * (np.cos(psi) - np.cos(psi + phi)) / safe
    series = ell * (s + phi * (c / 2 + phi * (-s / 6 + phi * (
        -c / 24 + phi * (s / 120 + phi * c / 720)))))
    return np.where(small, series, exact)


def _arc_end_dx_dpsi(psi, phi, ell):
    phi = np.asarray(phi, dtype=float)
    c, s = np.cos(psi), np.sin(psi)
    small = np.abs(phi) < ARC_SERIES_SWITCH
    safe = np.where(small, 1.0, phi)
    exact = ell * (np.sin(psi + phi) - np.sin(psi)) / safe
    series = ell * (c + phi * (-s / 2 + phi * (-c / 6 + phi * (
        s / 24 + phi * (c / 120 - phi * s / 720)))))
    return np.where(small, series, exact)


def _arc_end_dx_dphi(psi, phi, ell):
    phi = np.asarray(phi, dtype=float)
    c, s = np.cos(psi), np.sin(psi)
    small = np.abs(phi) < ARC_SERIES_SWITCH
    safe = np.where(small, 1.0, phi)
    exact = ell * (np.sin(psi + phi) * safe
                   - (np.cos(psi) - np.cos(psi + phi))) / (safe * safe)
    series = ell * (c / 2 + phi * (-s / 3 + phi * (-c / 8 + phi * (
        s / 30 + phi * c / 144))))
    return np.where(small, series, exact)


def _arc_mean_x(psi, phi, ell):
    phi = np.asarray(phi, dtype=float)
    c, s = np.cos(psi), np.sin(psi)
    small = np.abs(phi) < ARC_SERIES_SWITCH
    safe = np.where(small, 1.0, phi)
    exact = ell * (np.cos(psi) * safe - np.sin(psi + phi)
                   + np.sin(psi)) / (safe * safe)
    series = ell * (s / 2 + phi * (c / 6 + phi * (-s / 24 + phi * (
        -c / 120 + phi * (s / 720 + phi * c / 5040)))))
    return np.where(small, series, exact)


def _arc_mean_x_dpsi(psi, phi, ell):
    phi = np.asarray(phi, dtype=float)
    c, s = np.cos(psi), np.sin(psi)
    small = np.abs(phi) < ARC_SERIES_SWITCH
    safe = np.where(small, 1.0, phi)
    exact = ell * (-np.sin(psi) * safe - np.cos(psi + phi)
                   + np.cos(psi)) / (safe * safe)
    series = ell * (c / 2 + phi * (-s / 6 + phi * (-c / 24 + phi * (
        s / 120 + phi * (c / 720 - phi * s / 5040)))))
    return np.where(small, series, exact)


def _arc_mean_x_dphi(psi, phi, ell):
    phi = np.asarray(phi, dtype=float)
    c, s = np.cos(psi), np.sin(psi)
    small = np.abs(phi) < ARC_SERIES_SWITCH
    safe = np.where(small, 1.0, phi)
    exact = ell * ((np.cos(psi) - np.cos(psi + phi)) * safe
                   - 2.0 * (np.cos(psi) * safe - np.sin(psi + phi)
                            + np.sin(psi))) / (safe * safe * safe)
    series = ell * (c / 6 + phi * (-s / 12 + phi * (-c / 40 + phi * (
        s / 180 + phi * c / 1008))))
    return np.where(small, series, exact)


def gravity_energy_1dof(theta, design: GripperDesign):
    """Gravitational potential of finger mass and tip payload.

    The finger is a constant-curvature arc; its center of mass and tip
    advance along the closing axis are closed-form arc integrals.
    """
    g = design.gravity
    if g == 0.0:
        return np.zeros_like(np.asarray(theta, dtype=float))[()]
    length = design.finger.length
    x_com = _arc_mean_x(0.0, theta, length)
    x_tip = _arc_end_dx(0.0, theta, length)
    return -g * (design.finger.mass * x_com + design.payload_mass * x_tip)


def gravity_gradient_1dof(theta, design: GripperDesign):
    g = design.gravity
    if g == 0.0:
        return np.zeros_like(np.asarray(theta, dtype=float))[()]
    length = design.finger.length
    return -g * (design.finger.mass * _arc_mean_x_dphi(0.0, theta, length)
                 + design.payload_mass * _arc_end_dx_dphi(0.0, theta, length))


def energy_components_1dof(theta, design: GripperDesign):
    """(finger, ring, gravity) energy terms at ``theta``."""
    return (finger_energy_1dof(theta, design.finger),
            ring_energy_1dof(theta, design.ring),
            gravity_energy_1dof(theta, design))


def total_energy_1dof(theta, design: GripperDesign):
    """Superposition of finger, ring and gravity energies."""
    f, r, g = energy_components_1dof(theta, design)
    return f + r + g


def gradient_1dof(theta, design: GripperDesign):
    """Analytic d/d(theta) of the total energy (generalized moment)."""
    return (finger_gradient_1dof(theta, design.finger)
            + ring_gradient_1dof(theta, design.ring)
            + gravity_gradient_1dof(theta, design))


def second_derivative_1dof(theta, design: GripperDesign, h: float = 1e-6):
    """Curvature of the energy, central difference of the analytic gradient."""
    return (gradient_1dof(theta + h, design)
            - gradient_1dof(theta - h, design)) / (2.0 * h)


def sample_landscape(design: GripperDesign, theta_grid) -> EnergyLandscape:
    grid = np.asarray(theta_grid, dtype=float)
    f, r, g = energy_components_1dof(grid, design)
    f = np.broadcast_to(np.asarray(f, dtype=float), grid.shape).copy()
    r = np.broadcast_to(np.asarray(r, dtype=float), grid.shape).copy()
    g = np.broadcast_to(np.asarray(g, dtype=float), grid.shape).copy()
    return EnergyLandscape(theta_grid=grid, total=f + r + g,
                           finger=f, ring=r, gravity=g)


# ---------------------------------------------------------------------------
# Segment-chain model
# ---------------------------------------------------------------------------

def _check_chain(angles, design: GripperDesign) -> np.ndarray:
    if isinstance(angles, ChainConfiguration):
        angles = angles.as_array()
    arr = np.asarray(angles, dtype=float)
    n = design.finger.n_segments
    if arr.shape != (n,):
        raise InvalidDesignError(
            f"chain configuration has shape {arr.shape}, expected ({n},)")
    return arr


def _ring_station_weights(design: GripperDesign) -> np.ndarray:
    """Weights w such that the bend angle at the ring station is w . phi."""
    n = design.finger.n_segments
    t = design.ring.attach_fraction * n
    w = np.zeros(n)
    k = min(int(math.floor(t)), n)
    w[:k] = 1.0
    if k < n:
        w[k] = t - k
    return w


def chain_energy(angles, design: GripperDesign) -> float:
    """Total energy of the segment chain (elastic + ring + gravity).

    The ring acts on the bend angle at its arc-length station, rescaled to
    the tip-angle convention so the well parameters keep their meaning.
    For one segment with the ring at the tip this reduces exactly to the
    single-coordinate model.
    """
    phi = _check_chain(angles, design)
    finger = design.finger
    n = finger.n_segments
    ell = finger.length / n
    rest = finger.natural_curvature * ell

    elastic = float(np.sum(_bend_energy_generic(
        phi, rest, ell, finger.cross_section, finger.material)))

    w = _ring_station_weights(design)
    psi_r = float(np.dot(w, phi))
    ring = float(ring_energy_1dof(psi_r / design.ring.attach_fraction,
                                  design.ring))

    grav = 0.0
    g = design.gravity
    if g != 0.0:
        seg_mass = finger.linear_density * ell
        psi = 0.0
        x = 0.0
        for p in phi:
            grav -= g * seg_mass * (x + float(_arc_mean_x(psi, p, ell)))
            x += float(_arc_end_dx(psi, p, ell))
            psi += p
        grav -= g * design.payload_mass * x
    return elastic + ring + grav


def chain_gradient(angles, design: GripperDesign) -> np.ndarray:
    """Analytic gradient of ``chain_energy`` with respect to joint angles."""
    phi = _check_chain(angles, design)
    finger = design.finger
    n = finger.n_segments
    ell = finger.length / n
    rest = finger.natural_curvature * ell

    if isinstance(finger.material, LinearElastic):
        grad = finger.bending_stiffness / ell * (phi - rest)
    else:
        grad = np.array([moment_curvature((p - rest) / ell,
                                          finger.cross_section, finger.material)
                         for p in phi])

    a = design.ring.attach_fraction
    w = _ring_station_weights(design)
    psi_r = float(np.dot(w, phi))
    grad += float(ring_gradient_1dof(psi_r / a, design.ring)) / a * w

    g = design.gravity
    if g != 0.0:
        seg_mass = finger.linear_density * ell
        psi = np.concatenate(([0.0], np.cumsum(phi)))  # psi[i] before seg i+1
        dB_dpsi = np.array([_arc_end_dx_dpsi(psi[i], phi[i], ell)
                            for i in range(n)])
        dB_dphi = np.array([_arc_end_dx_dphi(psi[i], phi[i], ell)
                            for i in range(n)])
        dA_dpsi = np.array([_arc_mean_x_dpsi(psi[i], phi[i], ell)
                            for i in range(n)])
        dA_dphi = np.array([_arc_mean_x_dphi(psi[i], phi[i], ell)
                            for i in range(n)])
        # d x_end(i) / d phi_j = dB_dphi[j] + sum_{j < i' <= i} dB_dpsi[i']
        # d x_com(i) / d phi_j = d x_end(i-1)/d phi_j + dA_dpsi[i] (j < i)
        #                      = dA_dphi[i]                         (j == i)
        for j in range(n):
            acc = 0.0
            dx_end = dB_dphi[j]          # d x_end / d phi_j at segment i = j
            acc += dA_dphi[j]            # centroid of segment j itself
            for i in range(j + 1, n):
                acc += dx_end + dA_dpsi[i]
                dx_end += dB_dpsi[i]
            grad[j] -= g * (seg_mass * acc + design.payload_mass * dx_end)
    return grad


def chain_hessian(angles, design: GripperDesign, h: float = 1e-6) -> np.ndarray:
    """Hessian by central differences of the analytic gradient."""
    phi = _check_chain(angles, design)
    n = phi.size
    hess = np.empty((n, n))
    for j in range(n):
        e = np.zeros(n)
        e[j] = h
        hess[:, j] = (chain_gradient(phi + e, design)
                      - chain_gradient(phi - e, design)) / (2.0 * h)
    return 0.5 * (hess + hess.T)


def forward_kinematics(angles, finger: FingerDesign) -> np.ndarray:
    """Node positions of the rigid-link chain, rooted at the origin.

    The first tangent points along +y; joint i rotates the following link
    by the cumulative angle.  Returns an (n+1, 2) array of (x, y).
    """
    if isinstance(angles, ChainConfiguration):
        angles = angles.as_array()
    phi = np.asarray(angles, dtype=float)
    if phi.shape != (finger.n_segments,):
        raise InvalidDesignError(
            f"chain configuration has shape {phi.shape}, "
            f"expected ({finger.n_segments},)")
    ell = finger.length / finger.n_segments
    psi = np.cumsum(phi)
    xy = np.zeros((finger.n_segments + 1, 2))
    xy[1:, 0] = np.cumsum(ell * np.sin(psi))
    xy[1:, 1] = np.cumsum(ell * np.cos(psi))
    return xy


def uniform_chain(design: GripperDesign, tip_angle: float) -> np.ndarray:
    """Constant-curvature chain configuration with the given tip angle."""
    n = design.finger.n_segments
    return np.full(n, tip_angle / n)


def tip_chord(theta, length: float):
    """Straight-line distance from base to tip of a constant-curvature arc."""
    th = np.asarray(theta, dtype=float)
    small = np.abs(th) < SMALL_ANGLE
    safe = np.where(small, 1.0, th)
    exact = 2.0 * length * np.sin(safe / 2.0) / safe
    series = length * (1.0 - th * th / 24.0)
    return np.where(small, series, exact)[()]


def set_design_value(design: GripperDesign, path: str, value) -> GripperDesign:
    """Return a copy of ``design`` with one dotted-path field replaced.

    Paths follow the configuration-file key names, e.g. ``ring.stiffness``
    or ``finger.natural_curvature``.
    """
    finger, ring = design.finger, design.ring
    if path == "finger.length":
        return replace(design, finger=replace(finger, length=float(value)))
    if path == "finger.natural_curvature":
        return replace(design, finger=replace(finger,
                                              natural_curvature=float(value)))
    if path == "finger.width":
        cs = replace(finger.cross_section, width=float(value))
        return replace(design, finger=replace(finger, cross_section=cs))
    if path == "finger.thickness":
        cs = replace(finger.cross_section, thickness=float(value))
        return replace(design, finger=replace(finger, cross_section=cs))
    if path == "finger.n_segments":
        return replace(design, finger=replace(finger, n_segments=int(value)))
    if path == "finger.linear_density":
        return replace(design, finger=replace(finger,
                                              linear_density=float(value)))
    if path == "material.youngs_modulus":
        return replace(design, finger=replace(
            finger, material=LinearElastic(float(value))))
    if path in ("material.c10", "material.c20", "material.c30"):
        mat = finger.material
        if not isinstance(mat, Yeoh):
            raise InvalidDesignError(
                f"{path} requires a Yeoh material, design uses "
                f"{type(mat).__name__}")
        return replace(design, finger=replace(
            finger, material=replace(mat, **{path.split(".")[1]: float(value)})))
    if path in ("ring.attach_fraction", "ring.well_center",
                "ring.well_halfwidth", "ring.stiffness", "ring.width_scale"):
        return replace(design, ring=replace(ring,
                                            **{path.split(".")[1]: float(value)}))
    if path in ("gripper.inertia", "gripper.damping", "gripper.payload_mass",
                "gripper.gravity"):
        return replace(design, **{path.split(".")[1]: float(value)})
    raise InvalidDesignError(f"unknown design parameter path: {path}")
