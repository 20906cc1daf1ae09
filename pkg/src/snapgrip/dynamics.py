"""Passive snap-through dynamics of the reduced model.

The equation of motion is J*theta'' = -dU/dtheta - c*theta' + tau_ext,
integrated with a fixed-step classical Runge-Kutta scheme so acceptance
runs are bit-reproducible.  An energy audit (mechanical + cumulative
dissipation) is carried along as an extra state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.stats import spearmanr

from .errors import NotBistableError, StepSizeError
from .model import GripperDesign, gradient_1dof, second_derivative_1dof, \
    total_energy_1dof
from .statics import Equilibrium, EquilibriumReport, find_equilibria_1dof

# Closure criterion: within this angle of the closed state, sustained this long.
CLOSURE_BAND = 0.05       # rad
CLOSURE_HOLD = 5e-3       # s
MAX_STEP_FRACTION = 0.05  # dt <= this / natural frequency


@dataclass(frozen=True)
class Trajectory:
    """Time series from one simulation, with its energy audit."""

    times: np.ndarray
    thetas: np.ndarray
    velocities: np.ndarray
    total_mechanical_energy: np.ndarray
    dissipated: np.ndarray

    def kinetic(self, design: GripperDesign) -> np.ndarray:
        return 0.5 * design.inertia * self.velocities ** 2


@dataclass(frozen=True)
class ClosingEvent:
    """Outcome of a triggered closing attempt."""

    triggered: bool
    closing_time: float
    peak_velocity: float


def natural_frequency(design: GripperDesign, at) -> float:
    """Small-oscillation angular frequency sqrt(U''/J) at a stable point."""
    if isinstance(at, Equilibrium):
        if not at.stable:
            raise ValueError("natural frequency is undefined at an "
                             "unstable equilibrium")
        theta = at.theta
    else:
        theta = float(at)
    curv = float(second_derivative_1dof(theta, design))
    if curv <= 0.0:
        raise ValueError("natural frequency is undefined where the energy "
                         "curvature is not positive")
    return math.sqrt(curv / design.inertia)


def _check_step(design: GripperDesign, theta_init: float, dt: float) -> None:
    report = find_equilibria_1dof(design)
    stables = [e for e in report.equilibria if e.stable]
    if not stables:
        return
    nearest = min(stables, key=lambda e: abs(e.theta - theta_init))
    omega = natural_frequency(design, nearest)
    if dt > MAX_STEP_FRACTION / omega:
        raise StepSizeError(
            f"dt = {dt:.3g} s exceeds the stability bound "
            f"{MAX_STEP_FRACTION / omega:.3g} s at the nearest equilibrium")


def _make_rhs(design: GripperDesign,
              external_moment: Optional[Callable]):
    inv_j = 1.0 / design.inertia
    c = design.damping

    def rhs(t, theta, omega):
        tau = external_moment(t, theta) if external_moment is not None else 0.0
        acc = (-float(gradient_1dof(theta, design)) - c * omega + tau) * inv_j
        return omega, acc, c * omega * omega

    return rhs


def _rk4_step(rhs, t, theta, omega, diss, dt):
    k1t, k1w, k1d = rhs(t, theta, omega)
    k2t, k2w, k2d = rhs(t + dt / 2, theta + dt / 2 * k1t, omega + dt / 2 * k1w)
    k3t, k3w, k3d = rhs(t + dt / 2, theta + dt / 2 * k2t, omega + dt / 2 * k2w)
    k4t, k4w, k4d = rhs(t + dt, theta + dt * k3t, omega + dt * k3w)
    theta += dt / 6 * (k1t + 2 * k2t + 2 * k3t + k4t)
    omega += dt / 6 * (k1w + 2 * k2w + 2 * k3w + k4w)
    diss += dt / 6 * (k1d + 2 * k2d + 2 * k3d + k4d)
    return theta, omega, diss


def simulate_1dof(design: GripperDesign, theta_init: float, omega_init: float,
                  external_moment: Optional[Callable] = None,
                  dt: float = 2e-5, t_end: float = 0.1) -> Trajectory:
    """Integrate the passive dynamics and record every step.

    ``external_moment`` is an optional callable (t, theta) -> N*m.  The
    step size is checked against the small-oscillation period at the
    nearest stable equilibrium before integration starts.
    """
    if not (dt > 0 and t_end > dt):
        raise ValueError("need dt > 0 and t_end > dt")
    _check_step(design, theta_init, dt)
    rhs = _make_rhs(design, external_moment)

    n = int(round(t_end / dt))
    times = np.empty(n + 1)
    thetas = np.empty(n + 1)
    omegas = np.empty(n + 1)
    energy = np.empty(n + 1)
    diss_arr = np.empty(n + 1)

    theta, omega, diss = float(theta_init), float(omega_init), 0.0
    half_j = 0.5 * design.inertia
    for i in range(n + 1):
        times[i] = i * dt
        thetas[i] = theta
        omegas[i] = omega
        energy[i] = float(total_energy_1dof(theta, design)) \
            + half_j * omega * omega
        diss_arr[i] = diss
        if i < n:
            theta, omega, diss = _rk4_step(rhs, i * dt, theta, omega, diss, dt)
    return Trajectory(times=times, thetas=thetas, velocities=omegas,
                      total_mechanical_energy=energy, dissipated=diss_arr)


def closing_time(design: GripperDesign, perturbation_impulse: float,
                 dt: Optional[float] = None, t_max: float = 1.0,
                 theta_init: Optional[float] = None) -> ClosingEvent:
    """Kick the open state with an angular impulse and time the closure.

    Closure means staying within CLOSURE_BAND of the closed state for
    CLOSURE_HOLD seconds; the reported time is the moment the band is
    entered.  Runs stop early once the remaining mechanical energy can no
    longer cross the barrier.  By default the run starts at the open
    equilibrium, which requires a bistable design; pass ``theta_init`` to
    start elsewhere (for example at the pre-trim open angle of a design
    whose open state has been trimmed away), in which case only a closed
    stable state is required.
    """
    report = find_equilibria_1dof(design)
    if theta_init is None:
        if not report.bistable:
            raise NotBistableError("design is not bistable")
        theta_open = report.open_state.theta
        theta_closed = report.closed_state.theta
        theta_saddle = report.saddle.theta
        u_saddle = report.saddle.energy
    else:
        theta_open = float(theta_init)
        closed_minima = [e for e in report.equilibria
                         if e.stable and e.theta > theta_open]
        if not closed_minima:
            raise NotBistableError("no closed stable state to snap into")
        theta_closed = min(closed_minima, key=lambda e: e.energy).theta
        saddles = [e for e in report.equilibria
                   if not e.stable and theta_open < e.theta < theta_closed]
        if saddles:
            theta_saddle = saddles[0].theta
            u_saddle = saddles[0].energy
        else:
            theta_saddle = -math.inf
            u_saddle = -math.inf

    omega_closed = natural_frequency(design, theta_closed)
    if dt is None:
        dt = min(2e-5, 0.02 / omega_closed)
    _check_step(design, theta_open, dt)
    rhs = _make_rhs(design, None)

    theta = theta_open
    omega = perturbation_impulse / design.inertia
    diss = 0.0
    half_j = 0.5 * design.inertia
    peak = abs(omega)
    entered_at = None
    t = 0.0
    n = int(round(t_max / dt))
    for i in range(n):
        theta, omega, diss = _rk4_step(rhs, t, theta, omega, diss, dt)
        t = (i + 1) * dt
        peak = max(peak, abs(omega))
        if abs(theta - theta_closed) <= CLOSURE_BAND:
            if entered_at is None:
                entered_at = t
            elif t - entered_at >= CLOSURE_HOLD:
                return ClosingEvent(triggered=True, closing_time=entered_at,
                                    peak_velocity=peak)
        else:
            entered_at = None
        if theta < theta_saddle:
            mech = float(total_energy_1dof(theta, design)) \
                + half_j * omega * omega
            if mech < u_saddle:
                break
    return ClosingEvent(triggered=False, closing_time=math.nan,
                        peak_velocity=peak)


def minimal_trigger_impulse(design: GripperDesign) -> float:
    """Impulse that just supplies the barrier energy from the open state."""
    report = find_equilibria_1dof(design)
    if not report.bistable:
        raise NotBistableError("design is not bistable")
    return math.sqrt(2.0 * design.inertia * report.snap_through_energy)


def gravity_trigger_check(design: GripperDesign,
                          orientation_sign: int = 1):
    """Does gravity alone destabilize the open state?

    Re-evaluates the landscape with gravity oriented by
    ``orientation_sign`` and reports (triggered, margin) where the margin
    is the barrier still protecting the open state (zero once triggered).
    """
    g = orientation_sign * abs(design.gravity)
    oriented = replace(design, gravity=g)
    report = find_equilibria_1dof(oriented)
    if not report.bistable:
        open_minima = [e for e in report.equilibria
                       if e.stable and e.theta < design.ring.well_center]
        if open_minima:
            # Open state survives but there is nothing to snap into.
            return False, math.inf
        return True, 0.0
    barrier = float(report.snap_through_energy)
    return barrier < 1e-9, barrier


@dataclass(frozen=True)
class FrequencyStudyRow:
    stiffness_scale: float
    stiffness: float
    bistable: bool
    natural_frequency_closed: float
    closing_time: float


def closing_time_vs_frequency_study(design: GripperDesign,
                                    scales: Sequence[float],
                                    impulse_factor: float = 1.5) -> list:
    """Sweep the ring stiffness and record closed-state frequency vs closure.

    Each design is kicked with ``impulse_factor`` times its own minimal
    trigger impulse.  Non-bistable points are kept in the table but
    flagged, with NaN metrics.
    """
    from .model import set_design_value

    rows = []
    for s in scales:
        d = set_design_value(design, "ring.stiffness",
                             design.ring.stiffness * float(s))
        report = find_equilibria_1dof(d)
        if not report.bistable:
            rows.append(FrequencyStudyRow(float(s), d.ring.stiffness, False,
                                          math.nan, math.nan))
            continue
        omega = natural_frequency(d, report.closed_state)
        impulse = impulse_factor * math.sqrt(
            2.0 * d.inertia * report.snap_through_energy)
        event = closing_time(d, impulse)
        rows.append(FrequencyStudyRow(
            float(s), d.ring.stiffness, True, omega,
            event.closing_time if event.triggered else math.nan))
    return rows


def frequency_study_spearman(rows) -> float:
    """Spearman correlation between inverse frequency and closing time."""
    ok = [(1.0 / r.natural_frequency_closed, r.closing_time)
          for r in rows if r.bistable and math.isfinite(r.closing_time)]
    if len(ok) < 2:
        return math.nan
    inv_f, t = zip(*ok)
    return float(spearmanr(inv_f, t).statistic)


def calibrate_inertia(design: GripperDesign, target_time: float,
                      impulse_factor: float = 5.0,
                      damping_ratio: float = 1.0,
                      max_iter: int = 60):
    """Fit the effective inertia so the triggered closing time hits a target.

    For each trial inertia the damping is re-derived as ``damping_ratio``
    of critical at the closed state, then the closing time is measured by
    simulation.  Bisection on log-inertia; returns (inertia, damping).
    The procedure is the documented calibration step: the reference
    experiments report outcomes, not inertia or damping.
    """
    report = find_equilibria_1dof(design)
    if not report.bistable:
        raise NotBistableError("design is not bistable")
    curv = report.closed_state.curvature
    barrier = report.snap_through_energy

    def timed(j):
        c = 2.0 * damping_ratio * math.sqrt(curv * j)
        d = replace(design, inertia=j, damping=c)
        impulse = impulse_factor * math.sqrt(2.0 * j * barrier)
        event = closing_time(d, impulse)
        return event.closing_time if event.triggered else math.inf

    lo, hi = 1e-8, 1e-2
    j = math.sqrt(lo * hi)
    for _ in range(max_iter):
        j = math.sqrt(lo * hi)
        t = timed(j)
        if abs(t - target_time) < 1e-4:
            break
        if t > target_time:
            hi = j     # lighter closes faster
        else:
            lo = j
    c = 2.0 * damping_ratio * math.sqrt(curv * j)
    return j, c
