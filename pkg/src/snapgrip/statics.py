"""Equilibrium analysis: well/saddle location, barriers, loads, continuation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import NonConvergenceError, NotBistableError, SaddleOrderError
from .model import (ChainConfiguration, GripperDesign, chain_energy,
                    chain_gradient, chain_hessian, gradient_1dof,
                    second_derivative_1dof, total_energy_1dof, uniform_chain)

DEFAULT_WINDOW = (-math.pi, math.pi)
DEFAULT_GRID_N = 4096
GRADIENT_TOL = 1e-10        # N*m at reported equilibria
BISECTION_TOL = 1e-12       # rad
MERGE_TOL = 1e-6            # rad, duplicate chain equilibria


@dataclass(frozen=True)
class Equilibrium:
    """A stationary point of the energy, with stability information.

    ``curvature`` is the second derivative at the point (smallest Hessian
    eigenvalue for the chain model).  ``configuration`` is populated only
    for chain equilibria.
    """

    theta: float
    energy: float
    stable: bool
    curvature: float
    configuration: Optional[ChainConfiguration] = None

    @property
    def classification(self) -> str:
        return "stable" if self.stable else "unstable"


@dataclass(frozen=True)
class EquilibriumReport:
    """All equilibria in the search window, ordered by bend angle."""

    equilibria: tuple
    open_state: Optional[Equilibrium] = None
    closed_state: Optional[Equilibrium] = None
    saddle: Optional[Equilibrium] = None
    snap_through_energy: Optional[float] = None

    @property
    def bistable(self) -> bool:
        return self.saddle is not None


@dataclass(frozen=True)
class ContinuationPath:
    """Quasi-static response under a ramped closing moment."""

    taus: np.ndarray
    thetas: np.ndarray
    energies: np.ndarray
    fold_points: tuple = ()


def _bisect_gradient_root(design, lo, hi, g_lo):
    """Refine one sign change of the gradient down to BISECTION_TOL."""
    while hi - lo > BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        g_mid = float(gradient_1dof(mid, design))
        if g_mid == 0.0:
            return mid
        if (g_mid > 0) == (g_lo > 0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def find_equilibria_1dof(design: GripperDesign,
                         theta_min: float = DEFAULT_WINDOW[0],
                         theta_max: float = DEFAULT_WINDOW[1],
                         grid_n: int = DEFAULT_GRID_N) -> EquilibriumReport:
    """Locate every equilibrium of the reduced model in the window.

    Sign changes of the analytic gradient on a uniform grid are refined by
    bisection; stability comes from the local energy curvature.  When
    exactly three equilibria alternate stable/unstable/stable the report
    identifies open state, saddle and closed state and the snap-through
    energy (saddle energy minus open-state energy).  Fewer equilibria give
    a monostable report; bistability is never fabricated.
    """
    if not (theta_min < theta_max):
        raise ValueError("theta_min must be < theta_max")
    if grid_n < 100:
        raise ValueError("grid_n must be >= 100")

    grid = np.linspace(theta_min, theta_max, grid_n)
    g = np.asarray(gradient_1dof(grid, design), dtype=float)
    roots = []
    for i in range(grid_n - 1):
        if g[i] == 0.0:
            roots.append(grid[i])
        elif (g[i] > 0) != (g[i + 1] > 0):
            roots.append(_bisect_gradient_root(design, grid[i], grid[i + 1],
                                               g[i]))
    if g[-1] == 0.0:
        roots.append(grid[-1])

    equilibria = []
    for theta in roots:
        curv = float(second_derivative_1dof(theta, design))
        equilibria.append(Equilibrium(theta=float(theta),
                                      energy=float(total_energy_1dof(theta,
                                                                     design)),
                                      stable=curv > 0.0,
                                      curvature=curv))
    equilibria.sort(key=lambda e: e.theta)
    return _assemble_report(equilibria)


def _assemble_report(equilibria) -> EquilibriumReport:
    eq = tuple(equilibria)
    if len(eq) == 3 and eq[0].stable and not eq[1].stable and eq[2].stable:
        barrier = eq[1].energy - eq[0].energy
        return EquilibriumReport(equilibria=eq, open_state=eq[0],
                                 closed_state=eq[2], saddle=eq[1],
                                 snap_through_energy=barrier)
    return EquilibriumReport(equilibria=eq)


def snap_through_energy(design: GripperDesign, **window) -> float:
    """Energy barrier from the open state to the transition state."""
    report = find_equilibria_1dof(design, **window)
    if not report.bistable:
        raise NotBistableError("design is not bistable")
    return float(report.snap_through_energy)


def trigger_moment(design: GripperDesign, **window) -> float:
    """Smallest quasi-static closing moment that guarantees snap-through.

    Equals the maximum of the energy gradient between the open state and
    the saddle.
    """
    report = find_equilibria_1dof(design, **window)
    if not report.bistable:
        raise NotBistableError("design is not bistable")
    lo, hi = report.open_state.theta, report.saddle.theta
    grid = np.linspace(lo, hi, 2048)
    g = np.asarray(gradient_1dof(grid, design), dtype=float)
    i = int(np.argmax(g))
    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, grid.size - 1)]
    res = minimize_scalar(lambda t: -float(gradient_1dof(t, design)),
                          bounds=(a, b), method="bounded",
                          options={"xatol": 1e-12})
    return max(float(-res.fun), float(g[i]))


def _newton_1dof(design, theta, tau, tol=1e-12, max_iter=60, h=1e-7):
    """Damped Newton solve of gradient(theta) = tau.  Returns theta or None."""
    r = float(gradient_1dof(theta, design)) - tau
    for _ in range(max_iter):
        if abs(r) < tol:
            return theta
        slope = (float(gradient_1dof(theta + h, design))
                 - float(gradient_1dof(theta - h, design))) / (2.0 * h)
        if slope == 0.0:
            return None
        step = -r / slope
        alpha = 1.0
        for _ in range(40):
            cand = theta + alpha * step
            r_new = float(gradient_1dof(cand, design)) - tau
            if abs(r_new) < abs(r) * (1.0 - 1e-4) or abs(r_new) < tol:
                theta, r = cand, r_new
                break
            alpha *= 0.5
        else:
            return None
    return theta if abs(r) < tol else None


def continuation_ramped_load(design: GripperDesign, tau_max: float,
                             n_steps: int, **window) -> ContinuationPath:
    """Trace the equilibrium branch as a closing moment ramps from zero.

    Each load step relaxes from the previous solution (damped Newton,
    the quasi-static stand-in for numerical stabilization).  When the
    branch folds (relaxation fails or the curvature crosses zero) the
    fold is recorded and the path restarts on the post-snap branch.
    """
    if n_steps < 10:
        raise ValueError("n_steps must be >= 10")
    report = find_equilibria_1dof(design, **window)
    stables = [e for e in report.equilibria if e.stable]
    if not stables:
        raise NonConvergenceError("no stable equilibrium to start from")
    theta = stables[0].theta
    theta_hi = max(e.theta for e in report.equilibria) + 2.0

    taus = np.linspace(0.0, tau_max, n_steps)
    thetas = np.empty(n_steps)
    folds = []
    for i, tau in enumerate(taus):
        sol = _newton_1dof(design, theta, tau)
        on_fold = sol is None
        if sol is not None:
            curv = float(second_derivative_1dof(sol, design))
            on_fold = curv <= 0.0
        if on_fold:
            folds.append((float(tau), float(theta)))
            sol = _post_fold_root(design, tau, theta, theta_hi)
            if sol is None:
                raise NonConvergenceError(
                    f"continuation lost the branch at load {tau:.6g}")
        theta = float(sol)
        thetas[i] = theta
    energies = np.asarray(total_energy_1dof(thetas, design), dtype=float)
    return ContinuationPath(taus=taus, thetas=thetas, energies=energies,
                            fold_points=tuple(folds))


def _post_fold_root(design, tau, theta_from, theta_hi):
    """Bracket the stable solution beyond a fold and bisect to it."""
    grid = np.linspace(theta_from, theta_hi, 512)
    g = np.asarray(gradient_1dof(grid, design), dtype=float) - tau
    for i in range(grid.size - 1, 0, -1):
        if (g[i - 1] > 0) != (g[i] > 0):
            lo, hi = grid[i - 1], grid[i]
            g_lo = g[i - 1]
            while hi - lo > BISECTION_TOL:
                mid = 0.5 * (lo + hi)
                gm = float(gradient_1dof(mid, design)) - tau
                if gm == 0.0:
                    return mid
                if (gm > 0) == (g_lo > 0):
                    lo, g_lo = mid, gm
                else:
                    hi = mid
            sol = 0.5 * (lo + hi)
            if float(second_derivative_1dof(sol, design)) > 0:
                return sol
    return None


# ---------------------------------------------------------------------------
# Chain-model statics
# ---------------------------------------------------------------------------

CHAIN_GRAD_TOL = 1e-9


def _chain_newton(design, phi0, tol=CHAIN_GRAD_TOL, max_iter=200):
    """Damped Newton iteration to a stationary point of the chain energy."""
    phi = np.array(phi0, dtype=float)
    g = chain_gradient(phi, design)
    for _ in range(max_iter):
        gnorm = float(np.max(np.abs(g)))
        if gnorm < tol:
            return phi
        hess = chain_hessian(phi, design)
        step = None
        lam = 0.0
        scale = float(np.max(np.abs(hess))) or 1.0
        for _ in range(12):
            try:
                step = np.linalg.solve(hess + lam * np.eye(phi.size), -g)
                break
            except np.linalg.LinAlgError:
                lam = max(lam * 10.0, 1e-12 * scale)
        if step is None:
            return None
        alpha = 1.0
        for _ in range(40):
            cand = phi + alpha * step
            g_new = chain_gradient(cand, design)
            if (float(np.max(np.abs(g_new))) < gnorm * (1.0 - 1e-4)
                    or float(np.max(np.abs(g_new))) < tol):
                phi, g = cand, g_new
                break
            alpha *= 0.5
        else:
            return None
    return phi if float(np.max(np.abs(g))) < tol else None


def _chain_equilibrium(design, phi) -> Equilibrium:
    hess = chain_hessian(phi, design)
    eigs = np.linalg.eigvalsh(hess)
    return Equilibrium(theta=float(np.sum(phi)),
                       energy=float(chain_energy(phi, design)),
                       stable=bool(np.all(eigs > 0.0)),
                       curvature=float(eigs[0]),
                       configuration=ChainConfiguration(tuple(phi)))


def find_equilibria_chain(design: GripperDesign,
                          seeds: Sequence) -> list:
    """Converge each seed to a chain equilibrium; merge duplicates.

    Per-seed non-convergence is skipped, not fatal.  Results are sorted by
    tip angle; duplicates within the merge tolerance keep the lowest-energy
    representative.
    """
    converged = []
    for seed in seeds:
        if isinstance(seed, ChainConfiguration):
            seed = seed.as_array()
        phi = _chain_newton(design, seed)
        if phi is not None:
            converged.append(phi)
    merged = []
    for phi in converged:
        for k, other in enumerate(merged):
            if float(np.max(np.abs(phi - other))) < MERGE_TOL:
                if chain_energy(phi, design) < chain_energy(other, design):
                    merged[k] = phi
                break
        else:
            merged.append(phi)
    result = [_chain_equilibrium(design, phi) for phi in merged]
    result.sort(key=lambda e: e.theta)
    return result


def default_chain_seeds(design: GripperDesign,
                        report: Optional[EquilibriumReport] = None) -> list:
    """Uniform-curvature seeds at the reduced-model wells (or ring wells)."""
    if report is None:
        report = find_equilibria_1dof(design)
    if report.bistable:
        tips = [report.open_state.theta, report.closed_state.theta]
    else:
        tips = list(design.ring.wells) + [design.finger.rest_angle]
    return [uniform_chain(design, t) for t in tips]


def saddle_search_chain(design: GripperDesign, minimum_a, minimum_b,
                        n_images: int = 11, max_iter: int = 5000,
                        climb_tol: float = 1e-7) -> Equilibrium:
    """Transition state between two chain minima by a climbing-image string.

    Images are interpolated linearly between the endpoints, relaxed with
    tangent-projected gradient descent and reparameterized to equal arc
    length each sweep; the highest image climbs along the tangent.  The
    converged climbing image is polished by Newton iteration and must have
    exactly one negative Hessian eigenvalue.
    """
    if n_images < 8:
        raise ValueError("n_images must be >= 8")
    a = (minimum_a.as_array() if isinstance(minimum_a, ChainConfiguration)
         else np.asarray(minimum_a, dtype=float))
    b = (minimum_b.as_array() if isinstance(minimum_b, ChainConfiguration)
         else np.asarray(minimum_b, dtype=float))
    for end in (a, b):
        if float(np.max(np.abs(chain_gradient(end, design)))) > 1e-6:
            raise ValueError("string endpoints must be converged equilibria")
        eigs = np.linalg.eigvalsh(chain_hessian(end, design))
        if not np.all(eigs > 0):
            raise ValueError("string endpoints must be stable equilibria")

    frac = np.linspace(0.0, 1.0, n_images)[:, None]
    images = (1.0 - frac) * a[None, :] + frac * b[None, :]

    # Step size from the stiffest curvature seen at the endpoints.
    lam = max(float(np.max(np.abs(np.linalg.eigvalsh(
        chain_hessian(end, design))))) for end in (a, b))
    eta = 0.5 / lam

    for it in range(max_iter):
        grads = np.array([chain_gradient(img, design) for img in images])
        energies = np.array([chain_energy(img, design) for img in images])
        climb = int(np.argmax(energies[1:-1])) + 1

        if float(np.linalg.norm(grads[climb])) < 10 * climb_tol and it > 20:
            break

        for i in range(1, n_images - 1):
            tan = images[i + 1] - images[i - 1]
            norm = float(np.linalg.norm(tan))
            if norm > 0:
                tan /= norm
            proj = float(np.dot(grads[i], tan))
            if i == climb:
                images[i] -= eta * (grads[i] - 2.0 * proj * tan)
            else:
                images[i] -= eta * (grads[i] - proj * tan)

        images = _reparameterize(images, climb)
    else:
        raise NonConvergenceError("string method exhausted its iteration "
                                  "budget without converging")

    polished = _chain_newton(design, images[climb], tol=climb_tol * 1e-3)
    if polished is None:
        polished = images[climb]
    if float(np.linalg.norm(chain_gradient(polished, design))) > climb_tol:
        raise NonConvergenceError("climbing image failed to reach the "
                                  "gradient tolerance")
    eq = _chain_equilibrium(design, polished)
    hess = chain_hessian(polished, design)
    n_neg = int(np.sum(np.linalg.eigvalsh(hess) < 0.0))
    if n_neg != 1:
        raise SaddleOrderError(
            f"converged stationary point has {n_neg} unstable directions, "
            "expected exactly 1")
    return eq


def _reparameterize(images, climb):
    """Redistribute images by arc length, pinning endpoints and the climber."""
    seg = np.linalg.norm(np.diff(images, axis=0), axis=1)
    s = np.concatenate(([0.0], np.cumsum(seg)))
    if s[-1] == 0.0:
        return images
    out = images.copy()
    n = images.shape[0]
    # Equal spacing on each side of the climbing image.
    for lo, hi in ((0, climb), (climb, n - 1)):
        if hi - lo < 2:
            continue
        targets = np.linspace(s[lo], s[hi], hi - lo + 1)[1:-1]
        for k, t in enumerate(targets):
            j = int(np.searchsorted(s, t, side="right") - 1)
            j = min(max(j, 0), n - 2)
            span = s[j + 1] - s[j]
            w = 0.0 if span == 0 else (t - s[j]) / span
            out[lo + 1 + k] = (1.0 - w) * images[j] + w * images[j + 1]
    return out
