"""Partition function, thermal states, and the inverse problems
(inverse temperature from energy or from entropy) for beta anywhere in
[-inf, +inf].

Negative temperatures are first class: they describe population-inverted
(active) states and trace the right-hand half of the thermal curve. All
evaluations use a max-shifted exponential sum, so no overflow occurs for
any finite beta; beyond ``beta_cap`` the curve is numerically flat and
the exact plateau values are returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError
from .numerics import Bracket, solve_root_bracketed
from .system import HamiltonianSpec

__all__ = [
    "ThermalPoint",
    "beta_cap",
    "log_partition",
    "thermal_point",
    "beta_from_energy",
    "beta_from_entropy",
    "energy_variance",
]


@dataclass(frozen=True)
class ThermalPoint:
    """One sample (beta, log Z, average energy, entropy) on the thermal curve."""

    beta: float
    log_z: float
    energy: float
    entropy: float


def beta_cap(h: HamiltonianSpec) -> float:
    """Largest |beta| worth resolving: 750/(E_max - E_min).

    Beyond this the Boltzmann weights have collapsed to the extreme level
    at double precision, so the curve sits on its plateau.
    """
    span = h.e_max - h.e_min
    return 750.0 / span if span > 0 else math.inf


def log_partition(h: HamiltonianSpec, betas) -> np.ndarray:
    """log Z at each beta (vectorized), max-shifted for overflow safety."""
    b = np.atleast_1d(np.asarray(betas, dtype=float))
    w = -np.outer(b, h.energies())
    m = w.max(axis=1, keepdims=True)
    return (m[:, 0] + np.log(np.exp(w - m) @ h.degeneracies()))


def _plateau(h: HamiltonianSpec, beta: float, positive_side: bool) -> ThermalPoint:
    if positive_side:
        e, g = h.e_min, h.g_ground
    else:
        e, g = h.e_max, h.g_top
    log_z = math.log(g) if e == 0.0 else math.log(g) - beta * e
    return ThermalPoint(beta=beta, log_z=log_z, energy=e, entropy=math.log(g))


def thermal_point(h: HamiltonianSpec, beta: float) -> ThermalPoint:
    """The thermal state's (log Z, E, S) at inverse temperature ``beta``.

    ``beta`` may be +-inf; the ground plateau (E_min, log g_ground) and the
    top plateau (E_max, log g_top) are returned exactly there, and also for
    any finite beta beyond the cap.
    """
    if math.isnan(beta):
        raise ValidationError("bad-beta", "beta must not be NaN")
    cap = beta_cap(h)
    if beta == math.inf or beta > cap:
        return _plateau(h, beta, positive_side=True)
    if beta == -math.inf or beta < -cap:
        return _plateau(h, beta, positive_side=False)

    energies = h.energies()
    degs = h.degeneracies()
    w = -beta * energies
    m = float(w.max())
    weights = degs * np.exp(w - m)
    z_shift = float(weights.sum())
    log_z = m + math.log(z_shift)
    p = weights / z_shift
    energy = float(p @ energies)
    # per-level probability p_i spreads over g_i states: S = -sum p ln(p/g)
    mask = p > 0.0
    entropy = float(-(p[mask] @ np.log(p[mask] / degs[mask])))
    entropy = min(max(entropy, 0.0), h.log_dim)
    return ThermalPoint(beta=float(beta), log_z=log_z, energy=energy, entropy=entropy)


def _require_nondegenerate(h: HamiltonianSpec):
    if h.e_max == h.e_min:
        raise DomainError(
            "degenerate-hamiltonian", "all levels share one energy; the thermal curve is a single point"
        )


def _mean_energy(h: HamiltonianSpec, beta: float) -> float:
    """Scalar E(tau_beta); math-only fast path for the inverse solvers."""
    m = max(-beta * e for e, _ in h.levels)
    z = num = 0.0
    for e, g in h.levels:
        w = g * math.exp(-beta * e - m)
        z += w
        num += w * e
    return num / z


def _entropy(h: HamiltonianSpec, beta: float) -> float:
    """Scalar S(tau_beta); math-only fast path for the inverse solvers."""
    m = max(-beta * e for e, _ in h.levels)
    weights = [(g * math.exp(-beta * e - m), g) for e, g in h.levels]
    z = sum(w for w, _ in weights)
    s = 0.0
    for w, g in weights:
        p = w / z
        if p > 0.0:
            s -= p * math.log(p / g)
    return s


def _solve_decreasing(h: HamiltonianSpec, f, positive_side: bool) -> float:
    """Root of a strictly decreasing f(beta) with f(0) on the known side,
    expanding the bracket geometrically from 0 before solving.

    positive_side means f(0) > 0, so the root lies at beta > 0.
    """
    cap = beta_cap(h)
    sign = 1.0 if positive_side else -1.0
    width = 8.0 / (h.e_max - h.e_min)
    near = 0.0
    while width < cap:
        far = sign * width
        if sign * f(far) <= 0.0:
            break
        near, width = far, width * 4.0
    else:
        if sign * f(sign * cap) > 0.0:
            return sign * cap
        far = sign * cap
    a, b = sorted((near, far))
    return solve_root_bracketed(f, Bracket(a, b, tolerance=1e-14 * max(1.0, cap)))


def beta_from_energy(h: HamiltonianSpec, energy: float) -> float:
    """Invert E(tau_beta) = energy.

    E(tau_beta) decreases strictly in beta, so the root is unique; valid
    for energy strictly inside (E_min, E_max).
    """
    _require_nondegenerate(h)
    if not h.e_min < energy < h.e_max:
        raise DomainError(
            "energy-out-of-range", f"energy {energy} not strictly inside ({h.e_min}, {h.e_max})"
        )
    f = lambda b: _mean_energy(h, b) - energy
    f0 = f(0.0)
    if f0 == 0.0:
        return 0.0
    return _solve_decreasing(h, f, positive_side=f0 > 0.0)


def beta_from_entropy(h: HamiltonianSpec, entropy: float, branch: str = "positive") -> float:
    """Invert S(tau_beta) = entropy on one sign branch of beta.

    The positive branch runs from S = log(dim) at beta=0 down to the
    ground plateau log(g_ground); the negative branch mirrors it toward
    the top plateau. Entropy at or below the branch floor raises a domain
    error (the caller decides what the plateau means for it).
    """
    if branch not in ("positive", "negative"):
        raise ValidationError("bad-branch", f"branch must be 'positive' or 'negative', got {branch!r}")
    _require_nondegenerate(h)
    floor = math.log(h.g_ground if branch == "positive" else h.g_top)
    if entropy > h.log_dim + 1e-12:
        raise DomainError("entropy-out-of-range", f"entropy {entropy} exceeds log d = {h.log_dim}")
    if entropy <= floor:
        raise DomainError(
            "entropy-below-plateau",
            f"entropy {entropy} is at or below the {branch}-branch floor log g = {floor}",
        )
    if entropy >= h.log_dim:
        return 0.0
    # entropy falls off monotonically on either side of beta = 0; fold the
    # negative branch onto the positive one and solve there
    sign = 1.0 if branch == "positive" else -1.0
    f = lambda b: _entropy(h, sign * b) - entropy
    return sign * _solve_decreasing(h, f, positive_side=True)


def energy_variance(h: HamiltonianSpec, beta: float) -> float:
    """Variance of energy in the thermal state; equals -dE/dbeta."""
    if not math.isfinite(beta):
        raise ValidationError("bad-beta", "beta must be finite")
    cap = beta_cap(h)
    beta = min(max(beta, -cap), cap)
    energies = h.energies()
    w = -beta * energies
    m = float(w.max())
    weights = h.degeneracies() * np.exp(w - m)
    p = weights / weights.sum()
    mean = float(p @ energies)
    return max(0.0, float(p @ (energies - mean) ** 2))
