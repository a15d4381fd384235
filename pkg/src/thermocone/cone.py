"""The convex cone of extensive macrostates (total energy, total
entropy, amount), its ordering, and optimal conversion rates.

The cone is the homogenization of the energy-entropy diagram: a point is
a member iff its entropy coordinate is nonnegative and every athermality
functional A_beta is nonnegative on it. One state converts into another
(allowing unentangled junk to be discarded) exactly when the difference
of their points is a member, and the best conversion rate is computed
two independent ways:

* ``rate_bisect``: bisection on membership of y_rho - r*y_sigma, i.e.
  push r up to where the segment leaves the cone (authoritative);
* ``rate_monotone``: the smallest ratio of an additive monotone
  (entropy, the A_beta family, and the two energy-edge functionals) on
  rho versus sigma, skipping zero denominators (cross-check).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .diagram import DEFAULT_BOUNDARY_TOL, Verdict, diagram_contains
from .errors import DomainError
from .numerics import minimize_scalar
from .system import ConePoint, HamiltonianSpec, Macrostate
from .thermal import beta_cap, log_partition

__all__ = ["ConePoint", "RateResult", "cone_contains", "edge_monotones", "dominates", "r_max"]

_TANH_GRID_SIZE = 2048
_TAIL_GRID_SIZE = 256


@dataclass(frozen=True)
class RateResult:
    """Outcome of the two rate computations.

    ``argmin_beta`` identifies the binding monotone: a finite beta for an
    athermality facet, +inf / -inf for the ground / top energy edges, and
    None when the entropy ratio binds. ``agreement_gap`` is the absolute
    difference between the two algorithms.
    """

    rate_bisect: float
    rate_monotone: float
    argmin_beta: Optional[float]
    agreement_gap: float


def cone_contains(h: HamiltonianSpec, y: ConePoint, tol: float = DEFAULT_BOUNDARY_TOL) -> Verdict:
    """Membership verdict for an extensive point.

    Points with size within ``tol`` of zero are members only if they are
    the apex; otherwise the point is normalized and tested against the
    diagram.
    """
    if y.size < -tol:
        return Verdict.OUTSIDE
    if abs(y.size) <= tol:
        if abs(y.entropy) <= tol and abs(y.energy) <= tol:
            return Verdict.INSIDE
        return Verdict.OUTSIDE
    return diagram_contains(h, Macrostate(y.energy / y.size, y.entropy / y.size), tol)


def edge_monotones(h: HamiltonianSpec, y: ConePoint) -> tuple[float, float]:
    """The two limiting linear monotones (energy above the ground line,
    energy below the top line); nonnegative on cone members."""
    return (y.energy - y.size * h.e_min, y.size * h.e_max - y.energy)


def dominates(
    h: HamiltonianSpec, y_rho: ConePoint, y_sigma: ConePoint, tol: float = DEFAULT_BOUNDARY_TOL
) -> bool:
    """Asymptotic ordering: the difference of the points is a cone member."""
    return cone_contains(h, y_rho - y_sigma, tol).is_member


def _athermality_grid(h: HamiltonianSpec, size: int = _TANH_GRID_SIZE) -> np.ndarray:
    """Beta samples covering (-inf, inf): a tanh-uniform core grid plus
    log-spaced tails out to the evaluation cap."""
    span = h.e_max - h.e_min
    if span <= 0:
        return np.array([0.0])
    t = np.linspace(-1.0, 1.0, size + 2)[1:-1]
    core = np.arctanh(t) * (2.0 / span)
    cap = beta_cap(h)
    tail = np.geomspace(6.0 / span, cap, max(8, size // 8))
    return np.unique(np.concatenate([core, [0.0], tail, -tail]))


def _slack(h: HamiltonianSpec, y: ConePoint, betas: np.ndarray) -> np.ndarray:
    return betas * y.energy - y.entropy + y.size * log_partition(h, betas)


def r_max(
    h: HamiltonianSpec,
    y_rho: ConePoint,
    y_sigma: ConePoint,
    tol: float = 1e-8,
    grid_size: int = _TANH_GRID_SIZE,
) -> RateResult:
    """Maximal conversion rate from rho to sigma, by both algorithms."""
    scale = max(1.0, abs(y_rho.size), abs(y_sigma.size))
    if max(abs(y_sigma.energy), abs(y_sigma.entropy), abs(y_sigma.size)) <= 1e-15 * scale:
        raise DomainError("zero-target", "target point is zero; the rate is unbounded")
    for name, y in (("source", y_rho), ("target", y_sigma)):
        if not cone_contains(h, y).is_member:
            raise DomainError("not-a-member", f"{name} point {y} is not a cone member")

    floor = 1e-12 * scale
    candidates: list[tuple[float, Optional[float]]] = []
    if y_sigma.entropy > floor:
        candidates.append((max(0.0, y_rho.entropy) / y_sigma.entropy, None))
    g_rho, t_rho = edge_monotones(h, y_rho)
    g_sigma, t_sigma = edge_monotones(h, y_sigma)
    if g_sigma > floor * (1.0 + h.e_max - h.e_min):
        candidates.append((max(0.0, g_rho) / g_sigma, math.inf))
    if t_sigma > floor * (1.0 + h.e_max - h.e_min):
        candidates.append((max(0.0, t_rho) / t_sigma, -math.inf))

    betas = _athermality_grid(h, grid_size)
    num = _slack(h, y_rho, betas)
    den = _slack(h, y_sigma, betas)
    ok = den > floor
    if ok.any():
        ratios = np.where(ok, np.maximum(num, 0.0) / np.where(ok, den, 1.0), np.inf)
        i = int(np.argmin(ratios))

        def ratio_at(beta: float) -> float:
            n = float(_slack(h, y_rho, np.array([beta]))[0])
            d = float(_slack(h, y_sigma, np.array([beta]))[0])
            return max(n, 0.0) / d if d > floor else math.inf

        lo = betas[max(0, i - 1)]
        hi = betas[min(betas.size - 1, i + 1)]
        if lo < hi:
            cell = [lo, betas[i], hi] if lo < betas[i] < hi else [lo, 0.5 * (lo + hi), hi]
            b_best, r_best = minimize_scalar(
                ratio_at, cell, refine_tol=1e-11 * max(1.0, abs(lo), abs(hi))
            )
        else:
            b_best, r_best = float(betas[i]), float(ratios[i])
        if math.isfinite(r_best):
            candidates.append((r_best, b_best))

    if not candidates:
        candidates.append((y_rho.size / y_sigma.size, None))
    rate_monotone, argmin_beta = min(candidates, key=lambda c: c[0])

    # bisection on membership of y_rho - r*y_sigma
    hi0 = min(y_rho.size / y_sigma.size, *(r for r, _ in candidates))
    if hi0 <= 0.0:
        rate_bisect = 0.0
    else:
        member_tol = 1e-12 * scale
        lo_r, hi_r = 0.0, hi0 * (1.0 + 1e-3) + 1e-12
        for _ in range(60):
            if not cone_contains(h, y_rho - y_sigma.scaled(hi_r), member_tol).is_member:
                break
            hi_r *= 2.0
        while hi_r - lo_r > tol * max(1.0, lo_r):
            mid = 0.5 * (lo_r + hi_r)
            if cone_contains(h, y_rho - y_sigma.scaled(mid), member_tol).is_member:
                lo_r = mid
            else:
                hi_r = mid
        rate_bisect = lo_r

    return RateResult(
        rate_bisect=rate_bisect,
        rate_monotone=rate_monotone,
        argmin_beta=argmin_beta,
        agreement_gap=abs(rate_bisect - rate_monotone),
    )
