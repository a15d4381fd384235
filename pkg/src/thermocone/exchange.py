"""State conversion against a finite thermal reservoir and a battery:
reservoir sizing, effective temperature, work, heat, erasure cost, the
infinite-bath limit, and engine/refrigerator efficiencies.

The reservoir holds m copies of a thermal state whose inverse
temperature moves from beta1 to beta2 during the conversion; the battery
holds pure extreme-energy states. Entropy bookkeeping fixes m, energy
bookkeeping fixes the battery count, and everything is reported per copy
of the converted system. The chord slope of the thermal curve between
the two reservoir points acts as an effective inverse temperature:

    beta_eff = (S(tau_b1) - S(tau_b2)) / (E(tau_b1) - E(tau_b2))

    W = (E(rho) - E(sigma)) - beta_eff^-1 (S(rho) - S(sigma))
    Q = beta_eff^-1 (S(sigma) - S(rho))

so Q - W = E(sigma) - E(rho) (first law) holds identically, and in the
limit beta2 -> beta1 both reduce to the usual free-energy expressions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, ValidationError
from .system import HamiltonianSpec, Macrostate, QuantumState, macrostate_of
from .thermal import energy_variance, thermal_point

__all__ = [
    "ExchangeSpec",
    "ExchangeResult",
    "ReservoirSizing",
    "EnginePerformance",
    "beta_eff",
    "reservoir_ratio",
    "work_heat",
    "erasure_work",
    "reservoir_size_for_epsilon",
    "engine_efficiencies",
]

_NEAR_EQUAL_BETA = 1e-6


@dataclass(frozen=True)
class ExchangeSpec:
    """A conversion rho -> sigma against a reservoir going beta1 -> beta2."""

    hamiltonian: HamiltonianSpec
    rho: QuantumState
    sigma: QuantumState
    beta1: float
    beta2: float


@dataclass(frozen=True)
class ExchangeResult:
    """Per-copy bookkeeping of a finite-reservoir conversion.

    ``ell_over_n`` is the battery size W/(E_max - E_min), kept signed;
    ``battery_reversed`` flags the work-injection direction (battery runs
    from its top state down to the ground state).
    """

    m_over_n: float
    ell_over_n: float
    beta_eff: float
    work: float
    heat: float
    battery_reversed: bool


@dataclass(frozen=True)
class ReservoirSizing:
    """Reservoir size per system copy for a small temperature change."""

    leading_term: float
    exact_ratio: float
    epsilon: float


@dataclass(frozen=True)
class EnginePerformance:
    eta_engine: float
    eta_refrigerator: float
    work: float
    q_hot: float
    q_cold: float


def beta_eff(h: HamiltonianSpec, beta1: float, beta2: float) -> float:
    """Chord slope of the thermal curve between beta1 and beta2.

    Symmetric in its arguments and strictly between them; for nearly
    coincident betas the 0/0 quotient is replaced by the tangent slope at
    the midpoint (the slope of the curve at beta is beta itself).
    """
    if not (math.isfinite(beta1) and math.isfinite(beta2)):
        raise ValidationError("bad-beta", "reservoir betas must be finite")
    if h.e_max == h.e_min:
        raise DomainError("degenerate-hamiltonian", "constant Hamiltonian has no thermal curve")
    if abs(beta1 - beta2) < _NEAR_EQUAL_BETA * (1.0 + abs(beta1)):
        return 0.5 * (beta1 + beta2)
    p1 = thermal_point(h, beta1)
    p2 = thermal_point(h, beta2)
    return (p1.entropy - p2.entropy) / (p1.energy - p2.energy)


def _macrostates(spec: ExchangeSpec) -> tuple[Macrostate, Macrostate]:
    return (
        macrostate_of(spec.rho, spec.hamiltonian),
        macrostate_of(spec.sigma, spec.hamiltonian),
    )


def _entropy_drops(spec: ExchangeSpec, x_rho: Macrostate, x_sigma: Macrostate) -> tuple[float, float]:
    """(S(sigma)-S(rho), S(tau_b1)-S(tau_b2)); raises on inconsistent signs."""
    ds_system = x_sigma.entropy - x_rho.entropy
    p1 = thermal_point(spec.hamiltonian, spec.beta1)
    p2 = thermal_point(spec.hamiltonian, spec.beta2)
    ds_reservoir = p1.entropy - p2.entropy
    if ds_system == 0.0:
        return 0.0, ds_reservoir
    if ds_reservoir == 0.0:
        raise ValidationError(
            "equal-reservoir-betas",
            "beta1 and beta2 give equal reservoir entropy but the system entropy changes; "
            "a finite reservoir cannot absorb the difference",
        )
    if (ds_system > 0) != (ds_reservoir > 0):
        raise DomainError(
            "direction-mismatch",
            "reservoir betas are ordered against the entropy flow: the reservoir must take up "
            f"the system's entropy change ({ds_system:+.6g}), which moves its own entropy the "
            "same way; swap beta1 and beta2",
        )
    return ds_system, ds_reservoir


def reservoir_ratio(spec: ExchangeSpec) -> float:
    """Reservoir copies per system copy: m/n = dS_system / dS_reservoir."""
    x_rho, x_sigma = _macrostates(spec)
    ds_system, ds_reservoir = _entropy_drops(spec, x_rho, x_sigma)
    if ds_system == 0.0:
        return 0.0
    return ds_system / ds_reservoir


def work_heat(spec: ExchangeSpec) -> ExchangeResult:
    """Work extracted and heat provided per copy, with the reservoir and
    battery sizes that realize the conversion."""
    x_rho, x_sigma = _macrostates(spec)
    ds_system, ds_reservoir = _entropy_drops(spec, x_rho, x_sigma)
    m_over_n = ds_system / ds_reservoir if ds_system != 0.0 else 0.0
    b_eff = beta_eff(spec.hamiltonian, spec.beta1, spec.beta2)
    work = (x_rho.energy - x_sigma.energy) - (x_rho.entropy - x_sigma.entropy) / b_eff
    heat = (x_sigma.entropy - x_rho.entropy) / b_eff
    span = spec.hamiltonian.e_max - spec.hamiltonian.e_min
    return ExchangeResult(
        m_over_n=m_over_n,
        ell_over_n=work / span,
        beta_eff=b_eff,
        work=work,
        heat=heat,
        battery_reversed=work < 0.0,
    )


def erasure_work(
    h: HamiltonianSpec, rho: QuantumState, sigma: QuantumState, beta1: float, beta2: float
) -> float:
    """Work cost of resetting a memory at fixed energy against a finite
    reservoir: beta_eff^-1 (S(rho) - S(sigma)).

    For a maximally mixed to pure reset this is beta_eff^-1 log d, and it
    converges to the familiar beta^-1 log d as the reservoir grows.
    """
    x_rho = macrostate_of(rho, h)
    x_sigma = macrostate_of(sigma, h)
    if abs(x_rho.energy - x_sigma.energy) > 1e-9 * (h.e_max - h.e_min):
        raise DomainError(
            "energy-mismatch",
            f"erasure requires equal energies, got {x_rho.energy} vs {x_sigma.energy}",
        )
    return (x_rho.entropy - x_sigma.entropy) / beta_eff(h, beta1, beta2)


def reservoir_size_for_epsilon(
    h: HamiltonianSpec, rho: QuantumState, sigma: QuantumState, beta1: float, epsilon: float
) -> ReservoirSizing:
    """Reservoir size needed so its temperature only moves by epsilon:
    leading term (S(sigma)-S(rho)) / (beta1 Var(H) epsilon), returned
    alongside the exact ratio at beta2 = beta1 + epsilon."""
    if epsilon == 0.0:
        raise ValidationError("bad-epsilon", "epsilon must be nonzero")
    if beta1 == 0.0:
        raise DomainError("bad-beta", "the small-epsilon expansion degenerates at beta1 = 0")
    var = energy_variance(h, beta1)
    if var <= 0.0:
        raise DomainError("zero-variance", "energy variance vanishes; no reservoir response")
    x_rho = macrostate_of(rho, h)
    x_sigma = macrostate_of(sigma, h)
    ds_system = x_sigma.entropy - x_rho.entropy
    if ds_system == 0.0:
        return ReservoirSizing(0.0, 0.0, epsilon)
    spec = ExchangeSpec(h, rho, sigma, beta1, beta1 + epsilon)
    exact = reservoir_ratio(spec)
    return ReservoirSizing(ds_system / (beta1 * var * epsilon), exact, epsilon)


def engine_efficiencies(
    h: HamiltonianSpec,
    beta_cold: float,
    beta_less_cold: float,
    beta_less_hot: float,
    beta_hot: float,
) -> EnginePerformance:
    """Best efficiency of any engine (or refrigerator) run between two
    finite reservoirs that assimilate from (cold, hot) to (less-cold,
    less-hot).

    Both efficiencies depend only on the two chord slopes and are
    strictly below their Carnot values; they approach Carnot as the
    temperature changes of the reservoirs shrink.
    """
    if not beta_cold > beta_less_cold > beta_less_hot > beta_hot:
        raise DomainError(
            "bad-ordering",
            "need beta_cold > beta_less_cold > beta_less_hot > beta_hot, got "
            f"({beta_cold}, {beta_less_cold}, {beta_less_hot}, {beta_hot})",
        )
    if beta_hot <= 0.0:
        raise DomainError("bad-ordering", "reservoir temperatures must be positive (beta_hot > 0)")
    b_c = beta_eff(h, beta_cold, beta_less_cold)
    b_h = beta_eff(h, beta_hot, beta_less_hot)
    cold_now = thermal_point(h, beta_cold)
    cold_later = thermal_point(h, beta_less_cold)
    q_hot = (cold_later.entropy - cold_now.entropy) / b_h
    work = (cold_now.energy - cold_later.energy) - (cold_now.entropy - cold_later.entropy) / b_h
    q_cold = cold_later.energy - cold_now.energy
    return EnginePerformance(
        eta_engine=1.0 - b_h / b_c,
        eta_refrigerator=1.0 / (b_c / b_h - 1.0),
        work=work,
        q_hot=q_hot,
        q_cold=q_cold,
    )
