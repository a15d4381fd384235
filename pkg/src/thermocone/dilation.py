"""Energy-preserving dilation of an arbitrary unitary at small scale.

A unitary that moves a state between energy levels cannot itself commute
with the Hamiltonian, but padding the system with an ancilla that is
wide enough in energy (its levels carry a sumset M -/+ L of the system's
level set L) and starts in a uniform superposition makes an
energy-preserving partial isometry act like the original unitary up to a
deficit factor |M| / |M -/+ L|:

  incoherent target:  V = sum_{h in M} P_a U P_b (x) |h - a><h - b|
  incoherent source:  V = sum_{h in M} P_a U P_b (x) |h + b><h + a|

V is completed to a genuine unitary block by block in total energy (the
polar factor of each block), so the resulting channel is trace
preserving and exactly energy preserving. When neither endpoint is free
of energy coherences, the map is composed through an energy-diagonal
intermediate carrying the source spectrum, doubling the deficit budget.
Distances here are trace distances (half the trace norm).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, ValidationError
from .numerics import as_hermitian_matrix
from .sumsets import LevelSet, minkowski_diff, minkowski_sum
from .system import HamiltonianSpec, QuantumState

__all__ = ["DilationReport", "build_energy_preserving_dilation"]

MAX_JOINT_DIMENSION = 256
_OFFBLOCK_TOL = 1e-12


@dataclass(frozen=True)
class DilationReport:
    """What the constructed dilation actually achieved.

    ``commutation_residual`` is the largest matrix element of the partial
    isometry connecting joint basis states of different total energy
    (exact rational bookkeeping, so structurally zero).
    ``output_distance`` is the trace distance between the channel output
    and the target state; ``deficit_factors`` are the per-step weights
    |M| / |M -/+ L| that passed through the isometry itself.
    """

    total_dimension: int
    commutation_residual: float
    output_distance: float
    delta: float
    case: str
    deficit_factors: tuple[float, ...]


def _trace_distance(x: np.ndarray) -> float:
    return 0.5 * float(np.abs(np.linalg.eigvalsh(0.5 * (x + x.conj().T))).sum())


def _density_matrix(state: QuantumState, h: HamiltonianSpec, name: str) -> np.ndarray:
    if state.matrix is None:
        raise ValidationError("need-matrix-form", f"{name} must be given as a density matrix")
    a = as_hermitian_matrix(state.matrix)
    if a.shape[0] != h.dim:
        raise ValidationError("dimension-mismatch", f"{name} dimension {a.shape[0]} != {h.dim}")
    if abs(float(a.trace().real) - 1.0) > 1e-10:
        raise ValidationError("bad-trace", f"{name} must have unit trace")
    if float(np.linalg.eigvalsh(a).min()) < -1e-10:
        raise ValidationError("negative-eigenvalue", f"{name} is not positive semidefinite")
    return a


def _is_energy_incoherent(a: np.ndarray, level_of: np.ndarray) -> bool:
    offblock = np.not_equal.outer(level_of, level_of)
    return float(np.abs(a[offblock]).max(initial=0.0)) <= _OFFBLOCK_TOL


def _apply_case(
    u: np.ndarray,
    state: np.ndarray,
    levels: np.ndarray,
    anc: LevelSet,
    m_values: set,
    case: str,
) -> tuple[np.ndarray, float, float]:
    """Run one single-case step.

    Returns (channel output through the completed unitary, off-block
    residual of the isometry, weight that passed through the isometry).
    """
    d = u.shape[0]
    a_dim = len(anc)
    anc_index = {v: i for i, v in enumerate(anc.values)}
    joint = d * a_dim
    vt = np.zeros((joint, joint), dtype=complex)
    for j in range(d):
        for i in range(d):
            if u[i, j] == 0.0:
                continue
            for a_in, val_in in enumerate(anc.values):
                if case == "incoherent-target":
                    hh = val_in + levels[j]
                    val_out = hh - levels[i]
                else:
                    hh = val_in - levels[i]
                    val_out = hh + levels[j]
                if hh not in m_values:
                    continue
                vt[i * a_dim + anc_index[val_out], j * a_dim + a_in] = u[i, j]

    # exact total-energy bookkeeping, then residual and blockwise completion
    total = [levels[i] + anc.values[a] for i in range(d) for a in range(a_dim)]
    codes: dict = {}
    code_arr = np.array([codes.setdefault(t, len(codes)) for t in total])
    residual = float(np.abs(vt[np.not_equal.outer(code_arr, code_arr)]).max(initial=0.0))

    ut = np.zeros_like(vt)
    for code in range(len(codes)):
        idx = np.flatnonzero(code_arr == code)
        block = vt[np.ix_(idx, idx)]
        ub, _s, vhb = np.linalg.svd(block)
        ut[np.ix_(idx, idx)] = ub @ vhb

    psi = np.full(a_dim, 1.0 / math.sqrt(a_dim))
    omega = np.kron(state, np.outer(psi, psi))
    out_joint = ut @ omega @ ut.conj().T
    output = np.einsum("iaja->ij", out_joint.reshape(d, a_dim, d, a_dim))
    passed = float((vt @ omega @ vt.conj().T).trace().real)
    return output, residual, passed


def build_energy_preserving_dilation(
    h: HamiltonianSpec,
    unitary,
    rho: QuantumState,
    sigma: QuantumState,
    m_levels: LevelSet,
    delta: float,
) -> DilationReport:
    """Replace ``unitary`` (which must carry rho to within ``delta`` of
    sigma in trace distance) by an energy-preserving unitary on system
    plus ancilla, and measure what the resulting channel does.

    The level sets must satisfy |M + L| <= (1+delta)|M|,
    |M - L| <= (1+delta)|M| and max|L| <= max|M|; the achieved output
    distance is then at most 2*delta for a single-case run and 4*delta
    for the composed general case.
    """
    if not 0.0 < delta < 1.0:
        raise ValidationError("bad-delta", f"delta must be in (0, 1), got {delta}")
    u = np.asarray(unitary, dtype=complex)
    d = h.dim
    if u.shape != (d, d):
        raise ValidationError("dimension-mismatch", f"unitary shape {u.shape} != ({d}, {d})")
    if float(np.abs(u.conj().T @ u - np.eye(d)).max()) > 1e-10:
        raise ValidationError("not-unitary", "unitary fails U^dag U = 1")

    rho_m = _density_matrix(rho, h, "rho")
    sigma_m = _density_matrix(sigma, h, "sigma")
    mapped = u @ rho_m @ u.conj().T
    err = _trace_distance(mapped - sigma_m)
    if err > delta + 1e-12:
        raise DomainError(
            "precondition-distance",
            f"U rho U^dag is {err:.3g} from sigma in trace distance, above delta = {delta}",
        )

    level_set = LevelSet.from_energies(e for e, _ in h.levels)
    if level_set.magnitude() > m_levels.magnitude():
        raise DomainError("level-magnitude", "need max|L| <= max|M|")
    m_plus = minkowski_sum(m_levels, level_set)
    m_minus = minkowski_diff(m_levels, level_set)
    for name, grown in (("M+L", m_plus), ("M-L", m_minus)):
        if len(grown) > (1.0 + delta) * len(m_levels):
            raise DomainError(
                "sumset-growth",
                f"|{name}| = {len(grown)} exceeds (1+delta)|M| = {(1 + delta) * len(m_levels):.6g}",
            )
    for anc in (m_plus, m_minus):
        if d * len(anc) > MAX_JOINT_DIMENSION:
            raise DomainError(
                "dimension-cap", f"joint dimension {d * len(anc)} exceeds {MAX_JOINT_DIMENSION}"
            )

    levels = np.array([Fraction(e) for e in h.expanded_energies()], dtype=object)
    m_values = set(m_levels.values)
    sigma_flat = _is_energy_incoherent(sigma_m, levels)
    rho_flat = _is_energy_incoherent(rho_m, levels)

    if sigma_flat:
        out, residual, passed = _apply_case(u, rho_m, levels, m_minus, m_values, "incoherent-target")
        case, factors = "incoherent-target", (passed,)
        dims = d * len(m_minus)
    elif rho_flat:
        out, residual, passed = _apply_case(u, rho_m, levels, m_plus, m_values, "incoherent-source")
        case, factors = "incoherent-source", (passed,)
        dims = d * len(m_plus)
    else:
        # route through an energy-diagonal intermediate with rho's spectrum
        w, v = np.linalg.eigh(rho_m)
        mid, res1, f1 = _apply_case(v.conj().T, rho_m, levels, m_minus, m_values, "incoherent-target")
        out, res2, f2 = _apply_case(u @ v, mid, levels, m_plus, m_values, "incoherent-source")
        residual = max(res1, res2)
        case, factors = "composed", (f1, f2)
        dims = d * max(len(m_minus), len(m_plus))

    return DilationReport(
        total_dimension=dims,
        commutation_residual=residual,
        output_distance=_trace_distance(out - sigma_m),
        delta=delta,
        case=case,
        deficit_factors=factors,
    )
