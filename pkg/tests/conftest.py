import numpy as np
import pytest

from thermocone import HamiltonianSpec


@pytest.fixture
def qubit() -> HamiltonianSpec:
    return HamiltonianSpec(((0.0, 1), (1.0, 1)))


def random_hamiltonian(rng: np.random.Generator, d_min: int = 2, d_max: int = 5,
                       degenerate: bool = False) -> HamiltonianSpec:
    """A random strictly-ascending level set, optionally with degeneracies."""
    n_levels = int(rng.integers(d_min, d_max + 1))
    energies = np.sort(rng.uniform(-1.0, 2.0, size=n_levels))
    while np.min(np.diff(energies), initial=1.0) < 1e-3:
        energies = np.sort(rng.uniform(-1.0, 2.0, size=n_levels))
    if degenerate:
        degs = rng.integers(1, 3, size=n_levels)
    else:
        degs = np.ones(n_levels, dtype=int)
    return HamiltonianSpec(tuple((float(e), int(g)) for e, g in zip(energies, degs)))


def well_gapped_hamiltonian(rng: np.random.Generator) -> HamiltonianSpec:
    """2 or 3 levels with every gap >= 0.35 of the span, so a beta grid on
    [-50, 50]/span resolves the whole thermal boundary."""
    e0 = float(rng.uniform(-1.0, 1.0))
    span = float(rng.uniform(0.5, 2.0))
    if rng.integers(2) == 0:
        energies = [e0, e0 + span]
    else:
        first = float(rng.uniform(0.35, 0.65)) * span
        energies = [e0, e0 + first, e0 + span]
    degs = rng.integers(1, 3, size=len(energies))
    return HamiltonianSpec(tuple((e, int(g)) for e, g in zip(energies, degs)))


def random_density_matrix(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Ginibre-induced random density matrix."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))
