import math

import numpy as np
import pytest

from thermocone import (
    DomainError,
    HamiltonianSpec,
    beta_cap,
    beta_from_energy,
    beta_from_entropy,
    energy_variance,
    thermal_point,
)

import frozen_values as fv
from conftest import random_hamiltonian

BETAS = (-2.0, -1.0, -0.5, 0.5, 1.0, 2.0)


class TestThermalPoint:
    def test_infinite_temperature(self, qubit):
        tp = thermal_point(qubit, 0.0)
        assert tp.energy == pytest.approx(0.5)
        assert tp.entropy == pytest.approx(math.log(2))

    def test_zero_temperature(self, qubit):
        tp = thermal_point(qubit, math.inf)
        assert (tp.energy, tp.entropy) == (0.0, 0.0)

    def test_negative_zero_temperature(self, qubit):
        tp = thermal_point(qubit, -math.inf)
        assert (tp.energy, tp.entropy) == (1.0, 0.0)

    def test_unit_beta_against_oracle(self, qubit):
        tp = thermal_point(qubit, 1.0)
        assert tp.energy == pytest.approx(fv.QUBIT_E_BETA1, abs=1e-12)
        assert tp.entropy == pytest.approx(fv.QUBIT_S_BETA1, abs=1e-12)
        assert tp.log_z == pytest.approx(fv.QUBIT_LOGZ_BETA1, abs=1e-12)

    def test_degenerate_plateaus(self):
        h = HamiltonianSpec(((0.0, 2), (1.0, 3)))
        assert thermal_point(h, math.inf).entropy == pytest.approx(math.log(2))
        assert thermal_point(h, -math.inf).entropy == pytest.approx(math.log(3))

    def test_beyond_cap_returns_plateau(self, qubit):
        cap = beta_cap(qubit)
        tp = thermal_point(qubit, cap * 2)
        assert (tp.energy, tp.entropy) == (0.0, 0.0)

    def test_identity_fundamental_relation(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            h = random_hamiltonian(rng, degenerate=True)
            for beta in BETAS:
                tp = thermal_point(h, beta)
                assert tp.entropy == pytest.approx(beta * tp.energy + tp.log_z, abs=1e-10)
                assert 0.0 <= tp.entropy <= h.log_dim + 1e-12

    def test_entropy_maximal_at_zero_beta(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            h = random_hamiltonian(rng, degenerate=True)
            assert thermal_point(h, 0.0).entropy == h.log_dim
            for beta in BETAS:
                assert thermal_point(h, beta).entropy <= h.log_dim

    def test_constant_hamiltonian(self):
        h = HamiltonianSpec(((0.7, 3),))
        tp = thermal_point(h, 12.0)
        assert tp.energy == 0.7
        assert tp.entropy == pytest.approx(math.log(3))


class TestTangentSlope:
    def test_slope_equals_beta(self, qubit):
        rng = np.random.default_rng(6)
        hams = [qubit] + [random_hamiltonian(rng) for _ in range(5)]
        h_step = 1e-4
        for h in hams:
            for beta in BETAS:
                hi = thermal_point(h, beta + h_step)
                lo = thermal_point(h, beta - h_step)
                slope = (hi.entropy - lo.entropy) / (hi.energy - lo.energy)
                assert slope == pytest.approx(beta, abs=1e-3)


class TestInverseProblems:
    def test_energy_examples(self, qubit):
        assert beta_from_energy(qubit, 0.5) == pytest.approx(0.0, abs=1e-10)
        assert beta_from_energy(qubit, 0.25) == pytest.approx(math.log(3), abs=1e-10)
        assert beta_from_energy(qubit, fv.QUBIT_E_BETA1) == pytest.approx(1.0, abs=1e-8)

    def test_energy_out_of_range(self, qubit):
        for energy in (0.0, 1.0, -0.2, 1.3):
            with pytest.raises(DomainError):
                beta_from_energy(qubit, energy)

    def test_constant_hamiltonian_rejected(self):
        h = HamiltonianSpec(((1.0, 4),))
        with pytest.raises(DomainError):
            beta_from_energy(h, 1.0)

    def test_entropy_examples(self, qubit):
        assert beta_from_entropy(qubit, math.log(2), "positive") == pytest.approx(0.0, abs=1e-10)
        assert beta_from_entropy(qubit, math.log(2), "negative") == pytest.approx(0.0, abs=1e-10)
        assert beta_from_entropy(qubit, fv.QUBIT_S_BETA1, "positive") == pytest.approx(1.0, abs=1e-8)
        assert beta_from_entropy(qubit, fv.QUBIT_S_BETA1, "negative") == pytest.approx(-1.0, abs=1e-8)

    def test_entropy_below_plateau(self):
        h = HamiltonianSpec(((0.0, 2), (1.0, 1)))
        with pytest.raises(DomainError):
            beta_from_entropy(h, 0.5 * math.log(2), "positive")

    def test_round_trips(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            h = random_hamiltonian(rng)
            for beta in BETAS:
                tp = thermal_point(h, beta)
                assert beta_from_energy(h, tp.energy) == pytest.approx(beta, abs=1e-8)
                branch = "positive" if beta > 0 else "negative"
                assert beta_from_entropy(h, tp.entropy, branch) == pytest.approx(beta, abs=1e-8)


class TestEnergyVariance:
    def test_qubit_values(self, qubit):
        assert energy_variance(qubit, 0.0) == pytest.approx(0.25, abs=1e-14)
        assert energy_variance(qubit, 1.0) == pytest.approx(fv.QUBIT_VAR_BETA1, abs=1e-12)

    def test_constant_hamiltonian(self):
        assert energy_variance(HamiltonianSpec(((2.0, 5),)), 3.0) == 0.0

    def test_matches_energy_derivative(self):
        rng = np.random.default_rng(10)
        h_step = 1e-4
        for _ in range(10):
            h = random_hamiltonian(rng, degenerate=True)
            for beta in BETAS:
                hi = thermal_point(h, beta + h_step)
                lo = thermal_point(h, beta - h_step)
                derivative = -(hi.energy - lo.energy) / (2 * h_step)
                assert derivative == pytest.approx(energy_variance(h, beta), rel=1e-4)
