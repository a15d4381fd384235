"""Acceptance suite: one test per criterion, each printing a PASS line
(visible with ``pytest -s``). Expected values are frozen from the
independent high-precision oracle in frozen_values.py / test_oracles.py.
"""

import math

import numpy as np
import pytest

import thermocone as tc

import frozen_values as fv
from conftest import random_density_matrix, random_hamiltonian, well_gapped_hamiltonian

QUBIT = tc.HamiltonianSpec(((0.0, 1), (1.0, 1)))


def _passed(label):
    print(f"[acceptance] {label}: PASS")


def _random_member_point(rng, h):
    x = tc.macrostate_of(tc.QuantumState.from_matrix(random_density_matrix(rng, h.dim)), h)
    n = float(rng.uniform(0.2, 3.0))
    return tc.ConePoint(n * x.energy, n * x.entropy, n)


def test_01_tangent_slope_matches_beta():
    rng = np.random.default_rng(101)
    hams = [QUBIT] + [random_hamiltonian(rng, d_min=2, d_max=5) for _ in range(5)]
    step = 1e-4
    for h in hams:
        for beta in (-2.0, -1.0, -0.5, 0.5, 1.0, 2.0):
            hi = tc.thermal_point(h, beta + step)
            lo = tc.thermal_point(h, beta - step)
            slope = (hi.entropy - lo.entropy) / (hi.energy - lo.energy)
            assert slope == pytest.approx(beta, abs=1e-3)
    _passed("1 tangent slope dS/dE = beta")


def test_02_beta_eff_value_symmetry_betweenness():
    assert tc.beta_eff(QUBIT, 1.0, 2.0) == pytest.approx(fv.BETA_EFF_1_2, abs=1e-5)
    rng = np.random.default_rng(102)
    checked = 0
    while checked < 100:
        h = random_hamiltonian(rng, degenerate=True)
        b1, b2 = sorted(map(float, rng.uniform(-3.0, 3.0, size=2)))
        if b2 - b1 < 1e-4:
            continue
        eff = tc.beta_eff(h, b1, b2)
        assert eff == tc.beta_eff(h, b2, b1)
        assert b1 < eff < b2
        checked += 1
    _passed("2 beta_eff value, symmetry, betweenness")


def test_03_first_law_and_athermality_form():
    rng = np.random.default_rng(103)
    checked = 0
    while checked < 100:
        h = random_hamiltonian(rng, degenerate=True)
        rho = tc.QuantumState.from_matrix(random_density_matrix(rng, h.dim))
        sigma = tc.QuantumState.from_matrix(random_density_matrix(rng, h.dim))
        x_rho, x_sigma = tc.macrostate_of(rho, h), tc.macrostate_of(sigma, h)
        if abs(x_rho.entropy - x_sigma.entropy) < 1e-6:
            continue
        b1, b2 = sorted(map(float, rng.uniform(0.1, 3.0, size=2)))
        if b2 - b1 < 1e-3:
            continue
        if x_sigma.entropy < x_rho.entropy:
            b1, b2 = b2, b1
        res = tc.work_heat(tc.ExchangeSpec(h, rho, sigma, b1, b2))
        assert res.heat - res.work == pytest.approx(x_sigma.energy - x_rho.energy, abs=1e-12)
        via_athermality = (
            tc.athermality(h, x_rho, res.beta_eff) - tc.athermality(h, x_sigma, res.beta_eff)
        ) / res.beta_eff
        assert res.work == pytest.approx(via_athermality, abs=1e-10)
        checked += 1
    _passed("3 first law and athermality work form")


def test_04_rate_cross_validation():
    res = tc.r_max(QUBIT, tc.ConePoint(0.5, 0.2, 1.0), tc.ConePoint(0.5, 0.0, 1.0), tol=1e-8)
    assert res.rate_bisect == pytest.approx(fv.RATE_QUBIT_EXAMPLE, abs=1e-6)
    assert res.rate_monotone == pytest.approx(fv.RATE_QUBIT_EXAMPLE, abs=1e-6)
    rng = np.random.default_rng(104)
    for dim in (2, 3, 4):
        for _ in range(100):
            h = random_hamiltonian(rng, d_min=dim, d_max=dim)
            res = tc.r_max(h, _random_member_point(rng, h), _random_member_point(rng, h), tol=1e-8)
            assert res.agreement_gap <= 1e-6
    _passed("4 rate algorithms agree (incl. qubit closed form)")


def test_05_rate_preorder_properties():
    rng = np.random.default_rng(105)
    for _ in range(100):
        h = random_hamiltonian(rng)
        a, b, c = (_random_member_point(rng, h) for _ in range(3))
        r_ab = tc.r_max(h, a, b, tol=1e-10).rate_bisect
        r_bc = tc.r_max(h, b, c, tol=1e-10).rate_bisect
        r_ac = tc.r_max(h, a, c, tol=1e-10).rate_bisect
        assert r_ac >= r_ab * r_bc - 1e-8
        r_ba = tc.r_max(h, b, a, tol=1e-10).rate_bisect
        assert r_ab * r_ba <= 1.0 + 1e-8
    _passed("5 rate composition and reciprocity")


def test_06_engine_efficiencies():
    res = tc.engine_efficiencies(QUBIT, 2.0, 1.5, 1.0, 0.5)
    assert res.eta_engine == pytest.approx(fv.ETA_ENGINE_EXAMPLE, abs=1e-5)
    assert res.eta_refrigerator == pytest.approx(fv.ETA_REFRIG_EXAMPLE, abs=1e-5)
    near = tc.engine_efficiencies(QUBIT, 2.0, 2.0 - 1e-4, 0.5 + 1e-4, 0.5)
    assert near.eta_engine == pytest.approx(0.75, abs=1e-3)
    rng = np.random.default_rng(106)
    checked = 0
    while checked < 100:
        h = random_hamiltonian(rng, degenerate=True)
        betas = np.sort(rng.uniform(0.05, 4.0, size=4))[::-1]
        b_cold, b_lc, b_lh, b_hot = map(float, betas)
        if min(b_cold - b_lc, b_lc - b_lh, b_lh - b_hot) < 1e-3:
            continue
        res = tc.engine_efficiencies(h, b_cold, b_lc, b_lh, b_hot)
        assert res.eta_engine < 1.0 - b_hot / b_cold
        checked += 1
    _passed("6 engine/refrigerator efficiencies and Carnot limits")


def test_07_w_max():
    assert tc.w_max(QUBIT, tc.QuantumState.from_matrix(np.diag([0.25, 0.75]))) == pytest.approx(0.5, abs=1e-8)
    for beta in (0.5, 1.0, 2.0):
        tp = tc.thermal_point(QUBIT, beta)
        state = tc.QuantumState.from_macro(tp.energy, tp.entropy)
        assert tc.w_max(QUBIT, state) == pytest.approx(0.0, abs=1e-8)
    rng = np.random.default_rng(107)
    for _ in range(1000):
        h = random_hamiltonian(rng, d_min=2, d_max=4, degenerate=True)
        state = tc.QuantumState.from_matrix(random_density_matrix(rng, h.dim))
        assert tc.w_max(h, state) >= 0.0
    _passed("7 maximal extractable work")


def test_08_erasure():
    pure = tc.QuantumState.from_matrix(np.full((2, 2), 0.5))
    mixed = tc.QuantumState.from_matrix(np.eye(2) / 2)
    assert tc.erasure_work(QUBIT, mixed, pure, 2.0, 1.0) == pytest.approx(fv.ERASURE_EXAMPLE, abs=1e-5)
    infinite_bath = tc.erasure_work(QUBIT, mixed, pure, 1.0, 1.0 + 1e-6)
    assert infinite_bath == pytest.approx(math.log(2), abs=1e-6)
    _passed("8 erasure work, finite and infinite bath")


def test_09_coarse_graining_bounds_exact():
    rng = np.random.default_rng(109)
    for _ in range(1000):
        p = tc.Distribution(tuple(rng.dirichlet(np.ones(int(rng.integers(1, 65))))))
        q = tc.Distribution(tuple(rng.dirichlet(np.ones(int(rng.integers(1, 17))))))
        result = tc.build_coarse_graining(p, q)
        assert result.distance <= result.l1_bound
        assert max(result.fiber_sizes) <= result.fibre_size_bound
    _passed("9 coarse-graining distance and fiber bounds")


def test_10_typicality():
    uniform = tc.Distribution((0.5, 0.5))
    assert tc.typical_set(uniform, 4).p_typ == 0.875
    assert tc.typical_set(uniform, 12).p_typ == pytest.approx(0.854004, abs=1e-6)
    ts = tc.typical_set(tc.Distribution((0.7, 0.3)), 12)
    base = 12 * tc.Distribution((0.7, 0.3)).shannon_bits()
    spread = math.sqrt(math.log(12) / 12)
    assert ts.h_0 >= ts.h_inf
    assert ts.h_inf >= base * (1 - spread)
    assert ts.h_0 <= ts.h_neg_inf
    assert ts.h_neg_inf <= base * (1 + spread)
    _passed("10 typical-set probabilities and Renyi windows")


def test_11_protocol_convergence():
    p = tc.Distribution((0.7, 0.3))
    q = tc.Distribution((0.3, 0.7))
    d4 = tc.run_entropy_protocol(p, q, 4, ancilla_bits=10).distance
    d10 = tc.run_entropy_protocol(p, q, 10, ancilla_bits=10).distance
    assert d10 < d4
    _passed(f"11 protocol distance shrinks with n ({d4:.4f} -> {d10:.4f})")


def test_12_dilation_cases():
    from fractions import Fraction

    m = tc.LevelSet(tuple(Fraction(v) for v in range(-3, 4)))
    diag = tc.QuantumState.from_matrix(np.diag([0.3, 0.7]))
    rep1 = tc.build_energy_preserving_dilation(QUBIT, np.eye(2), diag, diag, m, delta=1 / 7)
    swap = np.array([[0.0, 1.0], [1.0, 0.0]])
    rep2 = tc.build_energy_preserving_dilation(
        QUBIT,
        swap,
        tc.QuantumState.from_matrix(np.diag([0.0, 1.0])),
        tc.QuantumState.from_matrix(np.diag([1.0, 0.0])),
        m,
        delta=1 / 7,
    )
    plus = np.full((2, 2), 0.5, dtype=complex)
    angle = 0.4
    u = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]], dtype=complex)
    rep3 = tc.build_energy_preserving_dilation(
        QUBIT,
        u,
        tc.QuantumState.from_matrix(plus),
        tc.QuantumState.from_matrix(u @ plus @ u.conj().T),
        m,
        delta=2 / 7,
    )
    for rep in (rep1, rep2, rep3):
        assert rep.total_dimension <= 256
        assert rep.commutation_residual <= 1e-10
        assert rep.output_distance <= 4 * rep.delta + 1e-9
    assert rep1.output_distance <= 2 * rep1.delta
    assert rep2.output_distance <= 2 * rep2.delta
    assert rep2.deficit_factors[0] == pytest.approx(7 / 8, abs=1e-12)
    _passed("12 energy-preserving dilation residual and distance")


def test_13_membership_equivalence():
    from thermocone.thermal import log_partition

    rng = np.random.default_rng(113)
    hams = [QUBIT, well_gapped_hamiltonian(rng), well_gapped_hamiltonian(rng)]
    for h in hams:
        span = h.e_max - h.e_min
        betas = np.linspace(-50.0, 50.0, 10_000) / span
        log_z = log_partition(h, betas)
        energies = rng.uniform(h.e_min - 0.2, h.e_max + 0.2, size=10_000)
        entropies = rng.uniform(-0.2, h.log_dim + 0.2, size=10_000)
        # vectorized facet slack: min over entropy, athermality grid, edges
        slack = np.minimum(entropies, energies - h.e_min)
        slack = np.minimum(slack, h.e_max - energies)
        for start in range(0, energies.size, 500):
            stop = start + 500
            athermal = np.min(
                betas[None, :] * energies[start:stop, None]
                - entropies[start:stop, None]
                + log_z[None, :],
                axis=1,
            )
            slack[start:stop] = np.minimum(slack[start:stop], athermal)
        for x_e, x_s, s in zip(energies, entropies, slack):
            verdict = tc.diagram_contains(h, tc.Macrostate(float(x_e), float(x_s)), tol=1e-6)
            if verdict is tc.Verdict.BOUNDARY or abs(s) <= 5e-6 * (1.0 + 50.0 / span):
                continue
            assert (s > 0) == (verdict is tc.Verdict.INSIDE), (h, x_e, x_s, s, verdict)
    _passed("13 boundary test vs facet grid on 3x10^4 points")


def test_14_decomposition():
    weights = tc.decompose(QUBIT, tc.Macrostate(0.5, 0.4), 0.0)
    assert weights.c_beta == pytest.approx(fv.DECOMP_C_BETA, abs=1e-6)
    assert weights.c_min == pytest.approx(fv.DECOMP_C_EDGE, abs=1e-6)
    assert weights.c_max == pytest.approx(fv.DECOMP_C_EDGE, abs=1e-6)
    rng = np.random.default_rng(114)
    for _ in range(100):
        h = random_hamiltonian(rng)
        beta = float(rng.uniform(-2.0, 2.0))
        tp = tc.thermal_point(h, beta)
        mix = rng.dirichlet(np.ones(3))
        x = tc.Macrostate(
            mix[0] * tp.energy + mix[1] * h.e_min + mix[2] * h.e_max,
            mix[0] * tp.entropy,
        )
        got = tc.decompose(h, x, beta)
        assert got.c_beta + got.c_min + got.c_max == pytest.approx(1.0, abs=1e-10)
        rebuilt_e = got.c_beta * tp.energy + got.c_min * h.e_min + got.c_max * h.e_max
        assert rebuilt_e == pytest.approx(x.energy, abs=1e-10)
        assert got.c_beta * tp.entropy == pytest.approx(x.entropy, abs=1e-10)
    _passed("14 extreme-point decomposition")
