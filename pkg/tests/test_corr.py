import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from superdiscord import corr
from superdiscord.measure import STRONG, qubit_basis
from superdiscord.states import (DensityMatrix, product_state, pure_schmidt,
                                 random_density, werner)

import oracles

# frozen from oracles.py (numpy eigvalsh, explicit Kronecker products)
WERNER_HALF_DISCORD = 0.26248318376373414
WERNER_HALF_SQD_X02 = 0.4441682240642071
WERNER_HALF_J = 0.18872187554086717
MAX_ENT_SQD_X02 = 1.9717130895791362
H2_03 = 0.8812908992306927

FAST = corr.OptimizationSettings(n_theta=24, n_phi=48)


def rand_product(seed):
    rng = np.random.default_rng(seed)
    return product_state(random_density(rng).rho_a.mat, random_density(rng).rho_b.mat)


def test_frozen_values_against_oracle():
    w = werner(0.5).mat
    s_ab = oracles.entropy_bits(w)
    assert oracles.weak_cond_entropy(w, 0.4, 1.0, math.inf) - s_ab + 1 == pytest.approx(
        WERNER_HALF_DISCORD, abs=1e-12)
    assert oracles.weak_cond_entropy(w, 0.4, 1.0, 0.2) - s_ab + 1 == pytest.approx(
        WERNER_HALF_SQD_X02, abs=1e-12)


def test_entropy_examples():
    assert corr.entropy(random_density(3, "pure")) == pytest.approx(0, abs=1e-9)
    assert corr.entropy(np.eye(4) / 4) == pytest.approx(2.0)
    rho_b = (np.eye(2) + 0.1 * oracles.SX + 0.03 * oracles.SY + 0.5 * oracles.SZ) / 2
    assert corr.entropy(rho_b) == pytest.approx(0.80262, abs=5e-6)


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_entropy_matches_oracle_and_bounds(seed):
    rho = random_density(seed)
    s = corr.entropy(rho)
    assert s == pytest.approx(oracles.entropy_bits(rho.mat), abs=1e-10)
    assert 0 <= s <= 2


def test_mutual_information_examples():
    assert corr.mutual_information(rand_product(1)) == pytest.approx(0, abs=1e-10)
    assert corr.mutual_information(pure_schmidt(0.5)) == pytest.approx(2.0)
    assert corr.mutual_information(werner(1.0)) == pytest.approx(2.0)


def test_conditional_entropy_strong_examples():
    rho = rand_product(2)
    b = qubit_basis(0.8, 2.2)
    assert corr.conditional_entropy_strong(rho, b) == pytest.approx(corr.entropy(rho.rho_a),
                                                                     abs=1e-10)
    for z in (0.2, 0.5, 0.9):
        expected = oracles.binary_entropy((1 + z) / 2)
        for ang in [(0, 0), (1.0, 2.0), (2.5, 5.0)]:
            got = corr.conditional_entropy_strong(werner(z), qubit_basis(*ang))
            assert got == pytest.approx(expected, abs=1e-10)
    assert corr.conditional_entropy_strong(pure_schmidt(0.5), b) == pytest.approx(0, abs=1e-9)


@pytest.mark.parametrize("z", [0.0, 0.3, 0.5, 1.0])
@pytest.mark.parametrize("x", [0.1, 0.7, 2.0])
def test_conditional_entropy_weak_werner(z, x):
    expected = oracles.binary_entropy((1 + z * math.tanh(x)) / 2)
    for ang in [(0, 0), (1.3, 0.4)]:
        got = corr.conditional_entropy_weak(werner(z), qubit_basis(*ang), x)
        assert got == pytest.approx(expected, abs=1e-10)
        assert got == pytest.approx(oracles.weak_cond_entropy(werner(z).mat, *ang, x), abs=1e-10)


def test_conditional_entropy_weak_endpoints():
    rho = random_density(12)
    b = qubit_basis(0.7, 0.1)
    assert corr.conditional_entropy_weak(rho, b, 0.0) == pytest.approx(corr.entropy(rho.rho_a),
                                                                        abs=1e-12)
    assert corr.conditional_entropy_weak(rho, b, STRONG) == corr.conditional_entropy_strong(rho, b)
    assert corr.conditional_entropy_weak(werner(1.0), b, STRONG) == pytest.approx(0, abs=1e-9)


def test_minimizer_werner_any_basis():
    for x in (0.2, STRONG):
        opt = corr.minimize_over_bases(werner(0.5), x)
        expected = oracles.binary_entropy((1 + 0.5 * math.tanh(min(x, 50))) / 2)
        assert opt.value == pytest.approx(expected, abs=1e-12)


def test_minimizer_pure_strong_oracle():
    rho = pure_schmidt(0.3)
    opt = corr.minimize_over_bases(rho, STRONG)
    assert opt.value == pytest.approx(0.0, abs=1e-9)
    # for the Schmidt basis theta = 0 the conditional states are exactly pure
    assert corr.conditional_entropy_strong(rho, qubit_basis(0, 0)) == pytest.approx(0, abs=1e-12)


def test_minimizer_pure_half_weak_theta_independent():
    x = 0.4
    vals = [corr.conditional_entropy_weak(pure_schmidt(0.5), qubit_basis(th, 0.3), x)
            for th in np.linspace(0, math.pi, 9)]
    assert max(vals) - min(vals) < 1e-10
    assert corr.minimize_over_bases(pure_schmidt(0.5), x).value == pytest.approx(vals[0], abs=1e-12)


@pytest.mark.parametrize("seed", range(3))
def test_minimizer_against_bruteforce_grid(seed):
    rho = random_density(seed)
    for x in (0.5, STRONG):
        ref = oracles.grid_min_cond_entropy(rho.mat, x, n_theta=91, n_phi=181)
        got = corr.minimize_over_bases(rho, x).value
        # a finite grid can only overestimate the minimum
        assert got <= ref + 1e-12
        assert got > ref - 1e-3


@given(st.integers(0, 10**6))
@settings(max_examples=10, deadline=None)
def test_minimizer_beats_random_probes(seed):
    rho = random_density(seed)
    opt = corr.minimize_over_bases(rho, 0.6)
    rng = np.random.default_rng(seed)
    for _ in range(32):
        b = qubit_basis(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
        assert opt.value <= corr.conditional_entropy_weak(rho, b, 0.6) + 1e-12


def test_minimizer_not_above_grid_and_deterministic():
    rho = random_density(77)
    a = corr.minimize_over_bases(rho, 1.0, FAST)
    b = corr.minimize_over_bases(rho, 1.0, FAST)
    assert a == b
    from superdiscord import kernels
    grid = kernels.objective_grid(kernels.reduce_blocks(rho.mat), FAST.thetas, FAST.phis,
                                  math.tanh(1.0))
    assert a.value <= grid.min()
    assert 0 <= a.theta <= math.pi and 0 <= a.phi < 2 * math.pi


def test_settings_validation():
    with pytest.raises(ValueError):
        corr.OptimizationSettings(n_theta=1)
    with pytest.raises(ValueError):
        corr.OptimizationSettings(refine_tolerance=0)


def test_discord_examples():
    assert corr.quantum_discord(rand_product(4)) == pytest.approx(0, abs=1e-9)
    for lam in (0.1, 0.3, 0.5):
        assert corr.quantum_discord(pure_schmidt(lam)) == pytest.approx(
            oracles.binary_entropy(lam), abs=1e-9)
    assert corr.quantum_discord(werner(0.5)) == pytest.approx(WERNER_HALF_DISCORD, abs=1e-10)


def test_super_discord_examples():
    for seed in range(3):
        rho = random_density(seed)
        assert corr.super_quantum_discord(rho, 0.0) == pytest.approx(
            corr.mutual_information(rho), abs=1e-10)
    assert corr.super_quantum_discord(werner(0.5), 0.2) == pytest.approx(WERNER_HALF_SQD_X02,
                                                                         abs=1e-10)
    assert corr.super_quantum_discord(pure_schmidt(0.5), 0.2) == pytest.approx(MAX_ENT_SQD_X02,
                                                                               abs=1e-10)


def test_classical_correlation_examples():
    assert corr.classical_correlation(rand_product(5)) == pytest.approx(0, abs=1e-9)
    assert corr.classical_correlation(pure_schmidt(0.5)) == pytest.approx(1.0, abs=1e-9)
    assert corr.classical_correlation(werner(0.5)) == pytest.approx(WERNER_HALF_J, abs=1e-10)


def test_entanglement_entropy_pure():
    assert corr.entanglement_entropy_pure(pure_schmidt(0.5)) == pytest.approx(1.0)
    assert corr.entanglement_entropy_pure(pure_schmidt(1.0)) == pytest.approx(0.0, abs=1e-12)
    assert corr.entanglement_entropy_pure(pure_schmidt(0.3)) == pytest.approx(H2_03, abs=1e-10)
    with pytest.raises(ValueError, match="not pure"):
        corr.entanglement_entropy_pure(werner(0.5))


def test_clamping_and_consistency_error():
    assert corr._clamp(-5e-8, "d") == 0.0
    with pytest.raises(corr.InternalConsistencyError):
        corr._clamp(-1e-6, "d")


@given(st.integers(0, 10**6), st.floats(0.05, 3.0))
@settings(max_examples=15, deadline=None)
def test_report_invariants(seed, x):
    rep = corr.correlation_report(random_density(seed), x, FAST)
    rep.check()
    assert rep.super_discord >= rep.discord - 1e-7
    assert rep.discord <= rep.mutual_information + 1e-9


@given(st.integers(0, 10**6), st.floats(0.05, 3.0), st.floats(0, math.pi), st.floats(0, 6.28))
@settings(max_examples=40, deadline=None)
def test_per_basis_weak_dominates_strong(seed, x, th, ph):
    rho = random_density(seed)
    b = qubit_basis(th, ph)
    assert corr.conditional_entropy_weak(rho, b, x) >= corr.conditional_entropy_strong(rho, b) - 1e-9


@given(st.integers(0, 10**6), st.integers(2, 4))
@settings(max_examples=30, deadline=None)
def test_entropy_concavity(seed, k):
    rng = np.random.default_rng(seed)
    q = rng.dirichlet(np.ones(k))
    states = [random_density(rng, "pure" if i % 2 else "full-rank") for i in range(k)]
    mix = DensityMatrix(sum(qi * s.mat for qi, s in zip(q, states)))
    assert corr.entropy(mix) >= sum(qi * corr.entropy(s) for qi, s in zip(q, states)) - 1e-10


def test_fixed_basis_report():
    b = qubit_basis(0.3, 0.2)
    rep = corr.correlation_report(werner(0.5), 0.2, basis=b)
    assert not rep.optimized
    assert rep.optimal_basis_weak == (b.theta, b.phi)
    assert rep.super_discord == pytest.approx(WERNER_HALF_SQD_X02, abs=1e-10)
