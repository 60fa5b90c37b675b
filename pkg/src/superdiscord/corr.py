"""Entropic correlation measures and the measurement-basis minimisation.

All quantities are in bits. The measured subsystem is always B; to measure
A instead, swap the tensor factors before calling.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import kernels
from .measure import (DEGENERATE_PROB, STRONG, ProjectiveBasis,
                      canonical_angles, check_strength, effective_tanh,
                      measurement_branches, qubit_basis, weak_operators)
from .states import DensityMatrix, validate_density

CLAMP_TOL = 1e-7
PURE_TOL = 1e-8


class InternalConsistencyError(RuntimeError):
    """A computed quantity violated a bound that holds mathematically."""


@dataclass(frozen=True)
class OptimizationSettings:
    n_theta: int = 64
    n_phi: int = 128
    refine_tolerance: float = 1e-10
    max_refine_iterations: int = 200
    line_xtol: float = 1e-9

    def __post_init__(self):
        if self.n_theta < 2 or self.n_phi < 1:
            raise ValueError(
                f"grid must be at least 2 x 1, got {self.n_theta} x {self.n_phi}")
        if not self.refine_tolerance > 0:
            raise ValueError("refine_tolerance must be positive")
        if self.max_refine_iterations < 0:
            raise ValueError("max_refine_iterations must be >= 0")

    @property
    def thetas(self) -> np.ndarray:
        return np.linspace(0.0, math.pi, self.n_theta)

    @property
    def phis(self) -> np.ndarray:
        return 2.0 * math.pi * np.arange(self.n_phi) / self.n_phi


DEFAULT_SETTINGS = OptimizationSettings()


@dataclass(frozen=True)
class BasisOptimum:
    theta: float
    phi: float
    value: float

    @property
    def basis(self) -> ProjectiveBasis:
        return qubit_basis(self.theta, self.phi)


def _xlog2x(v: float) -> float:
    return v * math.log2(v) if v > 0 else 0.0


def shannon_entropy(probs) -> float:
    return -sum(_xlog2x(float(p)) for p in probs)


def binary_entropy(p: float) -> float:
    return shannon_entropy((p, 1.0 - p))


def entropy(rho) -> float:
    """von Neumann entropy in bits."""
    return shannon_entropy(validate_density(rho).spectrum)


def conditional_entropy_AB(rho) -> float:
    """S(A|B) = S(rho_AB) - S(rho_B)."""
    rho = validate_density(rho)
    return entropy(rho) - entropy(rho.rho_b)


def mutual_information(rho) -> float:
    rho = validate_density(rho)
    return entropy(rho.rho_a) + entropy(rho.rho_b) - entropy(rho)


def _branch_entropy_sum(branches) -> float:
    total = 0.0
    for br in branches:
        if br.probability < DEGENERATE_PROB or br.degenerate:
            continue
        total += br.probability * entropy(br.conditional_state)
    return total


def conditional_entropy_weak(rho, basis: ProjectiveBasis, x: float) -> float:
    """p(x) S(rho_A|P(x)) + p(-x) S(rho_A|P(-x)) through explicit operators."""
    rho = validate_density(rho)
    return _branch_entropy_sum(measurement_branches(rho, weak_operators(basis, x)))


def conditional_entropy_strong(rho, basis: ProjectiveBasis) -> float:
    return conditional_entropy_weak(rho, basis, STRONG)


def minimize_over_bases(rho, x: float = STRONG,
                        settings: OptimizationSettings = DEFAULT_SETTINGS) -> BasisOptimum:
    """Minimise the weak (or, for ``x=STRONG``, projective) conditional entropy.

    A coarse (theta, phi) grid seeds a coordinate descent in which each
    coordinate is refined by golden-section search over one grid spacing on
    either side of the current point. Only strict improvements are
    accepted, so the result never exceeds the best grid sample.
    """
    rho = validate_density(rho)
    t = effective_tanh(x)
    blocks = kernels.reduce_blocks(rho.mat)
    thetas, phis = settings.thetas, settings.phis
    grid = kernels.objective_grid(blocks, thetas, phis, t)
    i, j = np.unravel_index(int(np.argmin(grid)), grid.shape)
    theta, phi, best = float(thetas[i]), float(phis[j]), float(grid[i, j])
    h_theta = math.pi / (settings.n_theta - 1)
    h_phi = 2.0 * math.pi / settings.n_phi
    for _ in range(settings.max_refine_iterations):
        start = best
        arg, val = kernels.golden_section(blocks, theta, phi, t, 0, theta - h_theta,
                                          theta + h_theta, settings.line_xtol)
        if val < best:
            theta, best = arg, val
        arg, val = kernels.golden_section(blocks, theta, phi, t, 1, phi - h_phi,
                                          phi + h_phi, settings.line_xtol)
        if val < best:
            phi, best = arg, val
        if start - best < settings.refine_tolerance:
            break
    theta, phi = canonical_angles(theta, phi)
    return BasisOptimum(theta, phi, best)


def _clamp(value: float, what: str) -> float:
    if value >= 0.0:
        return value
    if value >= -CLAMP_TOL:
        return 0.0
    raise InternalConsistencyError(f"{what} = {value:.3e} is negative beyond tolerance")


def quantum_discord(rho, settings: OptimizationSettings = DEFAULT_SETTINGS) -> float:
    rho = validate_density(rho)
    opt = minimize_over_bases(rho, STRONG, settings)
    return _clamp(opt.value - conditional_entropy_AB(rho), "discord")


def super_quantum_discord(rho, x: float,
                          settings: OptimizationSettings = DEFAULT_SETTINGS) -> float:
    rho = validate_density(rho)
    opt = minimize_over_bases(rho, check_strength(x), settings)
    return _clamp(opt.value - conditional_entropy_AB(rho), "super discord")


def classical_correlation(rho, settings: OptimizationSettings = DEFAULT_SETTINGS) -> float:
    rho = validate_density(rho)
    opt = minimize_over_bases(rho, STRONG, settings)
    return entropy(rho.rho_a) - opt.value


def entanglement_entropy_pure(rho) -> float:
    rho = validate_density(rho)
    if rho.eigenvalues[0] < 1.0 - PURE_TOL:
        raise ValueError(
            f"state is not pure: largest eigenvalue {rho.eigenvalues[0]:.10g}")
    return entropy(rho.rho_a)


@dataclass(frozen=True)
class CorrelationReport:
    entropy_A: float
    entropy_B: float
    entropy_AB: float
    mutual_information: float
    classical_correlation: float
    discord: float
    super_discord: float
    strength_x: float
    optimal_basis_strong: tuple[float, float]
    optimal_basis_weak: tuple[float, float]
    conditional_entropy_strong: float
    conditional_entropy_weak: float
    optimized: bool = True

    def as_dict(self) -> dict:
        return asdict(self)

    def check(self) -> None:
        """Raise InternalConsistencyError if a structural identity fails."""
        if abs(self.mutual_information
               - (self.entropy_A + self.entropy_B - self.entropy_AB)) > 1e-10:
            raise InternalConsistencyError("I != S_A + S_B - S_AB")
        if self.discord < -1e-8:
            raise InternalConsistencyError(f"discord {self.discord:.3e} < 0")
        if self.super_discord < self.discord - CLAMP_TOL:
            raise InternalConsistencyError(
                f"super discord {self.super_discord:.10g} below discord "
                f"{self.discord:.10g}")
        if abs(self.classical_correlation + self.discord - self.mutual_information) > 1e-8:
            raise InternalConsistencyError("J + D != I")


def correlation_report(rho, x: float, settings: OptimizationSettings = DEFAULT_SETTINGS,
                       basis: ProjectiveBasis | None = None) -> CorrelationReport:
    """All measures for one state and strength.

    With ``basis`` given, conditional entropies are evaluated in that basis
    instead of being minimised.
    """
    rho = validate_density(rho)
    x = check_strength(x)
    s_a, s_b, s_ab = entropy(rho.rho_a), entropy(rho.rho_b), entropy(rho)
    if basis is None:
        strong = minimize_over_bases(rho, STRONG, settings)
        weak = minimize_over_bases(rho, x, settings)
    else:
        strong = BasisOptimum(basis.theta, basis.phi, conditional_entropy_strong(rho, basis))
        weak = BasisOptimum(basis.theta, basis.phi, conditional_entropy_weak(rho, basis, x))
    s_cond = s_ab - s_b
    mi = s_a + s_b - s_ab
    discord = _clamp(strong.value - s_cond, "discord")
    return CorrelationReport(
        entropy_A=s_a, entropy_B=s_b, entropy_AB=s_ab,
        mutual_information=mi,
        classical_correlation=mi - discord,
        discord=discord,
        super_discord=_clamp(weak.value - s_cond, "super discord"),
        strength_x=x,
        optimal_basis_strong=(strong.theta, strong.phi),
        optimal_basis_weak=(weak.theta, weak.phi),
        conditional_entropy_strong=strong.value,
        conditional_entropy_weak=weak.value,
        optimized=basis is None,
    )
