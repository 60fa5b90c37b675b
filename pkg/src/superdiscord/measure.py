"""Projective bases and weak measurement operators acting on qubit B."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from . import qmat
from .states import DensityMatrix, validate_density

#: Strength value selecting the projective (x -> infinity) limit.
STRONG = math.inf
#: Finite strengths at or above this use the projector path; 1 - tanh(20) < 1e-17.
STRONG_THRESHOLD = 20.0
DEGENERATE_PROB = 1e-12


def is_strong(x: float) -> bool:
    return x >= STRONG_THRESHOLD


def check_strength(x: float) -> float:
    x = float(x)
    if math.isnan(x):
        raise ValueError("measurement strength is NaN")
    if x < 0:
        raise ValueError(
            f"measurement strength must be >= 0, got {x}; swap the basis instead")
    return x


def effective_tanh(x: float) -> float:
    """tanh of the strength, exactly 1 on the projector path."""
    x = check_strength(x)
    return 1.0 if is_strong(x) else math.tanh(x)


def canonical_angles(theta: float, phi: float) -> tuple[float, float]:
    """Map (theta, phi) onto theta in [0, pi], phi in [0, 2 pi) with the same axis."""
    if not (math.isfinite(theta) and math.isfinite(phi)):
        raise ValueError(f"basis angles must be finite, got ({theta}, {phi})")
    theta = math.fmod(theta, 2 * math.pi)
    if theta < 0:
        theta += 2 * math.pi
    if theta > math.pi:
        theta = 2 * math.pi - theta
        phi += math.pi
    phi = math.fmod(phi, 2 * math.pi)
    if phi < 0:
        phi += 2 * math.pi
    if phi >= 2 * math.pi:
        phi = 0.0
    return theta, phi


@dataclass(frozen=True)
class ProjectiveBasis:
    """Qubit basis {|psi>, |psi_bar>} with |psi> = cos(t/2)|0> + e^{i p} sin(t/2)|1>."""

    theta: float
    phi: float

    @cached_property
    def ket(self) -> np.ndarray:
        return np.array([math.cos(self.theta / 2),
                         np.exp(1j * self.phi) * math.sin(self.theta / 2)])

    @cached_property
    def ket_bar(self) -> np.ndarray:
        return np.array([-np.exp(-1j * self.phi) * math.sin(self.theta / 2),
                         math.cos(self.theta / 2)])

    @cached_property
    def pi_psi(self) -> np.ndarray:
        return np.outer(self.ket, self.ket.conj())

    @cached_property
    def pi_psi_bar(self) -> np.ndarray:
        return np.outer(self.ket_bar, self.ket_bar.conj())

    @property
    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        return self.pi_psi, self.pi_psi_bar

    @property
    def bloch_vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi),
                         math.cos(self.theta)])


def qubit_basis(theta: float, phi: float) -> ProjectiveBasis:
    return ProjectiveBasis(*canonical_angles(float(theta), float(phi)))


def weak_amplitude(s: float) -> float:
    """sqrt((1 - s)/2) for s = tanh of a signed strength."""
    return math.sqrt(max(0.0, (1.0 - s) / 2.0))


@dataclass(frozen=True)
class WeakOperatorPair:
    """P(+x) = a(x) Pi_psi + a(-x) Pi_psibar and its partner P(-x)."""

    basis: ProjectiveBasis
    x: float

    @property
    def strong(self) -> bool:
        return is_strong(self.x)

    @cached_property
    def plus(self) -> np.ndarray:
        if self.strong:
            return self.basis.pi_psi_bar.copy()
        t = math.tanh(self.x)
        return weak_amplitude(t) * self.basis.pi_psi + weak_amplitude(-t) * self.basis.pi_psi_bar

    @cached_property
    def minus(self) -> np.ndarray:
        if self.strong:
            return self.basis.pi_psi.copy()
        t = math.tanh(self.x)
        return weak_amplitude(-t) * self.basis.pi_psi + weak_amplitude(t) * self.basis.pi_psi_bar

    def __iter__(self):
        yield self.plus
        yield self.minus


def weak_operators(basis: ProjectiveBasis, x: float) -> WeakOperatorPair:
    return WeakOperatorPair(basis, check_strength(x))


@dataclass(frozen=True)
class MeasurementBranch:
    probability: float
    conditional_state: Optional[DensityMatrix]

    @property
    def degenerate(self) -> bool:
        return self.conditional_state is None


def measurement_branch(rho, op) -> MeasurementBranch:
    """Outcome probability and post-measurement state of A for ``op`` on B."""
    rho = validate_density(rho)
    if rho.dim != 4:
        raise qmat.MatrixDimensionError("measurement needs a two-qubit state")
    op = qmat.as_matrix(op, dims=(2,))
    unnorm = qmat.sandwich(qmat.tensor_product(qmat.IDENTITY, op), rho.mat)
    cond = qmat.partial_trace(unnorm, "A")
    p = float(np.trace(cond).real)
    if p < DEGENERATE_PROB:
        return MeasurementBranch(max(p, 0.0), None)
    return MeasurementBranch(p, DensityMatrix(cond / p))


def measurement_branches(rho, pair: WeakOperatorPair) -> tuple[MeasurementBranch, MeasurementBranch]:
    return measurement_branch(rho, pair.plus), measurement_branch(rho, pair.minus)
