"""Closed-form super discord for pure, Werner and Bloch-normal-form states.

These formulas are evaluated directly from the state parameters and serve
as an independent check on the operator pipeline in :mod:`corr`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .corr import InternalConsistencyError, binary_entropy, shannon_entropy
from .measure import DEGENERATE_PROB, effective_tanh
from .states import BlochNormalForm

SQRT_CLAMP = 1e-12


def _clamped_sqrt(v: float, lo: float = 0.0, hi: float = 1.0) -> float:
    if v < lo - SQRT_CLAMP or v > hi + SQRT_CLAMP:
        raise InternalConsistencyError(f"square-root argument {v!r} outside [{lo}, {hi}]")
    return math.sqrt(min(max(v, lo), hi))


def _cosh_sq_inv(x: float) -> float:
    """1/cosh^2 x, equal to 1 - tanh^2 x and 0 on the projector path."""
    t = effective_tanh(x)
    return 1.0 - t * t if t < 1.0 else 0.0


@dataclass(frozen=True)
class PureBranchSpectrum:
    k_plus: float
    k_minus: float
    branch_probability: float


def pure_branch_spectra(lambda0: float, x: float, theta: float) -> tuple[PureBranchSpectrum, PureBranchSpectrum]:
    """Spectra of the A-states after P(+x) and P(-x) on a Schmidt-form pure state."""
    if not 0.0 <= lambda0 <= 1.0:
        raise ValueError(f"lambda0 {lambda0} outside [0, 1]")
    lam1 = 1.0 - lambda0
    t = effective_tanh(x)
    sech2 = _cosh_sq_inv(x)
    out = []
    for sign in (1.0, -1.0):
        p = 0.5 * (1.0 - (lambda0 - lam1) * sign * t * math.cos(theta))
        if p < DEGENERATE_PROB:
            out.append(PureBranchSpectrum(1.0, 0.0, max(p, 0.0)))
            continue
        root = _clamped_sqrt(1.0 - lambda0 * lam1 * sech2 / (p * p))
        out.append(PureBranchSpectrum(0.5 * (1.0 + root), 0.5 * (1.0 - root), p))
    return out[0], out[1]


def pure_weak_cond_entropy(lambda0: float, x: float, theta: float) -> float:
    return sum(s.branch_probability * shannon_entropy((s.k_plus, s.k_minus))
               for s in pure_branch_spectra(lambda0, x, theta))


def pure_sqd_closed_form(lambda0: float, x: float, theta: float) -> float:
    """Super discord of the Schmidt state in the basis at polar angle ``theta``."""
    return binary_entropy(lambda0) + pure_weak_cond_entropy(lambda0, x, theta)


def pure_sqd_minimized(lambda0: float, x: float, n_theta: int = 2001) -> tuple[float, float]:
    """Minimise over theta (the spectra do not depend on phi).

    Returns (theta, value); a dense scan is followed by golden-section
    refinement inside the neighbouring cells.
    """
    thetas = np.linspace(0.0, math.pi, n_theta)
    vals = [pure_weak_cond_entropy(lambda0, x, th) for th in thetas]
    i = int(np.argmin(vals))
    h = thetas[1] - thetas[0]
    a, b = max(0.0, thetas[i] - h), min(math.pi, thetas[i] + h)
    g = (math.sqrt(5.0) - 1.0) / 2.0
    f = lambda th: pure_weak_cond_entropy(lambda0, x, th)
    best_th, best = float(thetas[i]), vals[i]
    while b - a > 1e-10:
        c, d = b - g * (b - a), a + g * (b - a)
        if f(c) < f(d):
            b = d
        else:
            a = c
    mid = 0.5 * (a + b)
    if f(mid) < best:
        best_th, best = mid, f(mid)
    return best_th, binary_entropy(lambda0) + best


def maximally_entangled_sqd(x: float) -> float:
    return 1.0 + binary_entropy((1.0 + effective_tanh(x)) / 2.0)


def werner_entropy(z: float) -> float:
    """S(rho_AB) of the Werner state from its spectrum {(1+3z)/4, (1-z)/4 x3}."""
    return shannon_entropy([(1 + 3 * z) / 4] + [(1 - z) / 4] * 3)


def werner_weak_cond_entropy(z: float, x: float) -> float:
    t = effective_tanh(x)
    return shannon_entropy([(1 - z * t) / 2, (1 + z * t) / 2])


def werner_sqd_closed_form(z: float, x: float) -> float:
    """S(A,B) terms, plus S(B) = 1, minus the y = +-x weak-branch sum."""
    if not -1.0 / 3.0 - 1e-12 <= z <= 1.0 + 1e-12:
        raise ValueError(f"Werner parameter z={z} outside [-1/3, 1]")
    return -werner_entropy(z) + 1.0 + werner_weak_cond_entropy(z, x)


def werner_mutual_information(z: float) -> float:
    return 2.0 - werner_entropy(z)


def bloch_weak_cond_entropy(p: BlochNormalForm, theta: float, phi: float, x: float) -> float:
    """Weak conditional entropy from p(+-x) and lambda_+-(+-x) of the Bloch form."""
    t = effective_tanh(x)
    n = (math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta))
    bn = sum(bi * ni for bi, ni in zip(p.b, n))
    total = 0.0
    for y in (t, -t):
        weight = 1.0 - bn * y
        prob = weight / 2.0
        if prob < DEGENERATE_PROB:
            continue
        radius = math.sqrt(sum((ai - ci * ni * y) ** 2 for ai, ci, ni in zip(p.a, p.c, n)))
        lam_plus = (weight + radius) / (2.0 * weight)
        lam_minus = (weight - radius) / (2.0 * weight)
        if lam_minus < -1e-8:
            raise InternalConsistencyError(
                f"negative conditional eigenvalue {lam_minus:.3e}; state unphysical?")
        total += prob * shannon_entropy((lam_plus, max(lam_minus, 0.0)))
    return total
