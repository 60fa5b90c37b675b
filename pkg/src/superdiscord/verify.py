"""Numerical verification of the dominance and monotonicity results.

The derivative machinery here works in natural-log units (nats); only the
reports quote bits where they compare discords.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import corr, qmat
from .measure import (STRONG, ProjectiveBasis, check_strength, measurement_branch,
                      qubit_basis, weak_amplitude, weak_operators)
from .states import DensityMatrix, random_density, validate_density

LN2 = math.log(2.0)
FD_STEP = 1e-5
DERIVATIVE_TOL = 1e-4
R_AGREE_TOL = 1e-9
R_POSITIVE_TOL = 1e-9
DOMINANCE_TOL = 1e-7
FIXED_MONOTONE_TOL = 1e-9
MIN_MONOTONE_TOL = 1e-6
ALGEBRA_TOL = 1e-12
ENDPOINT_MI_TOL = 1e-8
ENDPOINT_D_TOL = 1e-7


@dataclass(frozen=True)
class Failure:
    check: str
    seed: int | None
    parameters: str
    observed: float
    bound: float


@dataclass
class VerificationReport:
    """Outcome of one or more checks.

    ``max_violation`` is the largest signed amount by which any check
    exceeded its bound (negative when every check held with margin).
    """

    checks_run: int = 0
    failures: list[Failure] = field(default_factory=list)
    max_violation: float = -math.inf

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, check: str, violation: float, *, seed=None, parameters="",
               observed=math.nan, bound=math.nan) -> None:
        """Register one comparison; ``violation > 0`` means the bound failed."""
        self.checks_run += 1
        self.max_violation = max(self.max_violation, violation)
        if violation > 0:
            self.failures.append(Failure(check, seed, parameters, observed, bound))

    def merge(self, other: VerificationReport) -> VerificationReport:
        self.checks_run += other.checks_run
        self.failures.extend(other.failures)
        self.max_violation = max(self.max_violation, other.max_violation)
        return self


# -- monotonicity witness ----------------------------------------------------

def _logm(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    if w.min() <= 0:
        raise ValueError("matrix logarithm of a singular state")
    return (v * np.log(w)) @ v.conj().T


def relative_entropy(rho, sigma) -> float:
    """S(rho || sigma) = Tr rho (ln rho - ln sigma), nats; sigma must be full rank."""
    rho = np.asarray(rho)
    w, v = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    w = np.clip(w, 0.0, None)
    rho_log_rho = sum(wi * math.log(wi) for wi in w if wi > 0)
    return float(rho_log_rho - np.trace(rho @ _logm(np.asarray(sigma))).real)


@dataclass(frozen=True)
class TheoremTwoWitness:
    p_psi: float
    p_psi_bar: float
    q_plus: float
    q_minus: float
    u: float
    k: float
    l: float
    r: float
    s: float
    R: float
    R_relative: float


def derivative_from_R(R: float, x: float) -> float:
    """dD_w/dx at a fixed basis, in nats."""
    return -R / (2.0 * math.cosh(x) ** 2)


def compute_R(rho, basis: ProjectiveBasis, x: float) -> TheoremTwoWitness:
    """R(x) by the trace formula and by the relative-entropy decomposition.

    ``R`` is Tr{p_psi rho_psi [ln rho_- - ln rho_+] + p_psibar rho_psibar
    [ln rho_+ - ln rho_-]}, where rho_+- are the A-states after P(+-x);
    ``R_relative`` rebuilds it from q(+-x), u and k, l, r, s.
    """
    rho = validate_density(rho)
    x = check_strength(x)
    if not 0 < x < math.inf:
        raise ValueError("compute_R needs a finite strength x > 0")
    strong_psi = measurement_branch(rho, basis.pi_psi)
    strong_bar = measurement_branch(rho, basis.pi_psi_bar)
    p_psi, p_bar = strong_psi.probability, strong_bar.probability
    if p_psi <= 1e-10 or p_bar <= 1e-10:
        raise ValueError(
            f"degenerate projective branch (p_psi={p_psi:.3e}, p_psibar={p_bar:.3e})")
    rho_psi, rho_bar = strong_psi.conditional_state.mat, strong_bar.conditional_state.mat

    pair = weak_operators(basis, x)
    plus = measurement_branch(rho, pair.plus)
    minus = measurement_branch(rho, pair.minus)
    rho_p, rho_m = plus.conditional_state.mat, minus.conditional_state.mat
    log_p, log_m = _logm(rho_p), _logm(rho_m)
    R = float(np.trace(p_psi * rho_psi @ (log_m - log_p)
                       + p_bar * rho_bar @ (log_p - log_m)).real)

    t = math.tanh(x)
    a2_plus = weak_amplitude(t) ** 2      # weight of Pi_psi in E(+x)
    a2_minus = weak_amplitude(-t) ** 2    # weight of Pi_psi in E(-x)
    q_plus = a2_plus * p_psi / plus.probability
    q_minus = a2_minus * p_psi / minus.probability
    u = q_minus - q_plus
    k = (1.0 - q_minus) / u
    l = (1.0 - q_plus) / u
    r = q_minus / u
    s = q_plus / u
    R_rel = ((p_psi * k + p_bar * r) * relative_entropy(rho_p, rho_m)
             + (p_psi * l + p_bar * s) * relative_entropy(rho_m, rho_p))
    return TheoremTwoWitness(p_psi, p_bar, q_plus, q_minus, u, k, l, r, s, R, R_rel)


def fixed_basis_sqd_nats(rho, basis: ProjectiveBasis, x: float) -> float:
    rho = validate_density(rho)
    return LN2 * (corr.conditional_entropy_weak(rho, basis, x) - corr.conditional_entropy_AB(rho))


def finite_difference_derivative(rho, basis: ProjectiveBasis, x: float,
                                 step: float = FD_STEP) -> float:
    """Central difference of the fixed-basis super discord (nats) in x."""
    return (fixed_basis_sqd_nats(rho, basis, x + step)
            - fixed_basis_sqd_nats(rho, basis, x - step)) / (2.0 * step)


def _random_basis(rng: np.random.Generator) -> ProjectiveBasis:
    # uniform on the sphere
    return qubit_basis(math.acos(rng.uniform(-1.0, 1.0)), rng.uniform(0.0, 2 * math.pi))


def check_derivative_identity(trials: int, seed: int) -> VerificationReport:
    """R agreement, R >= 0, witness signs, and the finite-difference identity."""
    report = VerificationReport()
    for i in range(trials):
        trial_seed = seed + i
        rng = np.random.default_rng(trial_seed)
        rho = random_density(rng, "full-rank")
        basis = _random_basis(rng)
        x = float(rng.uniform(0.05, 3.0))
        params = f"theta={basis.theta:.6f};phi={basis.phi:.6f};x={x:.6f}"
        w = compute_R(rho, basis, x)
        report.record("R-forms-agree", abs(w.R - w.R_relative) - R_AGREE_TOL,
                      seed=trial_seed, parameters=params,
                      observed=abs(w.R - w.R_relative), bound=R_AGREE_TOL)
        report.record("R-nonnegative", -w.R - R_POSITIVE_TOL, seed=trial_seed,
                      parameters=params, observed=w.R, bound=-R_POSITIVE_TOL)
        smallest = min(w.u, w.k, w.l, w.r, w.s)
        report.record("witness-nonnegative", -smallest, seed=trial_seed,
                      parameters=params, observed=smallest, bound=0.0)
        fd = finite_difference_derivative(rho, basis, x)
        gap = abs(fd - derivative_from_R(w.R, x))
        report.record("derivative-identity", gap - DERIVATIVE_TOL, seed=trial_seed,
                      parameters=params, observed=gap, bound=DERIVATIVE_TOL)
    return report


# -- dominance and endpoints ----------------------------------------------

def _ensemble(trials: int, seed: int, kind: str):
    for i in range(trials):
        yield seed + i, random_density(seed + i, kind)


def check_theorem1(trials: int, seed: int, xs=(0.1, 0.5, 1.0, 2.0), kind: str = "full-rank",
                   settings: corr.OptimizationSettings = corr.DEFAULT_SETTINGS) -> VerificationReport:
    """D_w >= D on a seeded ensemble, plus per-basis S_w >= S at a random basis.

    For ``kind='pure'`` it also checks D_w >= entanglement entropy for x <= 1.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    report = VerificationReport()
    for trial_seed, rho in _ensemble(trials, seed, kind):
        d = corr.quantum_discord(rho, settings)
        ent = corr.entanglement_entropy_pure(rho) if kind == "pure" else None
        basis = _random_basis(np.random.default_rng(trial_seed))
        s_strong = corr.conditional_entropy_strong(rho, basis)
        for x in xs:
            dw = corr.super_quantum_discord(rho, x, settings)
            params = f"kind={kind};x={x:g}"
            report.record("dominance", (d - DOMINANCE_TOL) - dw, seed=trial_seed,
                          parameters=params, observed=dw, bound=d - DOMINANCE_TOL)
            s_weak = corr.conditional_entropy_weak(rho, basis, x)
            report.record("dominance-per-basis", (s_strong - 1e-9) - s_weak,
                          seed=trial_seed, parameters=params + f";theta={basis.theta:.6f}",
                          observed=s_weak, bound=s_strong - 1e-9)
            if ent is not None and x <= 1.0:
                report.record("exceeds-entanglement", (ent - DOMINANCE_TOL) - dw,
                              seed=trial_seed, parameters=params, observed=dw,
                              bound=ent - DOMINANCE_TOL)
    return report


def check_endpoints(trials: int, seed: int, kind: str = "full-rank",
                    settings: corr.OptimizationSettings = corr.DEFAULT_SETTINGS) -> VerificationReport:
    """D_w(0) = I and D_w(inf) = D."""
    report = VerificationReport()
    for trial_seed, rho in _ensemble(trials, seed, kind):
        mi = corr.mutual_information(rho)
        d = corr.quantum_discord(rho, settings)
        gap0 = abs(corr.super_quantum_discord(rho, 0.0, settings) - mi)
        gap_inf = abs(corr.super_quantum_discord(rho, STRONG, settings) - d)
        report.record("endpoint-x0", gap0 - ENDPOINT_MI_TOL, seed=trial_seed,
                      parameters=f"kind={kind}", observed=gap0, bound=ENDPOINT_MI_TOL)
        report.record("endpoint-inf", gap_inf - ENDPOINT_D_TOL, seed=trial_seed,
                      parameters=f"kind={kind}", observed=gap_inf, bound=ENDPOINT_D_TOL)
    return report


# -- monotonicity ---------------------------------------------------------

DEFAULT_X_GRID = tuple(0.25 * k for k in range(21))


def check_monotone_sequence(report: VerificationReport, name: str, xs, values, tol: float,
                            seed=None) -> None:
    for (x0, v0), (x1, v1) in zip(zip(xs, values), zip(xs[1:], values[1:])):
        report.record(name, (v1 - v0) - tol, seed=seed,
                      parameters=f"x={x0:g}->{x1:g}", observed=v1, bound=v0 + tol)


def check_theorem2(trials: int, seed: int, x_grid=DEFAULT_X_GRID, kind: str = "full-rank",
                   settings: corr.OptimizationSettings = corr.DEFAULT_SETTINGS) -> VerificationReport:
    """Non-increasing D_w along ``x_grid``, at a fixed basis and minimised.

    The fixed basis is the minimiser at x = 0, where the objective is flat
    and the deterministic tie-break selects the first grid point.
    """
    xs = [float(x) for x in x_grid]
    if not xs or xs[0] != 0.0 or any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("x_grid must start at 0 and be strictly increasing")
    report = VerificationReport()
    for trial_seed, rho in _ensemble(trials, seed, kind):
        s_cond = corr.conditional_entropy_AB(rho)
        basis = corr.minimize_over_bases(rho, 0.0, settings).basis
        fixed = [corr.conditional_entropy_weak(rho, basis, x) - s_cond for x in xs]
        check_monotone_sequence(report, "monotone-fixed-basis", xs, fixed,
                                FIXED_MONOTONE_TOL, seed=trial_seed)
        minimized = [corr.super_quantum_discord(rho, x, settings) for x in xs]
        check_monotone_sequence(report, "monotone-minimized", xs, minimized,
                                MIN_MONOTONE_TOL, seed=trial_seed)
    return report


# -- weak operator algebra ---------------------------------------------------

def _signed_operator(basis: ProjectiveBasis, s: float) -> np.ndarray:
    """P(s) for a signed finite strength s."""
    t = math.tanh(s)
    return weak_amplitude(t) * basis.pi_psi + weak_amplitude(-t) * basis.pi_psi_bar


def weak_operator_algebra_check(basis: ProjectiveBasis, x: float, y: float) -> VerificationReport:
    """P(0) = I/sqrt2, completeness, [P(x), P(-x)] = 0 and P(x)P(y) ~ P(x+y)."""
    x, y = check_strength(x), check_strength(y)
    report = VerificationReport()
    params = f"theta={basis.theta:.6f};phi={basis.phi:.6f};x={x:g};y={y:g}"

    def rec(name, dev):
        report.record(name, dev - ALGEBRA_TOL, parameters=params, observed=dev, bound=ALGEBRA_TOL)

    p0 = weak_operators(basis, 0.0)
    rec("P0-identity", max(np.abs(p0.plus - qmat.IDENTITY / math.sqrt(2)).max(),
                           np.abs(p0.minus - qmat.IDENTITY / math.sqrt(2)).max()))
    pair = weak_operators(basis, x)
    comp = qmat.dagger(pair.plus) @ pair.plus + qmat.dagger(pair.minus) @ pair.minus
    rec("completeness", float(np.abs(comp - qmat.IDENTITY).max()))
    rec("commutation", float(np.abs(pair.plus @ pair.minus - pair.minus @ pair.plus).max()))
    if pair.strong:
        rec("strong-limit", max(np.abs(pair.plus - basis.pi_psi_bar).max(),
                                np.abs(pair.minus - basis.pi_psi).max()))
    if x + y < 20.0:
        prod = _signed_operator(basis, x) @ _signed_operator(basis, y)
        target = _signed_operator(basis, x + y)
        # the Pi_psi coefficient of an operator a Pi_psi + b Pi_psibar is <psi|op|psi>
        c = (basis.ket.conj() @ prod @ basis.ket) / (basis.ket.conj() @ target @ basis.ket)
        rec("composition", float(np.abs(prod / c - target).max()))
    return report


def check_operator_algebra(trials: int, seed: int) -> VerificationReport:
    report = VerificationReport()
    for i in range(trials):
        rng = np.random.default_rng(seed + i)
        basis = _random_basis(rng)
        x, y = rng.uniform(0.0, 3.0, size=2)
        report.merge(weak_operator_algebra_check(basis, float(x), float(y)))
    report.merge(weak_operator_algebra_check(qubit_basis(0.0, 0.0), STRONG, 0.0))
    return report


CHECKS = ("dominance", "dominance-pure", "endpoints", "monotonicity", "operator-algebra",
          "derivative-identity")


def run_all(trials: int, seed: int,
            settings: corr.OptimizationSettings = corr.DEFAULT_SETTINGS) -> dict[str, VerificationReport]:
    """Every check family, keyed by name, in a fixed order."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    pure_trials = max(1, trials // 4)
    return {
        "dominance": check_theorem1(trials, seed, settings=settings),
        "dominance-pure": check_theorem1(pure_trials, seed, kind="pure", settings=settings),
        "endpoints": check_endpoints(trials, seed, settings=settings),
        "monotonicity": check_theorem2(max(1, trials // 4), seed, settings=settings),
        "operator-algebra": check_operator_algebra(trials, seed),
        "derivative-identity": check_derivative_identity(trials, seed),
    }
