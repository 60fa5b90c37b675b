"""Density matrices: validation, the standard two-qubit families, and I/O."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from . import qmat

TRACE_TOL = 1e-10
PSD_TOL = 1e-8


class StateValidationError(ValueError):
    """A matrix failed one of the density-matrix invariants."""


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated 2x2 or 4x4 density matrix.

    The wrapped array is copied and made read-only on construction.
    """

    mat: np.ndarray = field(repr=False)

    def __post_init__(self):
        try:
            m = qmat.as_matrix(self.mat)
        except ValueError as exc:
            raise StateValidationError(str(exc)) from None
        defect = qmat.hermiticity_defect(m)
        if defect > qmat.HERMITIAN_TOL:
            raise StateValidationError(
                f"not self-adjoint: max |m - m^H| = {defect:.3e}")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise StateValidationError(f"trace is {tr.real:.12g}, expected 1")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)
        lo = self.eigenvalues[-1]
        if lo < -PSD_TOL:
            raise StateValidationError(
                f"not positive semidefinite: minimum eigenvalue {lo:.6g}")

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        """Descending spectrum (Jacobi), not clipped."""
        return qmat.hermitian_eigenvalues(self.mat)

    @cached_property
    def spectrum(self) -> np.ndarray:
        """Spectrum with small negative noise clipped and renormalised."""
        w = np.clip(self.eigenvalues, 0.0, None)
        return w / w.sum()

    def reduced(self, keep: str) -> DensityMatrix:
        return DensityMatrix(qmat.partial_trace(self.mat, keep))

    @property
    def rho_a(self) -> DensityMatrix:
        return self.reduced("A")

    @property
    def rho_b(self) -> DensityMatrix:
        return self.reduced("B")

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.mat, dtype=dtype)


def validate_density(m) -> DensityMatrix:
    if isinstance(m, DensityMatrix):
        return m
    return DensityMatrix(np.asarray(m))


def pure_schmidt(lambda0: float) -> DensityMatrix:
    """Projector onto sqrt(l0)|00> + sqrt(1 - l0)|11>."""
    if not 0.0 <= lambda0 <= 1.0:
        raise StateValidationError(f"Schmidt weight {lambda0} outside [0, 1]")
    psi = np.zeros(4, dtype=complex)
    psi[0] = np.sqrt(lambda0)
    psi[3] = np.sqrt(1.0 - lambda0)
    return DensityMatrix(np.outer(psi, psi.conj()))


SINGLET = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)


def werner(z: float) -> DensityMatrix:
    """z |Psi-><Psi-| + (1 - z) I/4, physical for z in [-1/3, 1]."""
    if not -1.0 / 3.0 - 1e-12 <= z <= 1.0 + 1e-12:
        raise StateValidationError(f"Werner parameter z={z} outside [-1/3, 1]")
    m = z * np.outer(SINGLET, SINGLET.conj()) + (1.0 - z) / 4.0 * np.eye(4)
    return DensityMatrix(m)


@dataclass(frozen=True)
class BlochNormalForm:
    a: tuple[float, float, float]
    b: tuple[float, float, float]
    c: tuple[float, float, float]

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = tuple(float(t) for t in getattr(self, name))
            if len(v) != 3:
                raise ValueError(f"{name} must have three components")
            object.__setattr__(self, name, v)

    def matrix(self) -> np.ndarray:
        m = np.eye(4, dtype=complex)
        for i, s in enumerate(qmat.PAULIS):
            m = m + self.a[i] * np.kron(s, qmat.IDENTITY)
            m = m + self.b[i] * np.kron(qmat.IDENTITY, s)
            m = m + self.c[i] * np.kron(s, s)
        return m / 4.0


def bloch_normal_form(p: BlochNormalForm) -> DensityMatrix:
    return DensityMatrix(p.matrix())


def random_density(seed, kind: str = "full-rank") -> DensityMatrix:
    """Random two-qubit state from a PCG64 generator.

    ``seed`` is an integer or a ``numpy.random.Generator``. ``kind='pure'``
    normalises a complex-normal 4-vector; ``kind='full-rank'`` returns
    G G^H / Tr(G G^H) for a complex-normal 4x4 G.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    if kind == "pure":
        v = rng.normal(size=4) + 1j * rng.normal(size=4)
        v /= np.linalg.norm(v)
        return DensityMatrix(np.outer(v, v.conj()))
    if kind == "full-rank":
        g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        m = g @ g.conj().T
        m = 0.5 * (m + m.conj().T)
        return DensityMatrix(m / np.trace(m).real)
    raise ValueError(f"unknown kind {kind!r}; use 'pure' or 'full-rank'")


def product_state(rho_a, rho_b) -> DensityMatrix:
    return DensityMatrix(qmat.tensor_product(np.asarray(rho_a), np.asarray(rho_b)))


# -- JSON state files -------------------------------------------------------

class StateFileError(ValueError):
    pass


def parse_state_json(text: str, source: str = "<string>") -> DensityMatrix:
    """Parse the JSON state format.

    Layout: ``{"dim": [2, 2], "matrix": [[[re, im], ...], ...]}`` with one
    row per basis state (product of ``dim``), entries row-major.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(
            f"{source}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise StateFileError(f"{source}: top level must be an object")
    dims = doc.get("dim")
    if (not isinstance(dims, list) or not dims
            or not all(isinstance(d, int) and d == 2 for d in dims) or len(dims) > 2):
        raise StateFileError(f"{source}: 'dim' must be [2] or [2, 2], got {dims!r}")
    n = 2 ** len(dims)
    rows = doc.get("matrix")
    if not isinstance(rows, list) or len(rows) != n:
        got = len(rows) if isinstance(rows, list) else type(rows).__name__
        raise StateFileError(f"{source}: 'matrix' must have {n} rows, got {got}")
    m = np.zeros((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise StateFileError(
                f"{source}: matrix row {i}: expected {n} entries")
        for j, entry in enumerate(row):
            if (not isinstance(entry, list) or len(entry) != 2
                    or not all(isinstance(t, (int, float)) and not isinstance(t, bool)
                               for t in entry)):
                raise StateFileError(
                    f"{source}: matrix row {i}, entry {j}: expected [re, im] pair, "
                    f"got {entry!r}")
            m[i, j] = complex(entry[0], entry[1])
    try:
        return DensityMatrix(m)
    except StateValidationError as exc:
        raise StateFileError(f"{source}: {exc}") from None


def load_state(path) -> DensityMatrix:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise StateFileError(f"{path}: cannot read state file: {exc.strerror}") from None
    return parse_state_json(text, source=str(path))


def dump_state(rho) -> str:
    m = np.asarray(rho, dtype=complex)
    dims = [2, 2] if m.shape[0] == 4 else [2]
    rows = [[[float(v.real), float(v.imag)] for v in row] for row in m]
    return json.dumps({"dim": dims, "matrix": rows})
