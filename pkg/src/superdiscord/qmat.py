"""Dense complex matrix kernel for single- and two-qubit operators.

Matrices are plain ``numpy`` arrays of shape (2, 2) or (4, 4); the
subsystem ordering is always A (x) B with A the first tensor factor, so
basis states are laid out as |00>, |01>, |10>, |11>.
"""
from __future__ import annotations

import numpy as np

HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


class MatrixDimensionError(ValueError):
    pass


class EigenvalueError(ArithmeticError):
    pass


def as_matrix(m, dims=(2, 4)) -> np.ndarray:
    """Coerce ``m`` to a complex square array with an allowed dimension."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in dims:
        raise MatrixDimensionError(
            f"expected a square matrix of dimension {dims}, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def dagger(m) -> np.ndarray:
    return np.conj(as_matrix(m)).T


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product a (x) b of two 2x2 matrices.

    Entry ``[2i + k, 2j + l]`` equals ``a[i, j] * b[k, l]``.
    """
    a = as_matrix(a, dims=(2,))
    b = as_matrix(b, dims=(2,))
    return np.kron(a, b)


def partial_trace(m, keep: str) -> np.ndarray:
    """Reduce a 4x4 operator to subsystem ``keep`` ('A' or 'B')."""
    m = as_matrix(m, dims=(4,))
    t = m.reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("ikjk->ij", t)
    if keep == "B":
        return np.einsum("kikj->ij", t)
    raise ValueError(f"keep must be 'A' or 'B', not {keep!r}")


def sandwich(k, rho) -> np.ndarray:
    """Return ``k @ rho @ k^dagger`` (unnormalised)."""
    k = as_matrix(k)
    rho = as_matrix(rho)
    if k.shape != rho.shape:
        raise MatrixDimensionError(
            f"cannot sandwich {rho.shape} with operator {k.shape}")
    return k @ rho @ np.conj(k).T


def hermiticity_defect(m) -> float:
    m = as_matrix(m)
    return float(np.max(np.abs(m - np.conj(m).T)))


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def hermitian_eigenvalues(m, tol: float = JACOBI_TOL,
                          max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a self-adjoint matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` with a
    diagonal unitary and then applies an ordinary real Givens rotation, so
    one rotation diagonalises a 2x2 block exactly.

    Returns
    -------
    numpy.ndarray
        Real eigenvalues in descending order.
    """
    a = as_matrix(m).copy()
    defect = hermiticity_defect(a)
    if defect > HERMITIAN_TOL:
        raise ValueError(f"matrix is not self-adjoint (max |m - m^H| = {defect:.3e})")
    a = 0.5 * (a + np.conj(a).T)
    n = a.shape[0]
    for _ in range(max_sweeps):
        if _offdiag_norm(a) < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                theta = 0.5 * np.arctan2(2.0 * mag, aqq - app)
                c, s = np.cos(theta), np.sin(theta)
                g = np.eye(n, dtype=complex)
                # columns p, q of diag(1, conj(phase)) @ [[c, s], [-s, c]]
                g[p, p] = c
                g[p, q] = s
                g[q, p] = -s * np.conj(phase)
                g[q, q] = c * np.conj(phase)
                a = np.conj(g).T @ a @ g
    else:
        if _offdiag_norm(a) >= tol:
            raise EigenvalueError(
                f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    return np.sort(np.diag(a).real)[::-1]
