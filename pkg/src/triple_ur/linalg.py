"""Small complex linear algebra helpers for 2x2 and 4x4 operators.

Everything here operates on plain numpy arrays (complex128). Matrices are
tiny, so clarity and strict validation win over performance tricks.
"""

from dataclasses import dataclass

import numpy as np

HERMITICITY_ATOL = 1e-8
PSD_ATOL = 1e-8
EIGEN_CLIP = 1e-10

IDENTITY2 = np.eye(2, dtype=complex)
IDENTITY4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}


class NonHermitianInput(ValueError):
    """Raised when a matrix expected to be Hermitian is too asymmetric."""


class NotPSD(ValueError):
    """Raised when a matrix expected to be PSD has a clearly negative eigenvalue."""


@dataclass(frozen=True)
class HermitianEigenResult:
    """Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.

    ``vectors`` holds orthonormal eigenvectors as columns, so that
    ``vectors @ diag(values) @ vectors.conj().T`` reconstructs the input.
    """

    values: np.ndarray
    vectors: np.ndarray


def as_complex_matrix(m, dim=None) -> np.ndarray:
    """Coerce input to a square complex128 array and reject non-finite entries."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if dim is not None and a.shape[0] != dim:
        raise ValueError(f"expected a {dim}x{dim} matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(float))):
        raise ValueError("matrix has non-finite entries")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).conj().T


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two 2x2 operators (row-major convention)."""
    return np.kron(as_complex_matrix(a, 2), as_complex_matrix(b, 2))


def hermiticity_defect(m: np.ndarray) -> float:
    """Largest entrywise deviation |m - m^dagger|."""
    m = np.asarray(m)
    return float(np.abs(m - dagger(m)).max())


def hermitian_eigen(h, atol: float = HERMITICITY_ATOL) -> HermitianEigenResult:
    """Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.

    The input is symmetrized as (H + H^dagger)/2 before the solve; inputs whose
    asymmetry exceeds ``atol`` raise NonHermitianInput instead of being
    silently symmetrized.
    """
    h = as_complex_matrix(h)
    defect = hermiticity_defect(h)
    if defect > atol:
        raise NonHermitianInput(f"hermiticity defect {defect:.3e} exceeds {atol:.1e}")
    hs = (h + dagger(h)) / 2
    w, v = np.linalg.eigh(hs)
    order = np.argsort(w)[::-1]
    return HermitianEigenResult(values=w[order].copy(), vectors=v[:, order].copy())


def sqrtm_psd(h, atol: float = PSD_ATOL) -> np.ndarray:
    """Hermitian PSD square root S of h, with S @ S == h.

    Eigenvalues in (-EIGEN_CLIP, 0) are treated as floating-point noise and
    clipped to zero; anything below -``atol`` raises NotPSD.
    """
    eig = hermitian_eigen(h)
    if eig.values.min() < -atol:
        raise NotPSD(f"minimum eigenvalue {eig.values.min():.3e} below -{atol:.1e}")
    w = np.clip(eig.values, 0.0, None)
    v = eig.vectors
    return (v * np.sqrt(w)) @ dagger(v)
