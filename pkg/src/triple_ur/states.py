"""Two-qubit state families: Bell-type pure states, generalized Werner states,
and the symmetric Bloch/correlation-matrix family.

Basis convention: the computational basis is ordered |00>, |01>, |10>, |11>,
with |0> the horizontal-polarization state of one photon. Spin operators use
S = sigma/2 throughout the package.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import (
    IDENTITY2,
    IDENTITY4,
    PAULI,
    as_complex_matrix,
    dagger,
    hermitian_eigen,
    hermiticity_defect,
    kron,
)

TRACE_ATOL = 1e-10
HERM_ATOL = 1e-10
PSD_FLOOR = -1e-8


class InvalidMixing(ValueError):
    """Werner mixing fraction outside [0, 1]."""


class UnphysicalState(ValueError):
    """Parameters produce a matrix failing density-matrix validation."""


@dataclass(frozen=True)
class SymmetricStateParams:
    """Bloch parameters of the symmetric family.

    Both local Bloch vectors are isotropic, a*(1,1,1) and b*(1,1,1); the spin
    correlation matrix has constant diagonal t1 and symmetric off-diagonal
    pairs (xy, xz, yz) = (t2, t3, t4).
    """

    a: float
    b: float
    t1: float
    t2: float
    t3: float
    t4: float

    def correlation_matrix(self) -> np.ndarray:
        t = self
        return np.array(
            [
                [t.t1, t.t2, t.t3],
                [t.t2, t.t1, t.t4],
                [t.t3, t.t4, t.t1],
            ]
        )


@dataclass(frozen=True)
class WernerParams:
    alpha: float  # radians
    eta: float  # mixing fraction in [0, 1]


@dataclass(frozen=True)
class DensityCheck:
    """Validation report for a candidate density matrix."""

    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float

    @property
    def valid(self) -> bool:
        return (
            self.hermiticity_defect <= HERM_ATOL
            and self.trace_defect <= TRACE_ATOL
            and self.min_eigenvalue >= PSD_FLOOR
        )


def bell_state(alpha: float) -> np.ndarray:
    """Amplitude vector cos(alpha)|00> + sin(alpha)|11>."""
    if not np.isfinite(alpha):
        raise ValueError("alpha must be finite")
    psi = np.zeros(4, dtype=complex)
    psi[0] = np.cos(alpha)
    psi[3] = np.sin(alpha)
    return psi


def density_from_pure(psi) -> np.ndarray:
    """Rank-1 projector |psi><psi| from a normalized 4-amplitude vector."""
    psi = np.asarray(psi, dtype=complex).reshape(4)
    norm = float(np.vdot(psi, psi).real)
    if abs(norm - 1.0) > 1e-12:
        raise ValueError(f"state norm {norm} is not 1 within 1e-12")
    return np.outer(psi, psi.conj())


def werner_state(alpha: float, eta: float) -> np.ndarray:
    """Generalized Werner state: eta |Psi(alpha)><Psi(alpha)| + (1-eta)/4 * I."""
    if not 0.0 <= eta <= 1.0:
        raise InvalidMixing(f"eta must be in [0, 1], got {eta}")
    return eta * density_from_pure(bell_state(alpha)) + (1.0 - eta) / 4.0 * IDENTITY4


# Fixed operator basis for the Bloch expansion of the symmetric family:
# rho = (I + a * sum_i sigma_i x 1 + b * sum_i 1 x sigma_i + sum_ij T_ij sigma_i x sigma_j) / 4
_SIGMA_SUM_1 = sum(kron(PAULI[l], IDENTITY2) for l in "xyz")
_SIGMA_SUM_2 = sum(kron(IDENTITY2, PAULI[l]) for l in "xyz")
_AXES = "xyz"
_PAULI_PRODUCTS = {
    (i, j): kron(PAULI[_AXES[i]], PAULI[_AXES[j]]) for i in range(3) for j in range(3)
}


def symmetric_state(params: SymmetricStateParams) -> np.ndarray:
    """Build the symmetric-family density matrix and validate it is physical."""
    T = params.correlation_matrix()
    rho = IDENTITY4 + params.a * _SIGMA_SUM_1 + params.b * _SIGMA_SUM_2
    for i in range(3):
        for j in range(3):
            rho = rho + T[i, j] * _PAULI_PRODUCTS[(i, j)]
    rho = rho / 4.0
    check = is_valid_density(rho)
    if check.min_eigenvalue < PSD_FLOOR:
        raise UnphysicalState(
            f"minimum eigenvalue {check.min_eigenvalue:.3e} below {PSD_FLOOR:.0e}"
        )
    return rho


# Single-qubit amplitudes whose isotropic Bloch vector (1,1,1)/sqrt(3) saturates
# all four tight relations; the second factor carries a global -i phase that
# drops out of the projector.
_SQRT3 = np.sqrt(3.0)
_PSI_EQ_1 = np.array(
    [
        np.sqrt((_SQRT3 + 1.0) / (2.0 * _SQRT3)),
        (1.0 + 1.0j) / np.sqrt(2.0 * (3.0 + _SQRT3)),
    ]
)
_PSI_EQ_2 = -1j * _PSI_EQ_1

EQUALITY_PARAMS = SymmetricStateParams(
    a=1.0 / _SQRT3, b=1.0 / _SQRT3, t1=1.0 / 3.0, t2=1.0 / 3.0, t3=1.0 / 3.0, t4=1.0 / 3.0
)


def equality_state() -> np.ndarray:
    """Separable pure product state that attains the 2/sqrt(3) bound of all
    four tight relations with nonzero values on both sides."""
    psi = np.kron(_PSI_EQ_1, _PSI_EQ_2)
    return np.outer(psi, psi.conj())


def is_valid_density(m) -> DensityCheck:
    """Report hermiticity defect, trace defect, and minimum eigenvalue of m."""
    m = as_complex_matrix(m, 4)
    herm = hermiticity_defect(m)
    trace = abs(np.trace(m) - 1.0)
    sym = (m + dagger(m)) / 2
    min_eig = float(np.linalg.eigvalsh(sym).min())
    return DensityCheck(
        hermiticity_defect=float(herm), trace_defect=float(trace), min_eigenvalue=min_eig
    )


def assert_density(m) -> np.ndarray:
    """Return m as a complex array after validating it is a density matrix."""
    m = as_complex_matrix(m, 4)
    check = is_valid_density(m)
    if not check.valid:
        raise UnphysicalState(
            "not a density matrix: "
            f"hermiticity defect {check.hermiticity_defect:.3e}, "
            f"trace defect {check.trace_defect:.3e}, "
            f"min eigenvalue {check.min_eigenvalue:.3e}"
        )
    return m


def purity(rho) -> float:
    rho = np.asarray(rho, dtype=complex)
    return float(np.trace(rho @ rho).real)


def pauli_expectations(rho) -> dict:
    """All 15 Pauli-product expectations of a two-qubit state.

    Keys are pairs like ('x', 'I'), ('I', 'z'), ('y', 'y'). Useful for
    phase-insensitive comparison of states and for tomography.
    """
    rho = np.asarray(rho, dtype=complex)
    ops = {}
    for l in _AXES:
        ops[(l, "I")] = kron(PAULI[l], IDENTITY2)
        ops[("I", l)] = kron(IDENTITY2, PAULI[l])
    for l1 in _AXES:
        for l2 in _AXES:
            ops[(l1, l2)] = kron(PAULI[l1], PAULI[l2])
    return {key: float(np.trace(rho @ op).real) for key, op in ops.items()}


def random_density(rng: np.random.Generator) -> np.ndarray:
    """Random full-rank two-qubit density matrix (Ginibre ensemble)."""
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    rho = g @ dagger(g)
    return rho / np.trace(rho).real


def density_to_text(rho) -> str:
    """Serialize a 4x4 matrix as 16 lines of 'row,col,re,im' (CSV-compatible)."""
    rho = as_complex_matrix(rho, 4)
    lines = []
    for r in range(4):
        for c in range(4):
            z = rho[r, c]
            lines.append(f"{r},{c},{z.real:.17g},{z.imag:.17g}")
    return "\n".join(lines) + "\n"


def density_from_text(text: str) -> np.ndarray:
    """Parse the 16-line 'row,col,re,im' format (commas or whitespace)."""
    rho = np.zeros((4, 4), dtype=complex)
    seen = set()
    for raw in text.strip().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 4:
            raise ValueError(f"expected 'row col re im', got {line!r}")
        r, c = int(parts[0]), int(parts[1])
        if not (0 <= r < 4 and 0 <= c < 4):
            raise ValueError(f"index out of range in line {line!r}")
        rho[r, c] = float(parts[2]) + 1j * float(parts[3])
        seen.add((r, c))
    if len(seen) != 16:
        raise ValueError(f"expected 16 entries, got {len(seen)}")
    return rho


def eigenvalues_descending(rho) -> np.ndarray:
    return hermitian_eigen(np.asarray(rho, dtype=complex), atol=1e-8).values
