"""Operator families on two qubits and their moments against a state.

J is the cross product of the two spin vectors (S = sigma/2), K is the total
angular momentum, and R = K/4. All nine component operators are Hermitian
4x4 matrices, built once and cached in an ObservableSet.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import IDENTITY2, PAULI, kron
from .states import SymmetricStateParams

AXES = ("x", "y", "z")

VARIANCE_CLIP = 1e-12
VARIANCE_FLOOR = -1e-10


class NonHermitianObservable(ValueError):
    """Expectation of a supposedly Hermitian operator came out complex."""


class NegativeVariance(ArithmeticError):
    """Variance below the numerical-noise floor."""


@dataclass(frozen=True)
class ObservableSet:
    """The nine component operators J, K, R along x, y, z."""

    J: dict
    K: dict
    R: dict

    def all_named(self) -> dict:
        out = {}
        for axis in AXES:
            out[f"J{axis}"] = self.J[axis]
            out[f"K{axis}"] = self.K[axis]
            out[f"R{axis}"] = self.R[axis]
        return out


@lru_cache(maxsize=1)
def build_observables() -> ObservableSet:
    """Construct J = S1 x S2, K = S1 + S2 and R = K/4 from S = sigma/2."""
    S1 = {l: kron(PAULI[l] / 2, IDENTITY2) for l in AXES}
    S2 = {l: kron(IDENTITY2, PAULI[l] / 2) for l in AXES}
    J = {
        "x": S1["y"] @ S2["z"] - S1["z"] @ S2["y"],
        "y": S1["z"] @ S2["x"] - S1["x"] @ S2["z"],
        "z": S1["x"] @ S2["y"] - S1["y"] @ S2["x"],
    }
    K = {l: S1[l] + S2[l] for l in AXES}
    R = {l: K[l] / 4 for l in AXES}
    return ObservableSet(J=J, K=K, R=R)


def expectation(op, rho) -> float:
    """Tr(rho @ op) for a Hermitian operator; the imaginary residue must be noise."""
    value = complex(np.trace(np.asarray(rho, dtype=complex) @ np.asarray(op, dtype=complex)))
    if abs(value.imag) > 1e-10:
        raise NonHermitianObservable(f"imaginary expectation {value.imag:.3e}")
    return float(value.real)


def variance(op, rho) -> float:
    """<op^2> - <op>^2, clamped to zero inside the numerical-noise window."""
    op = np.asarray(op, dtype=complex)
    var = expectation(op @ op, rho) - expectation(op, rho) ** 2
    if var < VARIANCE_FLOOR:
        raise NegativeVariance(f"variance {var:.3e} below {VARIANCE_FLOOR:.0e}")
    return max(var, 0.0)


def stddev(op, rho) -> float:
    return float(np.sqrt(variance(op, rho)))


def variance_closed_form_J(params: SymmetricStateParams, axis: str) -> float:
    """Closed-form (Delta J_axis)^2 on a symmetric-family state.

    For the x component:
        (2 - 2 T_xx - T_yz^2 + 2 T_yz T_zy - T_zy^2) / 16,
    and cyclically for y and z. On the symmetric family the paired
    off-diagonals are equal, so the quadratic terms cancel.
    """
    T = params.correlation_matrix()
    i = AXES.index(axis)
    j, k = (i + 1) % 3, (i + 2) % 3
    return (2.0 - 2.0 * T[i, i] - T[j, k] ** 2 + 2.0 * T[j, k] * T[k, j] - T[k, j] ** 2) / 16.0


def k_expectation_closed_form(params: SymmetricStateParams) -> float:
    """<K_l> = (a + b)/2 on the symmetric family (same for every axis)."""
    return (params.a + params.b) / 2.0


def k_second_moment_closed_form(params: SymmetricStateParams) -> float:
    """<K_l^2> = (1 + t1)/2 on the symmetric family (same for every axis)."""
    return (1.0 + params.t1) / 2.0


def r_expectation_closed_form(params: SymmetricStateParams) -> float:
    """<R_l> = (a + b)/8 on the symmetric family (same for every axis)."""
    return (params.a + params.b) / 8.0
