"""Wootters concurrence and the analytic maximum-vs-entanglement curves.

The curves give, as functions of concurrence C (Bell-type pure states) or of
(alpha, eta) (generalized Werner states), the reference maximal values of the
uncertainty functionals. The K-product functional h has no closed-form curve
and is handled numerically elsewhere.
"""

import math
from dataclasses import dataclass

import numpy as np

from .linalg import SIGMA_Y, dagger, hermitian_eigen, sqrtm_psd
from .states import assert_density

_SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y)


class DomainError(ValueError):
    """Curve argument outside its defined domain."""


@dataclass(frozen=True)
class ConcurrenceResult:
    """Concurrence C = max(0, Lambda) with the signed combination Lambda =
    l1 - l2 - l3 - l4 of the descending spin-flip spectrum square roots."""

    concurrence: float
    lambda_signed: float
    spectrum: tuple


def concurrence(rho) -> ConcurrenceResult:
    """Wootters concurrence of a two-qubit density matrix.

    Uses the Hermitian formulation: the l_i are the square roots of the
    eigenvalues of sqrt(rho) rho_tilde sqrt(rho), which has the same spectrum
    as rho rho_tilde, with rho_tilde = (sy x sy) rho* (sy x sy).
    """
    rho = assert_density(rho)
    rho_tilde = _SPIN_FLIP @ rho.conj() @ _SPIN_FLIP
    root = sqrtm_psd(rho)
    m = root @ rho_tilde @ root
    # m is PSD up to roundoff; tiny negative eigenvalues are clipped
    eigs = hermitian_eigen(m, atol=1e-7).values
    eigs = np.clip(eigs, 0.0, None)
    lam = np.sqrt(eigs)
    signed = float(lam[0] - lam[1] - lam[2] - lam[3])
    return ConcurrenceResult(
        concurrence=max(0.0, signed), lambda_signed=signed, spectrum=tuple(float(x) for x in lam)
    )


def _check_unit_interval(value: float, name: str) -> None:
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must be in [0, 1], got {value}")


def curve_f_of_C(C: float) -> float:
    """Maximal J-product functional versus concurrence: sqrt((1+C)(3+C)^2)/(32 sqrt(2))."""
    _check_unit_interval(C, "C")
    return math.sqrt((1.0 + C) * (3.0 + C) ** 2) / (32.0 * math.sqrt(2.0))


def curve_g_of_C(C: float) -> float:
    """Maximal J-additive functional versus concurrence: (2+C)/4."""
    _check_unit_interval(C, "C")
    return (2.0 + C) / 4.0


def curve_k_of_C(C: float) -> float:
    """Maximal K-additive functional versus concurrence: 1+C."""
    _check_unit_interval(C, "C")
    return 1.0 + C


def curve_f_werner(alpha: float, eta: float) -> float:
    """Reference maximal f for the generalized Werner state:
    sqrt(1 + eta sin 2a) (2 + eta (1 + sin 2a)) / (32 sqrt(2))."""
    _check_unit_interval(eta, "eta")
    s = math.sin(2.0 * alpha)
    return math.sqrt(1.0 + eta * s) * (2.0 + eta * (1.0 + s)) / (32.0 * math.sqrt(2.0))


def curve_g_werner(alpha: float, eta: float) -> float:
    """Reference maximal g for the generalized Werner state:
    (3 + eta (1 + 2 sin 2a)) / 8."""
    _check_unit_interval(eta, "eta")
    return (3.0 + eta * (1.0 + 2.0 * math.sin(2.0 * alpha))) / 8.0


def werner_k_branch_boundary(eta: float) -> float:
    """Lower branch boundary alpha* = arcsin(1/eta - 1)/2 of the piecewise
    Werner k curve; defined for eta > 0.5."""
    if not 0.5 < eta <= 1.0:
        raise DomainError(f"branch boundary requires 0.5 < eta <= 1, got {eta}")
    return 0.5 * math.asin(1.0 / eta - 1.0)


def curve_k_werner(alpha: float, eta: float) -> float:
    """Reference maximal k for the generalized Werner state (piecewise).

    For eta <= 0.5 the quadratic branch (3 + eta - eta^2 (1 + cos 4a))/2 is
    used everywhere; for eta > 0.5 the linear branch (3 - eta (1 - 2 sin 2a))/2
    applies inside the window [alpha*, pi/2 - alpha*] and the quadratic branch
    outside. Both branches agree at the boundary.
    """
    _check_unit_interval(eta, "eta")
    quadratic = (3.0 + eta - eta**2 * (1.0 + math.cos(4.0 * alpha))) / 2.0
    if eta <= 0.5:
        return quadratic
    boundary = werner_k_branch_boundary(eta)
    if boundary <= alpha <= math.pi / 2.0 - boundary:
        return (3.0 - eta * (1.0 - 2.0 * math.sin(2.0 * alpha))) / 2.0
    return quadratic
