"""The four triple uncertainty functionals and the tightness ratios.

The functionals compare the product (f, h) or sum (g, k) of rotated-component
uncertainties against a lower bound built from rotated expectations, with the
tight constant lambda = 2/sqrt(3). Components are rotated by a local unitary
U = U1 x U2; conjugating the operators by U is evaluated by conjugating the
state with U^dagger, which is algebraically identical and cheaper.
"""

import math
from dataclasses import dataclass

import numpy as np

from .linalg import dagger
from .observables import AXES, build_observables
from .states import assert_density

LAMBDA_TIGHT = 2.0 / math.sqrt(3.0)

RATIO_FORMS = ("J_product", "J_additive", "K_product", "K_additive")

DEGENERACY_ATOL = 1e-12


class DegenerateDenominator(ZeroDivisionError):
    """The tightness ratio is undefined: the bound side vanishes."""


@dataclass(frozen=True)
class LocalUnitaryParams:
    """Angles (theta1, phi1, theta2, phi2) of the product rotation U1 x U2.

    Angles are wrapped into [-pi, pi]; the rotation landscape is periodic.
    """

    theta1: float
    phi1: float
    theta2: float
    phi2: float

    def __post_init__(self):
        for name in ("theta1", "phi1", "theta2", "phi2"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, _wrap_angle(float(value)))

    def as_array(self) -> np.ndarray:
        return np.array([self.theta1, self.phi1, self.theta2, self.phi2])


def _wrap_angle(x: float) -> float:
    return float((x + np.pi) % (2.0 * np.pi) - np.pi)


@dataclass(frozen=True)
class UncertaintyReport:
    """Values of the four functionals at one (state, rotation) pair.

    deltas holds (dJx, dJy, dJz, dKx, dKy, dKz); expectations holds
    (<Rx>, <Ry>, <Rz>, <Kx>, <Ky>, <Kz>), all for the rotated components.
    """

    f: float
    g: float
    h: float
    k: float
    deltas: tuple
    expectations: tuple
    lambda_used: float = LAMBDA_TIGHT


def _single_qubit_rotation(theta: float, phi: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array(
        [
            [c, s * np.exp(-1j * phi)],
            [-s * np.exp(1j * phi), c],
        ]
    )


def local_unitary(params: LocalUnitaryParams) -> np.ndarray:
    """4x4 product rotation U1 x U2."""
    return np.kron(
        _single_qubit_rotation(params.theta1, params.phi1),
        _single_qubit_rotation(params.theta2, params.phi2),
    )


# Flattened operator stacks for fast trace evaluation: tr(rho @ O) is the dot
# product of O (transposed, flattened) with rho (flattened).
def _trace_stack(ops):
    return np.stack([np.asarray(o).T.reshape(16) for o in ops])


_OBS = build_observables()
_J_OPS = [_OBS.J[l] for l in AXES]
_K_OPS = [_OBS.K[l] for l in AXES]
_STACK_FIRST = _trace_stack(_J_OPS + _K_OPS)  # <J_l>, <K_l>
_STACK_SECOND = _trace_stack([o @ o for o in _J_OPS + _K_OPS])  # <J_l^2>, <K_l^2>


def _rotated_moments(rho: np.ndarray, u4: np.ndarray):
    """First and second moments of the rotated J and K components.

    Returns (means, seconds), each length 6 ordered Jx, Jy, Jz, Kx, Ky, Kz.
    """
    rho_eff = (dagger(u4) @ rho) @ u4
    flat = rho_eff.reshape(16)
    means = (_STACK_FIRST @ flat).real
    seconds = (_STACK_SECOND @ flat).real
    return means, seconds


def functional_values(rho: np.ndarray, u4: np.ndarray):
    """(f, g, h, k, deltas, expectations) for a state and explicit 4x4 rotation.

    No state validation; used in inner optimizer loops.
    """
    means, seconds = _rotated_moments(rho, u4)
    variances = np.maximum(seconds - means**2, 0.0)
    deltas = np.sqrt(variances)
    dJ, dK = deltas[:3], deltas[3:]
    eK = means[3:]
    eR = eK / 4.0

    lam3_over_8 = LAMBDA_TIGHT**3 / 8.0
    f = dJ.prod() - math.sqrt(abs(lam3_over_8 * eR.prod()))
    g = variances[:3].sum() - (LAMBDA_TIGHT / 2.0) * np.abs(eR).sum()
    h = dK.prod() - math.sqrt(abs(lam3_over_8 * eK.prod()))
    k = variances[3:].sum() - (LAMBDA_TIGHT / 2.0) * np.abs(eK).sum()
    return f, g, h, k, deltas, np.concatenate([eR, eK])


def eval_functions(rho, params: LocalUnitaryParams) -> UncertaintyReport:
    """Evaluate f, g, h, k and per-component moments at (rho, U(params))."""
    rho = assert_density(rho)
    u4 = local_unitary(params)
    f, g, h, k, deltas, expect = functional_values(rho, u4)
    return UncertaintyReport(
        f=float(f),
        g=float(g),
        h=float(h),
        k=float(k),
        deltas=tuple(float(d) for d in deltas),
        expectations=tuple(float(e) for e in expect),
    )


def lambda_ratio(rho, form: str) -> float:
    """Tightness ratio of one relation on an unrotated state.

    Product forms return (64 prod(var^2) / prod(<.>^2))^(1/6); additive forms
    return 2 sum(var) / sum(|<.>|). The infimum of each over physical states
    is the tight constant 2/sqrt(3).
    """
    if form not in RATIO_FORMS:
        raise ValueError(f"unknown form {form!r}; expected one of {RATIO_FORMS}")
    rho = assert_density(rho)
    means, seconds = _rotated_moments(rho, np.eye(4, dtype=complex))
    variances = np.maximum(seconds - means**2, 0.0)
    if form.startswith("J"):
        var3 = variances[:3]
        expect3 = means[3:] / 4.0  # <R_l>
    else:
        var3 = variances[3:]
        expect3 = means[3:]
    if form.endswith("product"):
        if np.abs(expect3).min() < DEGENERACY_ATOL:
            raise DegenerateDenominator(
                f"{form}: an expectation magnitude is below {DEGENERACY_ATOL:.0e}"
            )
        return float((64.0 * (var3**2).prod() / (expect3**2).prod()) ** (1.0 / 6.0))
    denom = np.abs(expect3).sum()
    if denom < DEGENERACY_ATOL:
        raise DegenerateDenominator(f"{form}: expectation sum is below {DEGENERACY_ATOL:.0e}")
    return float(2.0 * var3.sum() / denom)
