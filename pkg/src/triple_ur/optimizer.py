"""Maximization of the uncertainty functionals over local rotations.

Multi-start Nelder-Mead over (theta1, phi1, theta2, phi2): a batch of seeded
quasi-random starts plus a fixed coarse lattice that includes the known optimum
directions, followed by a coordinate-wise golden-section polish. The landscape
is smooth but multimodal with symmetry-equivalent optima, so a derivative-free
method with many starts is the robust choice.
"""

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import minimize
from scipy.stats import qmc

from .states import assert_density
from .uncertainty import LocalUnitaryParams, functional_values, local_unitary

FUNCTIONALS = ("f", "g", "h", "k")
_FUNC_INDEX = {name: i for i, name in enumerate(FUNCTIONALS)}

_PI = np.pi
# Coarse lattice of start points; the first entries cover the identity and the
# rotation directions at which the functionals attain their known maxima on
# Bell-type and product states.
_LATTICE = np.array(
    [
        [0.0, 0.0, 0.0, 0.0],
        [_PI / 2, 0.0, 0.0, 0.0],
        [0.0, 0.0, _PI / 2, 0.0],
        [_PI / 2, 0.0, _PI / 2, 0.0],
        [-3 * _PI / 8, 0.0, _PI / 8, 0.0],
        [_PI / 8, 0.0, -3 * _PI / 8, 0.0],
        [_PI / 4, 0.0, -_PI / 4, 0.0],
        [_PI / 4, 0.0, _PI / 4, 0.0],
        [_PI / 4, _PI / 4, _PI / 4, _PI / 4],
        [_PI / 4, _PI / 2, _PI / 4, _PI / 2],
        [_PI / 8, _PI / 4, -3 * _PI / 8, _PI / 4],
        [-_PI / 8, _PI / 2, _PI / 8, -_PI / 2],
        [_PI / 3, 0.0, _PI / 6, 0.0],
        [_PI / 2, _PI / 2, 0.0, 0.0],
        [_PI / 6, -_PI / 4, _PI / 3, _PI / 4],
        [3 * _PI / 8, _PI / 4, -_PI / 8, -_PI / 4],
    ]
)

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class NotConverged(RuntimeError):
    """No simplex start met the convergence criterion."""


@dataclass(frozen=True)
class OptimizerConfig:
    """Search settings: total starts, per-start iteration cap, simplex
    tolerance, and the seed of the quasi-random start generator."""

    starts: int = 32
    max_iter: int = 2000
    tol: float = 1e-10
    seed: int = 20240901

    @staticmethod
    def from_file(path) -> "OptimizerConfig":
        """Read key=value lines (starts, max_iter, tol, seed); '#' comments."""
        values = {}
        with open(path, "r", encoding="utf-8") as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError(f"expected key=value, got {line!r}")
                key, _, val = line.partition("=")
                values[key.strip()] = val.strip()
        cfg = OptimizerConfig()
        casts = {"starts": int, "max_iter": int, "tol": float, "seed": int}
        unknown = set(values) - set(casts)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return replace(cfg, **{k: casts[k](v) for k, v in values.items()})


@dataclass(frozen=True)
class OptimizationResult:
    best_value: float
    best_params: LocalUnitaryParams
    evaluations: int
    converged: bool


def _wrap(x: np.ndarray) -> np.ndarray:
    return (x + _PI) % (2.0 * _PI) - _PI


def _start_points(config: OptimizerConfig) -> np.ndarray:
    lattice = _LATTICE[: config.starts]
    n_random = max(config.starts - len(lattice), 0)
    if n_random == 0:
        return lattice
    sampler = qmc.Sobol(d=4, scramble=True, seed=config.seed)
    random_pts = (sampler.random(n_random) * 2.0 - 1.0) * _PI
    return np.vstack([lattice, random_pts])


def _golden_polish(objective, x0: np.ndarray, window: float = 0.02, sweeps: int = 2):
    """Coordinate-wise golden-section refinement around x0 (minimization)."""
    x = x0.copy()
    evals = 0
    for _ in range(sweeps):
        for c in range(x.size):
            a, b = x[c] - window, x[c] + window
            p = b - _GOLDEN * (b - a)
            q = a + _GOLDEN * (b - a)

            def at(v):
                y = x.copy()
                y[c] = v
                return objective(y)

            fp, fq = at(p), at(q)
            evals += 2
            while b - a > 1e-12:
                if fp < fq:
                    b, q, fq = q, p, fp
                    p = b - _GOLDEN * (b - a)
                    fp = at(p)
                else:
                    a, p, fp = p, q, fq
                    q = a + _GOLDEN * (b - a)
                    fq = at(q)
                evals += 1
            x[c] = (a + b) / 2.0
    return x, objective(x), evals + 1


def maximize_objective(objective, config: OptimizerConfig | None = None):
    """Maximize a scalar function of four angles over [-pi, pi]^4.

    Returns (best_value, best_params_array, evaluations, converged). Ties in
    the maximum are broken by the lexicographically smallest wrapped parameter
    vector, which makes the multi-start merge order-independent.
    """
    config = config or OptimizerConfig()
    if config.starts < 1:
        raise ValueError("starts must be >= 1")

    def neg(x):
        return -objective(_wrap(x))

    evaluations = 0
    any_converged = False
    candidates = []
    for x0 in _start_points(config):
        res = minimize(
            neg,
            x0,
            method="Nelder-Mead",
            options={
                "xatol": config.tol,
                "fatol": config.tol * 1e-2,
                "maxiter": config.max_iter,
                "maxfev": 4 * config.max_iter,
            },
        )
        evaluations += res.nfev
        any_converged = any_converged or bool(res.success)
        candidates.append((-res.fun, _wrap(res.x)))

    if not any_converged:
        raise NotConverged(f"no start converged within {config.max_iter} iterations")

    best_value, best_x = max(candidates, key=lambda c: (c[0], tuple(-c[1])))
    polished_x, polished_neg, polish_evals = _golden_polish(neg, best_x)
    evaluations += polish_evals
    if -polished_neg > best_value:
        best_value, best_x = -polished_neg, _wrap(polished_x)
    return best_value, best_x, evaluations, any_converged


def maximize(rho, func: str, config: OptimizerConfig | None = None) -> OptimizationResult:
    """Maximize one of the functionals f, g, h, k over local rotations."""
    if func not in FUNCTIONALS:
        raise ValueError(f"unknown functional {func!r}; expected one of {FUNCTIONALS}")
    rho = assert_density(rho)
    idx = _FUNC_INDEX[func]

    def objective(x):
        u4 = local_unitary(LocalUnitaryParams(*x))
        return functional_values(rho, u4)[idx]

    best_value, best_x, evaluations, converged = maximize_objective(objective, config)
    return OptimizationResult(
        best_value=float(best_value),
        best_params=LocalUnitaryParams(*best_x),
        evaluations=int(evaluations),
        converged=converged,
    )


def h_closed_form(alpha: float, u: LocalUnitaryParams) -> float:
    """Closed-form value of the K-product functional on a Bell-type state.

    Evaluates h at (|Psi(alpha)><Psi(alpha)|, U(u)) directly from the angles:
        h = -sqrt(h1) / (2 sqrt(2) 3^(3/4)) + sqrt(h2 h3 h4) / 128,
    with the four trigonometric subterms below. Matches the trace-based
    evaluation to floating-point accuracy; used as an independent oracle for
    the optimizer and the operator pipeline.
    """
    t1, p1, t2, p2 = u.theta1, u.phi1, u.theta2, u.phi2
    c, s = np.cos, np.sin

    h1 = abs(
        c(2 * alpha) ** 3
        * (c(2 * t1) + c(2 * t2))
        * (s(2 * t1) * c(p1) + s(2 * t2) * c(p2))
        * (s(2 * t1) * s(p1) + s(2 * t2) * s(p2))
    )
    h2 = (
        6.0
        - c(4 * t1)
        + 4.0 * c(2 * t1) * c(2 * t2)
        - 2.0 * c(4 * alpha) * (c(2 * t1) + c(2 * t2)) ** 2
        - c(4 * t2)
        + 8.0 * s(2 * alpha) * s(2 * t1) * s(2 * t2) * c(p1 + p2)
    )
    h3 = (
        14.0
        + 2.0 * c(4 * t1) * c(p1) ** 2
        + 16.0 * c(t1) ** 2 * (c(t2) ** 2 * s(2 * alpha) - c(4 * alpha) * c(p1) ** 2 * s(t1) ** 2)
        - c(2 * p2) * (1.0 + 16.0 * s(2 * alpha) * c(t1) ** 2 * s(t2) ** 2)
        - 16.0 * s(2 * alpha) * s(t1) ** 2 * s(t2) ** 2 * s(2 * p1) * s(2 * p2)
        + 2.0
        * c(p2)
        * (
            8.0 * c(p1) * s(2 * alpha) ** 2 * s(2 * t1) * s(2 * t2)
            + c(p2) * (c(4 * t2) - 2.0 * c(4 * alpha) * s(2 * t2) ** 2)
        )
        - c(2 * p1) * (1.0 + 16.0 * s(2 * alpha) * s(t1) ** 2 * (c(2 * t2) * c(p2) ** 2 + s(p2) ** 2))
    )
    h4 = (
        c(2 * p2) * (1.0 - 16.0 * s(2 * alpha) * c(t1) ** 2 * s(t2) ** 2)
        + c(2 * p1) * (1.0 - 16.0 * s(2 * alpha) * s(t1) ** 2 * (c(p2) ** 2 + c(2 * t2) * s(p2) ** 2))
        + 2.0
        * (
            7.0
            + (c(4 * t1) - 2.0 * c(4 * alpha) * s(2 * t1) ** 2) * s(p1) ** 2
            + 8.0 * s(2 * alpha) ** 2 * s(2 * t1) * s(2 * t2) * s(p1) * s(p2)
            + (c(4 * t2) - 2.0 * c(4 * alpha) * s(2 * t2) ** 2) * s(p2) ** 2
            + 8.0 * s(2 * alpha) * (-c(t1) ** 2 * c(t2) ** 2 + s(t1) ** 2 * s(t2) ** 2 * s(2 * p1) * s(2 * p2))
        )
    )
    # h2..h4 are non-negative up to roundoff; clamp so the square roots stay real
    h2, h3, h4 = (max(v, 0.0) for v in (h2, h3, h4))
    return float(
        -math.sqrt(h1) / (2.0 * math.sqrt(2.0) * 3.0**0.75)
        + math.sqrt(h2) * math.sqrt(h3) * math.sqrt(h4) / 128.0
    )
