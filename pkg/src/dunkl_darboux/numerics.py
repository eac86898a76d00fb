"""Grid containers, finite-difference derivatives and real-line quadrature.

Step-size defaults balance truncation against rounding at double
precision; every stencil applies one Richardson extrapolation step.
Quadrature over the real line is delegated to adaptive Gauss-Kronrod
integration (QAGI variable substitution onto a finite interval), with
the integration split exactly at x = 0 so that no panel straddles the
|x|^w kink of the weight function.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy import integrate as _integrate

from .errors import AccuracyError, DomainError, EvaluationError

DEFAULT_SPATIAL_STEP_SCALE = 1e-4
DEFAULT_PARAM_STEP_SCALE = 1e-5
QUAD_TOL = 1e-10


@dataclass(frozen=True)
class GridFunction:
    """Function sampled on a strictly increasing 1-D grid."""

    nodes: np.ndarray
    values: np.ndarray
    deriv_values: Optional[np.ndarray] = None

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)
        if nodes.ndim != 1 or values.shape != nodes.shape:
            raise DomainError("GridFunction: nodes and values must be 1-D and equal length")
        if not np.all(np.diff(nodes) > 0):
            raise DomainError("GridFunction: nodes must be strictly increasing")
        if not (np.all(np.isfinite(nodes)) and np.all(np.isfinite(values))):
            raise DomainError("GridFunction: entries must be finite")
        if self.deriv_values is not None:
            dv = np.asarray(self.deriv_values, dtype=float)
            object.__setattr__(self, "deriv_values", dv)
            if dv.shape != nodes.shape or not np.all(np.isfinite(dv)):
                raise DomainError("GridFunction: derivative samples invalid")


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    est_abs_error: float
    n_evals: int

    def __post_init__(self):
        if self.est_abs_error < 0 or self.n_evals <= 0:
            raise DomainError("QuadratureResult: invalid error estimate or eval count")


def default_step(y: float) -> float:
    return DEFAULT_SPATIAL_STEP_SCALE * max(1.0, abs(y))


def _sample(f: Callable[[float], float], node: float) -> float:
    val = f(node)
    if not math.isfinite(val):
        raise EvaluationError(f"non-finite sample at {node}", node=node)
    return val


def derivative(f: Callable[[float], float], y: float, order: int, h: Optional[float] = None) -> float:
    """Central-difference derivative of the given order (1..3).

    One Richardson extrapolation step is applied, giving O(h^4)
    truncation for orders 1 and 2.
    """
    if order not in (1, 2, 3):
        raise DomainError(f"derivative: unsupported order {order}")
    if h is None:
        h = default_step(y)
    if h <= 0:
        raise DomainError("derivative: step must be positive")

    def stencil(step: float) -> float:
        if order == 1:
            return (_sample(f, y + step) - _sample(f, y - step)) / (2 * step)
        if order == 2:
            return (_sample(f, y + step) - 2 * _sample(f, y) + _sample(f, y - step)) / step**2
        return (_sample(f, y + 2 * step) - 2 * _sample(f, y + step)
                + 2 * _sample(f, y - step) - _sample(f, y - 2 * step)) / (2 * step**3)

    coarse = stencil(h)
    fine = stencil(h / 2)
    return (4 * fine - coarse) / 3


def parameter_derivative(family: Callable[[float, float], float], eps0: float, y: float,
                         h_eps: Optional[float] = None) -> float:
    """d/d(eps) of family(eps, y) at eps0, by a 4-point central stencil.

    The 4-point rule is the Richardson extrapolation of the 2-point
    central difference, with O(h^4) truncation error.
    """
    if h_eps is None:
        h_eps = DEFAULT_PARAM_STEP_SCALE * max(1.0, abs(eps0))
    if h_eps <= 0:
        raise DomainError("parameter_derivative: step must be positive")
    samples = {}
    for k in (-2, -1, 1, 2):
        val = family(eps0 + k * h_eps, y)
        if not math.isfinite(val):
            raise EvaluationError(f"non-finite family sample at eps={eps0 + k * h_eps}",
                                  node=eps0 + k * h_eps)
        samples[k] = val
    return (8 * (samples[1] - samples[-1]) - (samples[2] - samples[-2])) / (12 * h_eps)


def integrate_real_line(f: Callable[[float], float], decay_scale: float = 1.0) -> QuadratureResult:
    """Integral of f over the whole real line.

    Assumes Gaussian-type decay outside a finite core (the caller's
    contract).  The integral is split at 0 and each half handled by
    adaptive quadrature with infinite-interval substitution.
    """
    if decay_scale <= 0:
        raise DomainError("integrate_real_line: decay_scale must be positive")
    counter = {"n": 0}

    def wrapped(x: float) -> float:
        counter["n"] += 1
        if x == 0.0:
            return 0.0
        val = f(x)
        if not math.isfinite(val):
            raise EvaluationError(f"non-finite integrand at {x}", node=x)
        return val

    total = 0.0
    err = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("error", _integrate.IntegrationWarning)
        try:
            for lo, hi in ((-np.inf, 0.0), (0.0, np.inf)):
                val, abserr = _integrate.quad(wrapped, lo, hi, epsabs=QUAD_TOL,
                                              epsrel=QUAD_TOL, limit=200)
                total += val
                err += abserr
        except _integrate.IntegrationWarning as exc:
            raise AccuracyError(f"quadrature did not converge: {exc}",
                                best_estimate=total) from exc
    if err > 1e-9 * max(1.0, abs(total)):
        raise AccuracyError("quadrature error estimate above tolerance", best_estimate=total)
    return QuadratureResult(total, err, counter["n"])
