"""Standard and confluent Darboux transformations on standard-form equations.

The central engineering decision: Wronskian matrices never sample
second or higher derivatives of the transformation functions.  All
rows beyond the first derivative are reduced through the governing
equation, so closed-form (u, u') pairs keep the determinants exact in
their inputs.  Supported matrix size is 4; the worked chains need at
most 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .errors import (CapabilityError, ConstructionError, DomainError,
                     SingularityError)
from .numerics import derivative, parameter_derivative
from .pointmap import SchrodingerForm

MAX_MATRIX_SIZE = 4
DEFAULT_W_FLOOR = 1e-12

KIND_STANDARD = "standard"
KIND_CONFLUENT = "confluent"


@dataclass(frozen=True)
class OdeSolution:
    """Solution of a standard-form equation: value, derivative, spectral parameter."""

    f: Callable[[float], float]
    f1: Callable[[float], float]
    eps: float


@dataclass(frozen=True)
class DarbouxChain:
    """Ordered transformation functions with their spectral parameters.

    ``energy`` fixes the energy at which the background potential is
    evaluated; the chain functions solve the background equation at
    their ``eps`` parameters (standard) or form a Jordan chain at the
    single eps (confluent).
    """

    kind: str
    funcs: Tuple[Tuple[Callable[[float], float], Callable[[float], float]], ...]
    eps: Tuple[float, ...]
    background: SchrodingerForm
    energy: float

    def __post_init__(self):
        if self.kind not in (KIND_STANDARD, KIND_CONFLUENT):
            raise DomainError(f"DarbouxChain: unknown kind {self.kind!r}")
        if self.kind == KIND_STANDARD:
            if len(self.eps) != len(self.funcs):
                raise DomainError("DarbouxChain: one eps per function required")
            if len(set(self.eps)) != len(self.eps):
                raise DomainError("DarbouxChain: standard eps must be pairwise distinct")
        else:
            if len(self.eps) != 1:
                raise DomainError("DarbouxChain: confluent chain has a single eps")

    @property
    def order(self) -> int:
        return len(self.funcs)

    def potential(self, y: float) -> float:
        return self.background.u_e(self.energy, y)


@dataclass(frozen=True)
class DarbouxOutput:
    """Transformed solution and potential on a validated domain."""

    phi_hat: Callable[[float], float]
    u_hat: Callable[[float], float]
    wronskian_floor: float


def _potential_derivs(chain: DarbouxChain, y: float, need: int):
    """U, U', U'' at y; derivatives by stencil, only taken when needed."""
    u = chain.potential(y)
    u1 = derivative(lambda t: chain.potential(t), y, 1) if need >= 1 else 0.0
    u2 = derivative(lambda t: chain.potential(t), y, 2) if need >= 2 else 0.0
    return u, u1, u2


def _column(values: Sequence[float], derivs: Sequence[float], eps: float,
            u: float, u1: float, u2: float, nrows: int,
            lower: Optional[Sequence[float]] = None) -> list:
    """Derivative ladder d^r f for r < nrows, reduced via the ODE.

    ``lower`` carries (value, derivative, second derivative) of the
    previous Jordan-chain member for the confluent inhomogeneity;
    omitted for standard columns.
    """
    f0, f1 = values[0], derivs[0]
    col = [f0, f1]
    if nrows >= 3:
        d2 = (u - eps) * f0
        if lower is not None:
            d2 -= lower[0]
        col.append(d2)
    if nrows >= 4:
        d3 = u1 * f0 + (u - eps) * f1
        if lower is not None:
            d3 -= lower[1]
        col.append(d3)
    return col[:nrows]


def _det(matrix: np.ndarray) -> float:
    """Cofactor expansion along the largest-magnitude column."""
    n = matrix.shape[0]
    if n == 1:
        return float(matrix[0, 0])
    if n == 2:
        return float(matrix[0, 0] * matrix[1, 1] - matrix[0, 1] * matrix[1, 0])
    pivot = int(np.argmax(np.abs(matrix).sum(axis=0)))
    total = 0.0
    for r in range(n):
        entry = matrix[r, pivot]
        if entry == 0.0:
            continue
        minor = np.delete(np.delete(matrix, r, axis=0), pivot, axis=1)
        sign = -1.0 if (r + pivot) % 2 else 1.0
        total += sign * entry * _det(minor)
    return total


def _build_matrix(chain: DarbouxChain, y: float,
                  include: Optional[OdeSolution]) -> np.ndarray:
    n = chain.order + (1 if include is not None else 0)
    if n > MAX_MATRIX_SIZE:
        raise CapabilityError(f"Wronskian size {n} exceeds supported maximum {MAX_MATRIX_SIZE}")
    need = max(0, n - 3)  # U-derivative order required by the ladder
    u, u1, u2 = _potential_derivs(chain, y, need)
    cols = []
    prev = None  # (value, deriv) of previous confluent member
    for j, (f, f1) in enumerate(chain.funcs):
        eps = chain.eps[j] if chain.kind == KIND_STANDARD else chain.eps[0]
        v0, v1 = f(y), f1(y)
        lower = None
        if chain.kind == KIND_CONFLUENT and j > 0:
            lower = prev
        cols.append(_column([v0], [v1], eps, u, u1, u2, n, lower=lower))
        prev = (v0, v1)
    if include is not None:
        cols.append(_column([include.f(y)], [include.f1(y)], include.eps,
                            u, u1, u2, n))
    return np.array(cols, dtype=float).T  # rows = derivative order


def _scale(matrix: np.ndarray) -> float:
    col_norm = np.max(np.abs(matrix), axis=0)
    col_norm = np.where(col_norm > 0, col_norm, 1.0)
    return float(np.prod(col_norm))


def wronskian(chain: DarbouxChain, y: float,
              include: Optional[OdeSolution] = None) -> float:
    """Wronskian of the chain functions (optionally with an extra solution)."""
    if chain.order == 0 and include is None:
        return 1.0
    matrix = _build_matrix(chain, y, include)
    return _det(matrix)


def _wronskian_with_scale(chain: DarbouxChain, y: float,
                          include: Optional[OdeSolution] = None):
    matrix = _build_matrix(chain, y, include)
    return _det(matrix), _scale(matrix)


def wronskian_first_derivative(chain: DarbouxChain, y: float) -> float:
    """W'(y) from the Abel-type reduction (orders <= 2), else stencil."""
    if chain.order == 1:
        return chain.funcs[0][1](y)
    if chain.order == 2:
        (f1, d1), (f2, d2) = chain.funcs
        if chain.kind == KIND_STANDARD:
            return (chain.eps[0] - chain.eps[1]) * f1(y) * f2(y)
        return -f1(y) ** 2
    return derivative(lambda t: wronskian(chain, t), y, 1)


def transformed_potential(chain: DarbouxChain, y: float,
                          w_floor: float = DEFAULT_W_FLOOR) -> float:
    """U-hat(y) = U(y) - 2 (log W)''.

    W' and W'' are analytic for orders <= 2 (Abel reduction of the
    chain equations); higher orders fall back to stencils on W.
    """
    u = chain.potential(y)
    n = chain.order
    if n == 0:
        return u
    if n == 1:
        f, d = chain.funcs[0]
        w, wp = f(y), d(y)
        wpp = (u - chain.eps[0]) * w
        scale = max(abs(w), abs(wp), 1.0)
    elif n == 2:
        (f1, d1), (f2, d2) = chain.funcs
        v1, v2, g1, g2 = f1(y), f2(y), d1(y), d2(y)
        w = v1 * g2 - g1 * v2
        if chain.kind == KIND_STANDARD:
            de = chain.eps[0] - chain.eps[1]
            wp = de * v1 * v2
            wpp = de * (g1 * v2 + v1 * g2)
        else:
            wp = -v1 * v1
            wpp = -2.0 * v1 * g1
        scale = max(abs(v1), abs(g1), 1.0) * max(abs(v2), abs(g2), 1.0)
    else:
        w = wronskian(chain, y)
        wp = derivative(lambda t: wronskian(chain, t), y, 1)
        wpp = derivative(lambda t: wronskian(chain, t), y, 2)
        scale = 1.0
    if abs(w) < w_floor * scale:
        raise SingularityError(f"Wronskian below floor at y={y}")
    return u - 2.0 * (wpp * w - wp * wp) / (w * w)


def transformed_solution(chain: DarbouxChain, phi: OdeSolution, y: float,
                         w_floor: float = DEFAULT_W_FLOOR) -> float:
    """Phi-hat(y) = W(u_1..u_n, Phi) / W(u_1..u_n)."""
    den, scale = _wronskian_with_scale(chain, y)
    if abs(den) < w_floor * scale:
        raise SingularityError(f"Wronskian below floor at y={y}")
    num = wronskian(chain, y, include=phi)
    return num / den


def transform(chain: DarbouxChain, phi: OdeSolution, grid) -> DarbouxOutput:
    """Bundle the transformation as callables and record the Wronskian floor."""
    grid = np.asarray(grid, dtype=float)
    floor = min(abs(wronskian(chain, float(t))) for t in grid)
    if floor <= 0:
        raise SingularityError("Wronskian vanishes on the requested domain")
    return DarbouxOutput(
        phi_hat=lambda t: transformed_solution(chain, phi, t),
        u_hat=lambda t: transformed_potential(chain, t),
        wronskian_floor=floor,
    )


def intertwining_residual(chain: DarbouxChain, output: DarbouxOutput,
                          e_eff: float, y: float, h: float = 1e-3) -> float:
    """Residual of the transformed equation at y (stencil second derivative)."""
    phh = derivative(output.phi_hat, y, 2, h)
    return phh + (e_eff - output.u_hat(y)) * output.phi_hat(y)


def chain_residuals(chain: DarbouxChain, grid, h: float = 5e-4) -> np.ndarray:
    """Max-normalized residuals of the chain equations on a grid.

    Standard: u_j'' + (eps_j - U) u_j.  Confluent: the Jordan-chain
    system with inhomogeneity -u_{j-1}.  Second derivatives come from
    stencils on the first-derivative channel.
    """
    grid = np.asarray(grid, dtype=float)
    out = np.zeros(len(chain.funcs))
    for j, (f, d) in enumerate(chain.funcs):
        eps = chain.eps[j] if chain.kind == KIND_STANDARD else chain.eps[0]
        worst = 0.0
        for y in grid:
            u = chain.potential(y)
            second = derivative(d, float(y), 1, h)
            res = second + (eps - u) * f(y)
            scale = abs(second) + abs((eps - u) * f(y))
            if chain.kind == KIND_CONFLUENT and j > 0:
                prev = chain.funcs[j - 1][0](y)
                res += prev
                scale += abs(prev)
            worst = max(worst, abs(res) / max(scale, 1e-30))
        out[j] = worst
    return out


def validate_chain(chain: DarbouxChain, grid, tol: float) -> None:
    res = chain_residuals(chain, grid)
    if np.any(res > tol):
        raise ConstructionError(
            f"chain residuals {res} exceed tolerance {tol}")


def build_confluent_chain(family: Callable[[float, float], float],
                          family_dy: Callable[[float, float], float],
                          eps1: float,
                          background: SchrodingerForm,
                          energy: float,
                          validation_grid,
                          order: int = 2,
                          h_eps: Optional[float] = None,
                          residual_tol: float = 1e-5) -> DarbouxChain:
    """Confluent chain from a parametric solution family.

    u_1 is the family at eps1; u_2 is its parametric derivative there
    (value and y-derivative channels), which solves the Jordan-chain
    equation exactly when the family solves the background equation.
    """
    if order != 2:
        raise CapabilityError("only second-order confluent chains are supported")

    def u1(y: float) -> float:
        return family(eps1, y)

    def u1p(y: float) -> float:
        return family_dy(eps1, y)

    def u2(y: float) -> float:
        return parameter_derivative(family, eps1, y, h_eps)

    def u2p(y: float) -> float:
        return parameter_derivative(family_dy, eps1, y, h_eps)

    grid = np.asarray(validation_grid, dtype=float)
    scale1 = max(abs(u1(float(y))) for y in grid)
    scale2 = max(abs(u2(float(y))) for y in grid)
    if scale2 < 1e-12 * max(scale1, 1.0):
        raise ConstructionError("family does not depend on eps: degenerate chain")

    chain = DarbouxChain(kind=KIND_CONFLUENT, funcs=((u1, u1p), (u2, u2p)),
                         eps=(eps1,), background=background, energy=energy)
    res = chain_residuals(chain, grid)
    if res[0] > 1e-7 or res[1] > residual_tol:
        raise ConstructionError(
            f"confluent chain residuals {res} exceed tolerances (1e-7, {residual_tol})")
    return chain
