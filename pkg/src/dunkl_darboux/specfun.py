"""Special functions needed by the closed-form solutions.

Provides the Kummer confluent hypergeometric function M = 1F1, the
associated Laguerre function with real (non-integer) degree, and the
modified Bessel functions I0 and I1.  All routines are self-contained
double-precision evaluations; each returns the value together with a
conservative absolute error estimate.

The Tricomi function U (second-kind confluent hypergeometric) is
intentionally not implemented: bounded solutions discard it, so only
its first-kind companion is ever evaluated here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# Direct summation of the 1F1 series alternates for negative arguments
# and loses about |z|/ln 10 digits to cancellation; below this z the
# e^z-prefactor identity reroutes through a same-sign series.
KUMMER_SERIES_Z_MIN = -1.0
KUMMER_Z_MAX = 700.0
KUMMER_MAX_TERMS = 600

# I0/I1 seam between ascending series and asymptotic expansion.  At 18
# the optimally truncated asymptotic tail is below 1e-14 relative, so
# both branches agree to better than 1e-12.
BESSEL_SERIES_CUTOFF = 18.0
BESSEL_Z_MAX = 600.0

_EPS = 2.2204460492503131e-16


@dataclass(frozen=True)
class SpecialValue:
    """Function value with a conservative absolute error estimate."""

    value: float
    est_abs_error: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise DomainError("special function value is not finite")
        if self.est_abs_error < 0:
            raise DomainError("error estimate must be nonnegative")


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def kummer_m(a: float, b: float, z: float) -> SpecialValue:
    """Confluent hypergeometric function M(a; b; z) = 1F1(a; b; z).

    For nonpositive integer a the series truncates and the exact
    polynomial is evaluated by Horner's rule.  For z below
    ``KUMMER_SERIES_Z_MIN`` the identity M(a;b;z) = e^z M(b-a;b;-z)
    routes the evaluation through a non-alternating series.
    """
    for name, val in (("a", a), ("b", b), ("z", z)):
        if not math.isfinite(val):
            raise DomainError(f"kummer_m: argument {name} is not finite")
    if _is_nonpositive_integer(b):
        raise DomainError("kummer_m: b must not be a nonpositive integer")
    if _is_nonpositive_integer(a):
        # Terminating series: the polynomial has no argument restriction
        # (beyond overflow, caught by the finiteness contract).
        return _kummer_polynomial(int(-a), b, z)
    if abs(z) > KUMMER_Z_MAX:
        raise DomainError(f"kummer_m: |z| exceeds supported range {KUMMER_Z_MAX}")
    if z < KUMMER_SERIES_Z_MIN:
        inner = _kummer_series(b - a, b, -z)
        scale = math.exp(z)
        return SpecialValue(scale * inner.value,
                            scale * inner.est_abs_error + _EPS * abs(scale * inner.value))
    return _kummer_series(a, b, z)


def _kummer_polynomial(n: int, b: float, z: float) -> SpecialValue:
    # Coefficients c_k = (-n)_k / ((b)_k k!), summed by Horner's rule.
    coeffs = [1.0]
    c = 1.0
    for k in range(n):
        c *= (-n + k) / ((b + k) * (k + 1))
        coeffs.append(c)
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * z + c
    return SpecialValue(acc, (n + 1) * _EPS * max(1.0, abs(acc)))


def _kummer_series(a: float, b: float, z: float) -> SpecialValue:
    term = 1.0
    terms = [term]
    peak = 1.0
    for k in range(KUMMER_MAX_TERMS):
        term *= (a + k) * z / ((b + k) * (k + 1))
        terms.append(term)
        peak = max(peak, abs(term))
        if abs(term) < 1e-18 * peak and k > 2:
            break
    value = math.fsum(terms)
    # Truncation bound from the last term plus rounding at the series peak.
    est = abs(terms[-1]) + _EPS * peak * len(terms) ** 0.5
    return SpecialValue(value, est)


def assoc_laguerre(degree: float, alpha: float, z: float) -> SpecialValue:
    """Associated Laguerre function L_degree^alpha(z) for real degree.

    Evaluated through L_n^a(z) = binom(n+a, n) * M(-n; a+1; z), with the
    binomial extended to real degree by Gamma-function ratios.
    """
    for name, val in (("degree", degree), ("alpha", alpha), ("z", z)):
        if not math.isfinite(val):
            raise DomainError(f"assoc_laguerre: argument {name} is not finite")
    if _is_nonpositive_integer(alpha + 1.0):
        raise DomainError("assoc_laguerre: alpha+1 must not be a nonpositive integer")
    if _is_nonpositive_integer(degree + 1.0):
        # Gamma(degree+1) pole: the prefactor vanishes identically.
        return SpecialValue(0.0, 0.0)
    try:
        lg_num, sign_num = math.lgamma(degree + alpha + 1.0), _gamma_sign(degree + alpha + 1.0)
        lg_den1, sign_den1 = math.lgamma(degree + 1.0), _gamma_sign(degree + 1.0)
        lg_den2, sign_den2 = math.lgamma(alpha + 1.0), _gamma_sign(alpha + 1.0)
    except ValueError as exc:
        raise DomainError(f"assoc_laguerre: Gamma pole in prefactor: {exc}") from exc
    prefactor = sign_num * sign_den1 * sign_den2 * math.exp(lg_num - lg_den1 - lg_den2)
    hyp = kummer_m(-degree, alpha + 1.0, z)
    value = prefactor * hyp.value
    est = abs(prefactor) * hyp.est_abs_error + _EPS * abs(value)
    return SpecialValue(value, est)


def _gamma_sign(x: float) -> float:
    """Sign of Gamma(x): positive for x > 0, alternating between poles."""
    if x > 0:
        return 1.0
    if x == math.floor(x):
        raise ValueError(f"Gamma pole at {x}")
    return 1.0 if math.floor(x) % 2 == 0 else -1.0


def bessel_i(order: int, z: float) -> SpecialValue:
    """Modified Bessel function of the first kind, I0 or I1.

    Ascending power series below ``BESSEL_SERIES_CUTOFF`` (all terms
    positive, no cancellation), asymptotic expansion above it.
    """
    if order not in (0, 1):
        raise DomainError(f"bessel_i: unsupported order {order}")
    if not math.isfinite(z):
        raise DomainError("bessel_i: z is not finite")
    if abs(z) > BESSEL_Z_MAX:
        raise DomainError(f"bessel_i: |z| exceeds supported range {BESSEL_Z_MAX}")

    sign = -1.0 if (z < 0 and order == 1) else 1.0
    az = abs(z)
    if az < BESSEL_SERIES_CUTOFF:
        res = _bessel_series(order, az)
    else:
        res = _bessel_asymptotic(order, az)
    return SpecialValue(sign * res.value, res.est_abs_error)


def _bessel_series(order: int, z: float) -> SpecialValue:
    q = 0.25 * z * z
    term = (0.5 * z) ** order / math.factorial(order)
    terms = [term]
    k = 0
    while abs(term) > 1e-18 * abs(terms[0]) or k < 4:
        k += 1
        term *= q / (k * (k + order))
        terms.append(term)
        if k > 200:
            break
    value = math.fsum(terms)
    return SpecialValue(value, abs(term) + _EPS * value * len(terms) ** 0.5)


def _bessel_asymptotic(order: int, z: float) -> SpecialValue:
    # I_nu(z) ~ e^z / sqrt(2 pi z) * sum_k (-1)^k a_k(nu) / z^k,
    # a_k = prod_{j=1..k} (4 nu^2 - (2j-1)^2) / (8 k!) ... truncated at
    # the smallest term.
    mu = 4.0 * order * order
    term = 1.0
    total = term
    smallest = abs(term)
    for k in range(1, 60):
        term *= -(mu - (2 * k - 1) ** 2) / (8.0 * k * z)
        if abs(term) > smallest:
            break
        smallest = abs(term)
        total += term
    scale = math.exp(z) / math.sqrt(2.0 * math.pi * z)
    value = scale * total
    return SpecialValue(value, scale * smallest + _EPS * abs(value))
