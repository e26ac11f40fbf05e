"""Jacobi and associated Legendre polynomials.

Two independent routes are provided for Jacobi polynomials:

* :func:`jacobi_sum` expands ``P_n^(a,b)(z)`` as a finite sum with
  generalized binomial coefficients. It stays finite for negative
  integer ``a`` and ``b``, which the d-matrix factorization needs.
* :func:`jacobi_recurrence` uses the classical three-term recurrence and
  is only valid for ``a, b > -1``. It serves as the cross-check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError

__all__ = [
    "JacobiParams",
    "LegendreParams",
    "generalized_binomial",
    "jacobi_sum",
    "jacobi_sum_xy",
    "jacobi_recurrence",
    "assoc_legendre",
    "log_factorial",
    "factorial_ratio",
]

# degree above which terms are accumulated with math.fsum
COMPENSATED_DEGREE = 8


@dataclass(frozen=True)
class JacobiParams:
    n: int
    a: float
    b: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"Jacobi degree must be a nonnegative integer, got {self.n!r}")


@dataclass(frozen=True)
class LegendreParams:
    c: int
    m: int

    def __post_init__(self):
        if int(self.c) != self.c or self.c < 0:
            raise DomainError(f"Legendre degree must be a nonnegative integer, got {self.c!r}")
        if int(self.m) != self.m or abs(self.m) > self.c:
            raise DomainError(f"Legendre order must satisfy |m| <= c, got m={self.m!r}, c={self.c!r}")


@lru_cache(maxsize=4096)
def _log_factorial_cached(k: int) -> float:
    if k <= 2000:
        # math.log handles big ints exactly before rounding
        return math.log(math.factorial(k))
    return math.lgamma(k + 1.0)


def log_factorial(k: int) -> float:
    """Natural log of ``k!``."""
    if int(k) != k or k < 0:
        raise DomainError(f"log_factorial needs a nonnegative integer, got {k!r}")
    return _log_factorial_cached(int(k))


def factorial_ratio(numer, denom) -> float:
    """``prod(k! for k in numer) / prod(k! for k in denom)``, formed in log space."""
    log_value = math.fsum(log_factorial(k) for k in numer) - math.fsum(log_factorial(k) for k in denom)
    return math.exp(log_value)


def generalized_binomial(x: float, k: int) -> float:
    """``x (x-1) ... (x-k+1) / k!`` for real ``x`` and integer ``k >= 0``.

    Vanishes exactly when ``x`` is a nonnegative integer smaller than ``k``.
    """
    if k < 0:
        return 0.0
    out = 1.0
    for i in range(k):
        out *= (x - i) / (i + 1)
    return out


@lru_cache(maxsize=8192)
def _jacobi_coefficients(n: int, a: float, b: float) -> tuple:
    return tuple(
        generalized_binomial(n + a, n - s) * generalized_binomial(n + b, s) for s in range(n + 1)
    )


def jacobi_sum_xy(n: int, a: float, b: float, x: float, y: float) -> float:
    """Evaluate the finite Jacobi sum with ``x = (z-1)/2`` and ``y = (z+1)/2`` given.

    Callers that know the half-angle form ``x = -sin(t/2)**2``,
    ``y = cos(t/2)**2`` avoid the cancellation in ``cos(t) - 1``.
    """
    coeffs = _jacobi_coefficients(int(n), float(a), float(b))
    terms = [c * x**s * y ** (n - s) for s, c in enumerate(coeffs) if c != 0.0]
    if n > COMPENSATED_DEGREE:
        return math.fsum(terms)
    return sum(terms, 0.0)


def jacobi_sum(params: JacobiParams, z: float) -> float:
    """Jacobi polynomial ``P_n^(a,b)(z)`` by the generalized-binomial sum.

    .. math::

        P_n^{(a,b)}(z) = \\sum_{s=0}^{n} \\binom{n+a}{n-s}\\binom{n+b}{s}
            \\left(\\frac{z-1}{2}\\right)^s \\left(\\frac{z+1}{2}\\right)^{n-s}

    Parameters
    ----------
    params : JacobiParams
        Degree ``n`` and real parameters ``a``, ``b`` (negative integers allowed).
    z : float
        Argument in ``[-1, 1]``.
    """
    if not -1.0 <= z <= 1.0:
        raise DomainError(f"Jacobi argument must lie in [-1, 1], got {z!r}")
    return jacobi_sum_xy(params.n, params.a, params.b, (z - 1.0) / 2.0, (z + 1.0) / 2.0)


def jacobi_recurrence(params: JacobiParams, z: float) -> float:
    """Jacobi polynomial by the three-term recurrence in the degree.

    Only defined here for ``a > -1`` and ``b > -1``.
    """
    n, a, b = params.n, params.a, params.b
    if a <= -1 or b <= -1:
        raise DomainError(f"recurrence requires a > -1 and b > -1, got a={a!r}, b={b!r}")
    p_prev = 1.0
    if n == 0:
        return p_prev
    p_curr = (a + 1) + (a + b + 2) * (z - 1) / 2
    for k in range(2, n + 1):
        s = 2 * k + a + b
        c1 = 2 * k * (k + a + b) * (s - 2)
        c2 = (s - 1) * (s * (s - 2) * z + a * a - b * b)
        c3 = 2 * (k + a - 1) * (k + b - 1) * s
        p_prev, p_curr = p_curr, (c2 * p_curr - c3 * p_prev) / c1
    return p_curr


def _assoc_legendre_nonneg(c: int, m: int, x: float) -> float:
    # P_m^m, then upward in degree
    somx2 = math.sqrt((1.0 - x) * (1.0 + x))
    pmm = 1.0
    fact = 1.0
    for _ in range(m):
        pmm *= -fact * somx2
        fact += 2.0
    if c == m:
        return pmm
    pmmp1 = x * (2 * m + 1) * pmm
    if c == m + 1:
        return pmmp1
    for ll in range(m + 2, c + 1):
        pll = (x * (2 * ll - 1) * pmmp1 - (ll + m - 1) * pmm) / (ll - m)
        pmm, pmmp1 = pmmp1, pll
    return pmmp1


def assoc_legendre(params: LegendreParams, x: float) -> float:
    """Associated Legendre function ``P_c^m(x)`` with the Condon-Shortley phase.

    Negative orders use ``P_c^{-m} = (-1)^m (c-m)!/(c+m)! P_c^m``.
    """
    if not -1.0 <= x <= 1.0:
        raise DomainError(f"Legendre argument must lie in [-1, 1], got {x!r}")
    c, m = int(params.c), int(params.m)
    if m >= 0:
        return _assoc_legendre_nonneg(c, m, x)
    mm = -m
    sign = -1.0 if mm % 2 else 1.0
    return sign * factorial_ratio((c - mm,), (c + mm,)) * _assoc_legendre_nonneg(c, mm, x)
