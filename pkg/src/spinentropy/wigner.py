"""Squared Wigner small-d matrix elements.

Two routes compute ``|d^j_{m',m}(beta)|^2``:

``sum``
    The standard finite sum over ``k`` of products of half-angle powers.
    Finite at every angle, including ``0`` and ``pi``; this is the primary
    numeric path.
``factored``
    A trigonometric prefactor ``G`` times a squared Jacobi polynomial with
    upper parameters ``(m'-m, m'+m)`` that may be negative integers. The
    prefactor carries negative powers of ``sin`` or ``cos`` of ``beta/2``,
    so this route is evaluated in log space and refused within ``EPS`` of
    the endpoints.

Matrices use the tabular layout: row index ``r`` is ``m' = j - r`` and
column index ``c`` is ``m = j - c``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError, PathDisagreement, ProjectionError
from .special_functions import (
    LegendreParams,
    _jacobi_coefficients,
    assoc_legendre,
    factorial_ratio,
    jacobi_sum_xy,
    log_factorial,
)

EPS = 1e-6
ROUTE_TOL = 1e-10


@dataclass(frozen=True, order=True)
class HalfInt:
    """A spin or projection stored exactly as twice its value."""

    twice: int

    def __post_init__(self):
        if int(self.twice) != self.twice:
            raise ProjectionError(f"twice-value must be an integer, got {self.twice!r}")
        object.__setattr__(self, "twice", int(self.twice))

    @classmethod
    def of(cls, value) -> "HalfInt":
        """Coerce ``value`` (HalfInt, int, float, Fraction or ``"3/2"``) to a HalfInt.

        Numbers are read as the spin value itself, so ``HalfInt.of(1.5)``
        has ``twice == 3``.
        """
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, str):
            value = Fraction(value.strip())
        doubled = Fraction(value) * 2
        if doubled.denominator != 1:
            raise ProjectionError(f"{value!r} is not a multiple of 1/2")
        return cls(int(doubled))

    @property
    def value(self) -> float:
        return self.twice / 2

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"


def half(value) -> HalfInt:
    return HalfInt.of(value)


def check_spin(j) -> HalfInt:
    j = half(j)
    if j.twice < 0:
        raise ProjectionError(f"spin must be nonnegative, got {j}")
    return j


def check_projection(j: HalfInt, m) -> HalfInt:
    m = half(m)
    if abs(m.twice) > j.twice or (j.twice - m.twice) % 2:
        raise ProjectionError(f"projection {m} is not valid for spin {j}")
    return m


def check_angle(beta: float) -> float:
    beta = float(beta)
    if not 0.0 <= beta <= math.pi:
        raise DomainError(f"angle must lie in [0, pi], got {beta!r}")
    return beta


def projections(j, ascending: bool = False) -> list[HalfInt]:
    """Projections ``j, j-1, ..., -j`` (or the reverse)."""
    j = check_spin(j)
    out = [HalfInt(t) for t in range(j.twice, -j.twice - 1, -2)]
    return out[::-1] if ascending else out


# --- sum route --------------------------------------------------------------


@lru_cache(maxsize=None)
def _sum_terms(J: int, MP: int, M: int) -> tuple:
    """(coefficient, cos power, sin power) triples; arguments are twice-values."""
    jpm, jmm = (J + MP) // 2, (J - MP) // 2  # j+m', j-m'
    jp, jm = (J + M) // 2, (J - M) // 2  # j+m, j-m
    d = (MP - M) // 2  # m'-m
    numer = (
        math.factorial(jpm) * math.factorial(jmm) * math.factorial(jp) * math.factorial(jm)
    )
    out = []
    for k in range(max(0, -d), min(jp, jmm) + 1):
        denom = (
            math.factorial(jp - k) * math.factorial(k) * math.factorial(jmm - k) * math.factorial(k + d)
        )
        coef = math.sqrt(Fraction(numer, denom * denom))
        if (k + d) % 2:
            coef = -coef
        out.append((coef, J - 2 * k - d, 2 * k + d))
    return tuple(out)


def d_element_sum(j, mp, m, beta: float) -> float:
    """Signed ``d^j_{m',m}(beta)`` from the finite sum over ``k``."""
    j = check_spin(j)
    mp, m = check_projection(j, mp), check_projection(j, m)
    beta = check_angle(beta)
    c, s = math.cos(beta / 2), math.sin(beta / 2)
    return math.fsum(coef * c**ec * s**es for coef, ec, es in _sum_terms(j.twice, mp.twice, m.twice))


def d_squared_sum(j, mp, m, beta: float) -> float:
    """``|d^j_{m',m}(beta)|^2`` by the standard sum formula; valid on all of ``[0, pi]``."""
    return d_element_sum(j, mp, m, beta) ** 2


# --- factored route ---------------------------------------------------------


def _factored_shape(J: int, MP: int, M: int):
    n = (J - MP) // 2  # j - m'
    a = (MP - M) // 2  # m' - m
    b = (MP + M) // 2  # m' + m
    log_ratio = (
        log_factorial((J + MP) // 2)
        + log_factorial((J - MP) // 2)
        - log_factorial((J + M) // 2)
        - log_factorial((J - M) // 2)
    )
    return n, a, b, log_ratio


def _check_interior(beta: float) -> float:
    beta = check_angle(beta)
    if beta < EPS or beta > math.pi - EPS:
        raise DomainError(f"factored route needs beta in [{EPS}, pi - {EPS}], got {beta!r}")
    return beta


def log_trig_prefactor(j, mp, m, beta: float) -> float:
    """Natural log of ``G^j_{m',m}(beta)``."""
    j = check_spin(j)
    mp, m = check_projection(j, mp), check_projection(j, m)
    beta = _check_interior(beta)
    _, a, b, log_ratio = _factored_shape(j.twice, mp.twice, m.twice)
    return log_ratio + 2 * b * math.log(math.cos(beta / 2)) + 2 * a * math.log(math.sin(beta / 2))


def trig_prefactor(j, mp, m, beta: float) -> float:
    """``G = (j+m')!(j-m')!/((j+m)!(j-m)!) * (cos^{m'+m}(beta/2) sin^{m'-m}(beta/2))^2``."""
    return math.exp(log_trig_prefactor(j, mp, m, beta))


def jacobi_factor(j, mp, m, beta: float) -> float:
    """``P_{j-m'}^{(m'-m, m'+m)}(cos beta)``, evaluated from half-angle quantities."""
    j = check_spin(j)
    mp, m = check_projection(j, mp), check_projection(j, m)
    beta = check_angle(beta)
    n, a, b, _ = _factored_shape(j.twice, mp.twice, m.twice)
    s2, c2 = math.sin(beta / 2) ** 2, math.cos(beta / 2) ** 2
    return jacobi_sum_xy(n, a, b, -s2, c2)


def d_squared_factored(j, mp, m, beta: float) -> float:
    """``G^j_{m',m}(beta) * (P_{j-m'}^{(m'-m, m'+m)}(cos beta))^2``.

    The product is formed as ``exp(log G + 2 log|P|)`` so the removable
    singularities of ``G`` never overflow.
    """
    p = jacobi_factor(j, mp, m, beta)
    if p == 0.0:
        _check_interior(beta)
        return 0.0
    return math.exp(log_trig_prefactor(j, mp, m, beta) + 2.0 * math.log(abs(p)))


# --- matrices ---------------------------------------------------------------


@dataclass(frozen=True)
class DMatrix:
    """Table of squared d-matrix elements at one angle.

    ``sq[r, c]`` holds ``|d^j_{m',m}|^2`` with ``m' = j - r`` and ``m = j - c``.
    """

    j: HalfInt
    beta: float
    sq: np.ndarray = field(repr=False)
    route: str = "sum"

    def __post_init__(self):
        self.sq.setflags(write=False)

    @property
    def size(self) -> int:
        return self.j.twice + 1

    def index(self, m) -> int:
        """Row/column index of projection ``m``."""
        m = check_projection(self.j, m)
        return (self.j.twice - m.twice) // 2

    def __getitem__(self, key) -> float:
        mp, m = key
        return float(self.sq[self.index(mp), self.index(m)])

    def row(self, mp) -> np.ndarray:
        return self.sq[self.index(mp)]

    def column(self, m) -> np.ndarray:
        return self.sq[:, self.index(m)]


@lru_cache(maxsize=None)
def _sum_plan(J: int):
    coefs, ecos, esin, bounds = [], [], [], [0]
    for MP in range(J, -J - 1, -2):
        for M in range(J, -J - 1, -2):
            for coef, ec, es in _sum_terms(J, MP, M):
                coefs.append(coef)
                ecos.append(ec)
                esin.append(es)
            bounds.append(len(coefs))
    return np.array(coefs), np.array(ecos), np.array(esin), tuple(bounds)


@lru_cache(maxsize=None)
def _factored_plan(J: int):
    coefs, powx, powy, bounds, log_ratio, pa, pb = [], [], [], [0], [], [], []
    for MP in range(J, -J - 1, -2):
        for M in range(J, -J - 1, -2):
            n, a, b, lr = _factored_shape(J, MP, M)
            for s, coef in enumerate(_jacobi_coefficients(n, float(a), float(b))):
                if coef != 0.0:
                    coefs.append(coef)
                    powx.append(s)
                    powy.append(n - s)
            bounds.append(len(coefs))
            log_ratio.append(lr)
            pa.append(a)
            pb.append(b)
    return (
        np.array(coefs),
        np.array(powx),
        np.array(powy),
        tuple(bounds),
        np.array(log_ratio),
        np.array(pa),
        np.array(pb),
    )


def _segment_fsum(terms: np.ndarray, bounds: tuple) -> np.ndarray:
    flat = terms.tolist()
    return np.array([math.fsum(flat[lo:hi]) for lo, hi in zip(bounds[:-1], bounds[1:])])


def _matrix_sum(J: int, beta: float) -> np.ndarray:
    coefs, ecos, esin, bounds = _sum_plan(J)
    c, s = math.cos(beta / 2), math.sin(beta / 2)
    d = _segment_fsum(coefs * np.power(c, ecos) * np.power(s, esin), bounds)
    return (d * d).reshape(J + 1, J + 1)


def _matrix_factored(J: int, beta: float) -> np.ndarray:
    coefs, powx, powy, bounds, log_ratio, pa, pb = _factored_plan(J)
    s2, c2 = math.sin(beta / 2) ** 2, math.cos(beta / 2) ** 2
    p = _segment_fsum(coefs * np.power(-s2, powx) * np.power(c2, powy), bounds)
    log_g = log_ratio + pb * math.log(c2) + pa * math.log(s2)
    out = np.zeros_like(p)
    nz = p != 0.0
    out[nz] = np.exp(log_g[nz] + 2.0 * np.log(np.abs(p[nz])))
    return out.reshape(J + 1, J + 1)


def _both(j: HalfInt, beta: float):
    beta = _check_interior(beta)
    by_sum = _matrix_sum(j.twice, beta)
    return by_sum, float(np.max(np.abs(by_sum - _matrix_factored(j.twice, beta))))


def route_gap(j, beta: float) -> float:
    """Largest entrywise difference between the sum and factored matrices."""
    return _both(check_spin(j), beta)[1]


def d_matrix(j, beta: float, route: str = "sum") -> DMatrix:
    """All squared elements for spin ``j`` at angle ``beta``.

    ``route`` is ``"sum"``, ``"factored"`` or ``"both"``. With ``"both"`` the
    two routes are compared entrywise and :class:`PathDisagreement` is
    raised when they differ by more than ``ROUTE_TOL``; the sum-route
    values are returned.
    """
    j = check_spin(j)
    if route == "sum":
        return DMatrix(j, check_angle(beta), _matrix_sum(j.twice, check_angle(beta)), "sum")
    if route == "factored":
        beta = _check_interior(beta)
        return DMatrix(j, beta, _matrix_factored(j.twice, beta), "factored")
    if route == "both":
        by_sum, gap = _both(j, beta)
        if gap > ROUTE_TOL:
            raise PathDisagreement(f"sum and factored routes differ by {gap:.3e} at j={j}, beta={beta!r}")
        return DMatrix(j, float(beta), by_sum, "sum")
    raise ValueError(f"unknown route {route!r}")


@dataclass(frozen=True)
class SymmetryReport:
    j: HalfInt
    beta: float
    transpose: float  # max |d~_{m',m} - d~_{m,m'}|
    reflection: float  # max |d~_{m',m} - d~_{-m,-m'}|

    @property
    def max_violation(self) -> float:
        return max(self.transpose, self.reflection)


def check_symmetries(j, beta: float) -> SymmetryReport:
    """Largest violation of the transpose and reflection symmetries of the squared table."""
    dm = d_matrix(j, beta)
    sq = dm.sq
    # (m', m) -> (-m, -m') is the anti-transpose in the tabular layout
    return SymmetryReport(
        dm.j,
        dm.beta,
        float(np.max(np.abs(sq - sq.T))),
        float(np.max(np.abs(sq - sq[::-1, ::-1].T))),
    )


def legendre_specialization(c, m, beta: float) -> float:
    """``(c-m)!/(c+m)! * (P_c^m(cos beta))^2`` for integer spin ``c`` and ``m' = 0``."""
    c = check_spin(c)
    if not c.is_integer:
        raise ProjectionError(f"Legendre specialization needs an integer spin, got {c}")
    m = check_projection(c, m)
    beta = check_angle(beta)
    cc, mm = c.twice // 2, m.twice // 2
    p = assoc_legendre(LegendreParams(cc, mm), math.cos(beta))
    return factorial_ratio((cc - mm,), (cc + mm,)) * p * p
