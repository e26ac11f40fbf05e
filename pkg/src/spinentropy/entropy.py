"""Shannon entropies, mutual information and inequality residuals (natural log)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .bipartite import (
    BipartiteTable,
    PermutationLike,
    column_vector,
    marginals,
    permute,
    resolve_permutation,
    row_vector,
    to_bipartite,
)
from .errors import PathDisagreement, ProbabilityError, SubadditivityViolation
from .wigner import (
    HalfInt,
    check_projection,
    check_spin,
    d_squared_factored,
    legendre_specialization,
    projections,
)

NONNEG_TOL = 1e-10
SHANNON_SUM_TOL = 1e-8
TWO_PATH_TOL = 1e-9


def xlogx(x: float) -> float:
    """``x ln x`` with ``0 ln 0 = 0``."""
    return x * math.log(x) if x > 0.0 else 0.0


def shannon(v: Iterable[float]) -> float:
    """``-sum p ln p`` of a probability list."""
    p = [float(x) for x in v]
    if any(x < 0 for x in p):
        raise ProbabilityError(f"negative probability {min(p)!r}")
    total = math.fsum(p)
    if abs(total - 1.0) > SHANNON_SUM_TOL:
        raise ProbabilityError(f"probabilities sum to {total!r}, not 1")
    return -math.fsum(xlogx(x) for x in p)


@dataclass(frozen=True)
class EntropyTriple:
    H_p: float
    H_pi: float
    H_Pi: float


@dataclass(frozen=True)
class InfoReport:
    beta: float | None
    triple: EntropyTriple
    I: float
    I_tl: np.ndarray | None = None  # I_tl[t-1, l-1]

    @property
    def H_p(self) -> float:
        return self.triple.H_p

    @property
    def H_pi(self) -> float:
        return self.triple.H_pi

    @property
    def H_Pi(self) -> float:
        return self.triple.H_Pi


def entropy_triple(t: BipartiteTable) -> EntropyTriple:
    # the pad zero contributes 0 ln 0 = 0 to H_p
    mg = marginals(t)
    return EntropyTriple(shannon(t.flat()), shannon(mg.pi), shannon(mg.Pi))


def information_tl(t: BipartiteTable, tt: int, l: int) -> float:
    """Per-term information ``-pi_t ln pi_t - Pi_l ln Pi_l - H_p``.

    ``tt`` is 1 or 2 and ``l`` runs over ``1..K``. Unlike the full mutual
    information this quantity can be negative.
    """
    if tt not in (1, 2):
        raise IndexError(f"t must be 1 or 2, got {tt!r}")
    if not 1 <= l <= t.K:
        raise IndexError(f"l must lie in 1..{t.K}, got {l!r}")
    mg = marginals(t)
    return -xlogx(mg.pi[tt - 1]) - xlogx(mg.Pi[l - 1]) - shannon(t.flat())


def _all_tl(t: BipartiteTable, h_p: float) -> np.ndarray:
    mg = marginals(t)
    out = np.empty((2, t.K))
    for i in range(2):
        for l in range(t.K):
            out[i, l] = -xlogx(mg.pi[i]) - xlogx(mg.Pi[l]) - h_p
    return out


def information(t: BipartiteTable, beta: float | None = None, with_tl: bool = False,
                check: bool = True) -> InfoReport:
    """Mutual information ``H_pi + H_Pi - H_p`` of the table.

    Raises
    ------
    SubadditivityViolation
        If ``check`` is set and the value falls below ``-NONNEG_TOL``. This
        cannot happen for a valid table and points to a numerical bug.
    """
    tri = entropy_triple(t)
    I = tri.H_pi + tri.H_Pi - tri.H_p
    if check and I < -NONNEG_TOL:
        raise SubadditivityViolation(f"information {I!r} < 0 at beta={beta!r}")
    return InfoReport(beta, tri, I, _all_tl(t, tri.H_p) if with_tl else None)


# --- inequality residuals ---------------------------------------------------


def probability_vector(j, axis: str, fixed, beta: float, permutation: PermutationLike = "identity",
                       ascending: bool = False, route: str = "sum", dm=None):
    if axis == "column":
        v = column_vector(j, fixed, beta, ascending=ascending, route=route, dm=dm)
    elif axis == "row":
        v = row_vector(j, fixed, beta, ascending=ascending, route=route, dm=dm)
    else:
        raise ValueError(f"axis must be 'row' or 'column', got {axis!r}")
    return permute(v, permutation)


def probability_form(j, axis: str, fixed, beta: float, permutation: PermutationLike = "identity",
                     family: str = "full", t: int | None = None, l: int | None = None,
                     ascending: bool = False) -> float:
    """Inequality left-hand side through the vector -> table -> entropy pipeline."""
    table = to_bipartite(probability_vector(j, axis, fixed, beta, permutation, ascending))
    if family == "full":
        return information(table, beta).I
    if family == "per_term":
        return information_tl(table, t, l)
    raise ValueError(f"family must be 'full' or 'per_term', got {family!r}")


def polynomial_probabilities(j, axis: str, fixed, beta: float, form: str = "jacobi",
                             ascending: bool = False) -> list[float]:
    """Squared elements along a row/column written as polynomial expressions.

    ``form="jacobi"`` uses ``G * P~`` for every element; ``form="legendre"``
    uses ``(c-m)!/(c+m)! (P_c^m(cos beta))^2`` and needs an integer spin with
    the fixed projection equal to 0.
    """
    j = check_spin(j)
    fixed = check_projection(j, fixed)
    free = projections(j, ascending=ascending)
    if form == "legendre":
        if fixed.twice != 0:
            raise ValueError("Legendre form needs the fixed projection to be 0")
        # d~_{0,m} = d~_{m,0}, so rows and columns coincide
        return [legendre_specialization(j, m, beta) for m in free]
    if form != "jacobi":
        raise ValueError(f"unknown polynomial form {form!r}")
    if axis == "column":
        return [d_squared_factored(j, mp, fixed, beta) for mp in free]
    if axis == "row":
        return [d_squared_factored(j, fixed, m, beta) for m in free]
    raise ValueError(f"axis must be 'row' or 'column', got {axis!r}")


def polynomial_form(j, axis: str, fixed, beta: float, permutation: PermutationLike = "identity",
                    family: str = "full", t: int | None = None, l: int | None = None,
                    form: str = "jacobi", ascending: bool = False) -> float:
    """Inequality left-hand side expanded directly in polynomial terms.

    ``full``::

        - sum_i r_i ln r_i - sum_l c_l ln c_l + sum_k q_k ln q_k

    ``per_term``::

        - r_t ln r_t - c_l ln c_l + sum_k q_k ln q_k

    with ``q`` the permuted (and, for odd length, zero-padded) list of
    polynomial probabilities, ``r_1 = q_1 + .. + q_K``,
    ``r_2 = q_{K+1} + .. + q_{2K}`` and ``c_l = q_l + q_{K+l}``.
    """
    q = polynomial_probabilities(j, axis, fixed, beta, form=form, ascending=ascending)
    sigma = resolve_permutation(permutation, len(q))
    q = [q[k - 1] for k in sigma]
    if len(q) % 2:
        q.append(0.0)
    K = len(q) // 2
    r = [math.fsum(q[:K]), math.fsum(q[K:])]
    c = [q[i] + q[K + i] for i in range(K)]
    joint = math.fsum(xlogx(x) for x in q)
    if family == "full":
        return -math.fsum(xlogx(x) for x in r) - math.fsum(xlogx(x) for x in c) + joint
    if family == "per_term":
        if t not in (1, 2) or l is None or not 1 <= l <= K:
            raise IndexError(f"(t, l) = ({t!r}, {l!r}) out of range for K={K}")
        return -xlogx(r[t - 1]) - xlogx(c[l - 1]) + joint
    raise ValueError(f"family must be 'full' or 'per_term', got {family!r}")


def inequality_residual(j, axis: str, fixed, beta: float, permutation: PermutationLike = "identity",
                        family: str = "full", t: int | None = None, l: int | None = None,
                        form: str = "jacobi", ascending: bool = False) -> float:
    """Signed left-hand side of an entropic inequality, cross-checked two ways.

    The polynomial expansion is returned after confirming it agrees with the
    probability pipeline within ``TWO_PATH_TOL``; a mismatch raises
    :class:`PathDisagreement`. The full-marginal family is a true
    inequality (residual >= 0); the per-term family is not guaranteed.
    """
    poly = polynomial_form(j, axis, fixed, beta, permutation, family, t, l, form, ascending)
    prob = probability_form(j, axis, fixed, beta, permutation, family, t, l, ascending)
    if abs(poly - prob) > TWO_PATH_TOL:
        raise PathDisagreement(
            f"polynomial form {poly!r} vs probability form {prob!r} (j={HalfInt.of(j)}, {axis} {fixed}, beta={beta!r})"
        )
    return poly
