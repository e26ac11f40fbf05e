"""Probability vectors from d-matrix rows/columns and their 2xK reshaping."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import PermutationError, ProbabilityError
from .wigner import DMatrix, HalfInt, check_projection, check_spin, d_matrix

SUM_TOL = 1e-11

BUILTIN_PERMUTATIONS = ("identity", "cyclic")

PermutationLike = Union[str, Sequence[int]]


@dataclass(frozen=True)
class Provenance:
    j: HalfInt | None = None
    axis: str | None = None  # "row" (fixed m') or "column" (fixed m)
    fixed: HalfInt | None = None
    permutation: str = "identity"
    ascending: bool = False


@dataclass(frozen=True)
class ProbVector:
    p: np.ndarray
    provenance: Provenance = field(default_factory=Provenance)

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise ProbabilityError("probability vector must be a nonempty 1-d sequence")
        if np.any(p < 0):
            raise ProbabilityError(f"negative probability {p.min()!r}")
        total = math.fsum(p.tolist())
        if abs(total - 1.0) > SUM_TOL:
            raise ProbabilityError(f"probabilities sum to {total!r}, not 1")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    def __len__(self) -> int:
        return self.p.size

    def __iter__(self):
        return iter(self.p.tolist())


def _checked(j, beta, dm: DMatrix | None, route: str) -> DMatrix:
    if dm is not None:
        return dm
    return d_matrix(j, beta, route=route)


def column_vector(j, m, beta: float, ascending: bool = False, route: str = "sum", dm: DMatrix | None = None) -> ProbVector:
    """Squared elements of column ``m``: ``(d~_{j,m}, d~_{j-1,m}, ..., d~_{-j,m})``.

    ``ascending=True`` lists ``m' = -j`` first instead. A precomputed
    ``dm`` for the same ``j`` and ``beta`` may be passed to skip the
    matrix evaluation.
    """
    j = check_spin(j)
    m = check_projection(j, m)
    dm = _checked(j, beta, dm, route)
    p = dm.column(m)
    if ascending:
        p = p[::-1]
    return ProbVector(p, Provenance(j, "column", m, "identity", ascending))


def row_vector(j, mp, beta: float, ascending: bool = False, route: str = "sum", dm: DMatrix | None = None) -> ProbVector:
    """Squared elements of row ``m'``: ``(d~_{m',j}, d~_{m',j-1}, ..., d~_{m',-j})``."""
    j = check_spin(j)
    mp = check_projection(j, mp)
    dm = _checked(j, beta, dm, route)
    p = dm.row(mp)
    if ascending:
        p = p[::-1]
    return ProbVector(p, Provenance(j, "row", mp, "identity", ascending))


def resolve_permutation(sigma: PermutationLike, n: int) -> tuple[int, ...]:
    """Turn a permutation name or list into a 1-based index tuple of length ``n``.

    ``"identity"`` and ``"cyclic"`` are built in; ``"cyclic"`` moves the
    last entry to the front, ``(p_N, p_1, ..., p_{N-1})``. Strings such as
    ``"4,1,2,3"`` and integer sequences are read as 1-based indices with
    ``new[k] = old[sigma[k]]``.
    """
    if isinstance(sigma, str):
        name = sigma.strip().lower()
        if name == "identity":
            return tuple(range(1, n + 1))
        if name == "cyclic":
            return (n,) + tuple(range(1, n))
        try:
            sigma = [int(tok) for tok in name.split(",") if tok.strip()]
        except ValueError:
            raise PermutationError(f"unknown permutation {sigma!r}") from None
    sigma = tuple(int(k) for k in sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise PermutationError(f"{sigma!r} is not a permutation of 1..{n}")
    return sigma


def permutation_label(sigma: PermutationLike) -> str:
    if isinstance(sigma, str):
        return sigma.strip().lower()
    return ",".join(str(int(k)) for k in sigma)


def permute(v: ProbVector, sigma: PermutationLike) -> ProbVector:
    """Reorder ``v`` so that entry ``k`` becomes ``v[sigma[k]]`` (1-based)."""
    idx = resolve_permutation(sigma, len(v))
    p = v.p[[k - 1 for k in idx]]
    prov = v.provenance
    label = permutation_label(sigma)
    if prov.permutation != "identity":
        label = f"{label}*{prov.permutation}"
    return ProbVector(p, Provenance(prov.j, prov.axis, prov.fixed, label, prov.ascending))


@dataclass(frozen=True)
class BipartiteTable:
    """Joint table ``p_{il}`` with ``i = 1, 2`` and ``l = 1..K``."""

    entries: np.ndarray
    pad_count: int = 0

    def __post_init__(self):
        e = np.array(self.entries, dtype=float)
        if e.ndim != 2 or e.shape[0] != 2:
            raise ProbabilityError(f"bipartite table must have 2 rows, got shape {e.shape}")
        if np.any(e < 0):
            raise ProbabilityError("negative entry in bipartite table")
        total = math.fsum(e.ravel().tolist())
        if abs(total - 1.0) > SUM_TOL:
            raise ProbabilityError(f"table entries sum to {total!r}, not 1")
        if self.pad_count not in (0, 1):
            raise ProbabilityError("pad_count must be 0 or 1")
        if self.pad_count and e[1, -1] != 0.0:
            raise ProbabilityError("padded entry must be exactly 0")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def K(self) -> int:
        return self.entries.shape[1]

    def flat(self) -> np.ndarray:
        """Row-major entries including any pad zero."""
        return self.entries.ravel()


@dataclass(frozen=True)
class Marginals:
    pi: np.ndarray  # row sums, length 2
    Pi: np.ndarray  # column sums, length K


def to_bipartite(v: ProbVector) -> BipartiteTable:
    """Fill a 2xK table row-major; odd lengths get one trailing zero."""
    p = v.p.tolist()
    pad = len(p) % 2
    if pad:
        p.append(0.0)
    k = len(p) // 2
    return BipartiteTable(np.array([p[:k], p[k:]]), pad)


def marginals(t: BipartiteTable) -> Marginals:
    e = t.entries
    pi = np.array([math.fsum(row) for row in e.tolist()])
    Pi = np.array([math.fsum(col) for col in e.T.tolist()])
    return Marginals(pi, Pi)
