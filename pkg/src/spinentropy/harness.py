"""Angle sweeps, verification campaigns and CSV/JSON output."""
from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .bipartite import BUILTIN_PERMUTATIONS, resolve_permutation, to_bipartite
from .entropy import NONNEG_TOL, information, polynomial_form, probability_vector
from .errors import ConfigError, PathDisagreement, SpinEntropyError
from .wigner import EPS, HalfInt, check_projection, check_spin, d_matrix, projections, route_gap

MODES = ("entropies", "information", "information_tl", "inequality")
AXES = ("row", "column")
PATHS = ("sum", "factored", "both")
MAX_J = HalfInt(25)

BASE_FIELDS = ("beta", "H_p", "H_pi", "H_Pi", "I", "residual", "pass")


@dataclass(frozen=True)
class SweepConfig:
    j: HalfInt
    axis: str = "column"
    fixed: HalfInt | None = None  # defaults to +j
    permutation: str = "identity"
    beta_min: float = 0.0
    beta_max: float = math.pi
    points: int = 101
    mode: str = "information"
    tl: tuple[int, int] | None = None
    path: str = "both"
    ascending: bool = False
    log_base: float | None = None  # display only

    def __post_init__(self):
        try:
            j = check_spin(self.j)
        except SpinEntropyError as exc:
            raise ConfigError(f"field 'j': {exc}") from None
        object.__setattr__(self, "j", j)
        fixed = j if self.fixed is None else self.fixed
        try:
            object.__setattr__(self, "fixed", check_projection(j, fixed))
        except SpinEntropyError as exc:
            raise ConfigError(f"field 'fixed': {exc}") from None
        self.validate()

    def validate(self) -> None:
        if self.axis not in AXES:
            raise ConfigError(f"field 'axis': expected one of {AXES}, got {self.axis!r}")
        if self.mode not in MODES:
            raise ConfigError(f"field 'mode': expected one of {MODES}, got {self.mode!r}")
        if self.path not in PATHS:
            raise ConfigError(f"field 'path': expected one of {PATHS}, got {self.path!r}")
        if not 0.0 <= self.beta_min < self.beta_max <= math.pi:
            raise ConfigError(
                f"fields 'beta_min'/'beta_max': need 0 <= beta_min < beta_max <= pi, "
                f"got {self.beta_min!r}, {self.beta_max!r}"
            )
        if int(self.points) != self.points or self.points < 2:
            raise ConfigError(f"field 'points': need an integer >= 2, got {self.points!r}")
        try:
            resolve_permutation(self.permutation, self.size)
        except SpinEntropyError as exc:
            raise ConfigError(f"field 'perm': {exc}") from None
        if self.tl is not None:
            t, l = self.tl
            if t not in (1, 2) or not 1 <= l <= self.K:
                raise ConfigError(f"fields 't'/'l': ({t}, {l}) out of range for K={self.K}")
        if self.log_base is not None and (self.log_base <= 0 or self.log_base == 1):
            raise ConfigError(f"field 'log_base': invalid base {self.log_base!r}")

    @property
    def size(self) -> int:
        return self.j.twice + 1

    @property
    def K(self) -> int:
        return (self.size + 1) // 2

    def grid(self) -> np.ndarray:
        """Uniform grid including both ends, pulled inside the factored guard if needed."""
        betas = np.linspace(self.beta_min, self.beta_max, int(self.points))
        if self.path in ("factored", "both"):
            betas = np.clip(betas, EPS, math.pi - EPS)
        return betas


@dataclass(frozen=True)
class SweepRecord:
    beta: float
    H_p: float
    H_pi: float
    H_Pi: float
    I: float
    residual: float
    passed: bool
    I_tl: np.ndarray | None = field(default=None, repr=False)


def _display(x: float, base: float | None) -> float:
    return x if base is None else x / math.log(base)


def evaluate_point(config: SweepConfig, beta: float) -> SweepRecord:
    """Compute one sweep record; values in nats unless ``config.log_base`` is set."""
    dm = d_matrix(config.j, beta, route=config.path)
    v = probability_vector(config.j, config.axis, config.fixed, beta, config.permutation,
                           config.ascending, dm=dm)
    table = to_bipartite(v)
    want_tl = config.mode == "information_tl" or config.tl is not None
    rep = information(table, beta, with_tl=want_tl, check=False)

    if config.tl is not None:
        t, l = config.tl
        residual = float(rep.I_tl[t - 1, l - 1])
        family = "per_term"
    else:
        t = l = None
        residual = rep.I
        family = "full"
    if config.mode == "inequality" and config.path != "sum":
        poly = polynomial_form(config.j, config.axis, config.fixed, beta, config.permutation,
                               family, t, l, ascending=config.ascending)
        if abs(poly - residual) > 1e-9:
            raise PathDisagreement(
                f"polynomial form {poly!r} vs probability form {residual!r} at beta={beta!r}"
            )
        residual = poly
    passed = residual >= -NONNEG_TOL

    b = config.log_base
    tl_vals = None
    if config.mode == "information_tl":
        tl_vals = rep.I_tl if b is None else rep.I_tl / math.log(b)
    return SweepRecord(
        float(beta),
        _display(rep.H_p, b),
        _display(rep.H_pi, b),
        _display(rep.H_Pi, b),
        _display(rep.I, b),
        _display(residual, b),
        bool(passed),
        tl_vals,
    )


def run_sweep(config: SweepConfig) -> list[SweepRecord]:
    """One record per grid angle, in grid order."""
    return [evaluate_point(config, float(beta)) for beta in config.grid()]


# --- campaigns --------------------------------------------------------------


@dataclass
class FamilySummary:
    count: int = 0
    min_residual: float = math.inf
    argmin: dict | None = None
    negatives: int = 0

    def update(self, value: float, where: dict) -> None:
        self.count += 1
        if value < -NONNEG_TOL:
            self.negatives += 1
        if value < self.min_residual:
            self.min_residual = value
            self.argmin = where


@dataclass
class CampaignReport:
    js: list
    grid: int
    full: FamilySummary
    per_term: FamilySummary
    max_route_gap: float | None = None

    @property
    def ok(self) -> bool:
        return self.full.negatives == 0

    def as_dict(self) -> dict:
        def fam(s: FamilySummary) -> dict:
            return {
                "count": s.count,
                "min_residual": s.min_residual,
                "negatives": s.negatives,
                "argmin": s.argmin,
            }

        return {
            "js": [str(j) for j in self.js],
            "grid": self.grid,
            "full_marginal": fam(self.full),
            "per_term": fam(self.per_term),
            "max_route_gap": self.max_route_gap,
            "ok": self.ok,
        }


def verify_campaign(js, grid: int = 64, path: str = "sum", beta_min: float = 0.0,
                    beta_max: float = math.pi, permutations=BUILTIN_PERMUTATIONS,
                    max_j=MAX_J) -> CampaignReport:
    """Check every row and column of every spin in ``js`` over an angle grid.

    Both permutations are applied and both inequality families evaluated.
    The full-marginal family must stay above ``-NONNEG_TOL``; the per-term
    family is only measured. With ``path="both"`` the two d-matrix routes
    are also compared at every angle.
    """
    js = [check_spin(j) for j in js]
    max_j = HalfInt.of(max_j)
    for j in js:
        if j > max_j:
            raise ConfigError(f"field 'js': spin {j} exceeds the configured maximum {max_j}")
    if int(grid) != grid or grid < 2:
        raise ConfigError(f"field 'grid': need an integer >= 2, got {grid!r}")
    if path not in PATHS:
        raise ConfigError(f"field 'path': expected one of {PATHS}, got {path!r}")
    betas = np.linspace(beta_min, beta_max, int(grid))
    if path != "sum":
        betas = np.clip(betas, EPS, math.pi - EPS)

    full, per_term = FamilySummary(), FamilySummary()
    max_gap = 0.0 if path == "both" else None
    for j in js:
        for beta in betas.tolist():
            dm = d_matrix(j, beta, route=path)
            if path == "both":
                max_gap = max(max_gap, route_gap(j, beta))
            for axis in AXES:
                for fixed in projections(j):
                    for perm in permutations:
                        v = probability_vector(j, axis, fixed, beta, perm, dm=dm)
                        rep = information(to_bipartite(v), beta, with_tl=True, check=False)
                        where = {"j": str(j), "axis": axis, "fixed": str(fixed), "perm": perm, "beta": beta}
                        full.update(rep.I, where)
                        for (t, l), val in np.ndenumerate(rep.I_tl):
                            per_term.update(float(val), {**where, "t": t + 1, "l": l + 1})
    return CampaignReport(js, int(grid), full, per_term, max_gap)


# --- output -----------------------------------------------------------------


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _fieldnames(records) -> list[str]:
    names = list(BASE_FIELDS)
    tl = records[0].I_tl
    if tl is not None:
        names += [f"I_t{t + 1}_l{l + 1}" for t in range(tl.shape[0]) for l in range(tl.shape[1])]
    return names


def _rows(records):
    for rec in records:
        row = {
            "beta": _fmt(rec.beta),
            "H_p": _fmt(rec.H_p),
            "H_pi": _fmt(rec.H_pi),
            "H_Pi": _fmt(rec.H_Pi),
            "I": _fmt(rec.I),
            "residual": _fmt(rec.residual),
            "pass": rec.passed,
        }
        if rec.I_tl is not None:
            for (t, l), val in np.ndenumerate(rec.I_tl):
                row[f"I_t{t + 1}_l{l + 1}"] = _fmt(val)
        yield row


def render(records, fmt: str = "csv") -> str:
    """Serialize records to CSV or JSON text."""
    if not records:
        raise ValueError("no records to emit")
    names = _fieldnames(records)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(names)
        for row in _rows(records):
            writer.writerow(["true" if row[k] is True else "false" if row[k] is False else row[k] for k in names])
        return buf.getvalue()
    if fmt == "json":
        out = []
        for row in _rows(records):
            out.append({k: (row[k] if k == "pass" else float(row[k])) for k in names})
        return json.dumps(out, indent=1) + "\n"
    raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")


def emit(records, fmt: str, path) -> Path:
    """Write records to ``path``; I/O failures are re-raised with the path attached."""
    text = render(records, fmt)
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write {os.fspath(path)}: {exc.strerror}") from exc
    return path


# --- figure presets ---------------------------------------------------------

_FOUR_VECTORS = {
    # figure number: (column m, permutation, mode)
    1: ("3/2", "identity", "entropies"),
    2: ("3/2", "identity", "information"),
    3: ("3/2", "cyclic", "entropies"),
    4: ("3/2", "cyclic", "information"),
    5: ("1/2", "identity", "entropies"),
    6: ("1/2", "identity", "information"),
    7: ("1/2", "cyclic", "entropies"),
    8: ("1/2", "cyclic", "information"),
}

FIGURE_SPINS = (1, 2, 3)


def figure_configs(n: int, **overrides) -> list[tuple[str, SweepConfig]]:
    """Sweep setups behind each figure, as ``(label, config)`` pairs.

    Figures 1-8 are single j=3/2 column sweeps; figure 9 overlays the four
    information curves; figures 10 and 11 show the per-term information of
    the ``m' = 0`` row for several integer spins with ``t = 1`` and ``t = 2``.
    """
    base = dict(beta_min=0.0, beta_max=math.pi, points=101)
    base.update(overrides)
    if n in _FOUR_VECTORS:
        m, perm, mode = _FOUR_VECTORS[n]
        return [(f"fig{n}", SweepConfig(HalfInt(3), "column", HalfInt.of(m), perm, mode=mode, **base))]
    if n == 9:
        return [
            (f"fig9_m{HalfInt.of(m).twice}_{perm}",
             SweepConfig(HalfInt(3), "column", HalfInt.of(m), perm, mode="information", **base))
            for m, perm, _ in (_FOUR_VECTORS[k] for k in (2, 4, 6, 8))
        ]
    if n in (10, 11):
        out = []
        for c in FIGURE_SPINS:
            j = HalfInt(2 * c)
            K = (j.twice + 2) // 2
            tl = (1, K) if n == 10 else (2, 1)
            out.append((f"fig{n}_j{c}",
                        SweepConfig(j, "row", HalfInt(0), "identity", mode="information_tl", tl=tl, **base)))
        return out
    raise ConfigError(f"no figure preset {n!r}; choose 1..11")


def with_overrides(config: SweepConfig, **kw) -> SweepConfig:
    return replace(config, **{k: v for k, v in kw.items() if v is not None})
