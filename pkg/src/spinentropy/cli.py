"""Command-line entry point: ``spinentropy sweep|verify|figure``.

Exit codes: 0 success, 1 full-marginal inequality violated, 2 bad
configuration, 3 the two numerical routes disagree.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import re
import sys
from pathlib import Path

from .errors import ConfigError, PathDisagreement, SpinEntropyError, SubadditivityViolation
from .harness import (
    MAX_J,
    SweepConfig,
    figure_configs,
    render,
    emit,
    run_sweep,
    verify_campaign,
)
from .wigner import HalfInt

log = logging.getLogger("spinentropy")

EXIT_OK, EXIT_VIOLATION, EXIT_CONFIG, EXIT_DISAGREE = 0, 1, 2, 3

_INT_RE = re.compile(r"^[+-]?\d+$")


def parse_spin(text: str) -> HalfInt:
    """``"3"`` is a twice-value (j = 3/2); ``"3/2"`` or ``"1.5"`` is the spin itself."""
    text = str(text).strip()
    try:
        if _INT_RE.match(text):
            return HalfInt(int(text))
        return HalfInt.of(text)
    except (ValueError, ZeroDivisionError, SpinEntropyError):
        raise ConfigError(f"cannot read spin {text!r}; use a twice-value like 3 or a form like 3/2") from None


def parse_projection(text: str) -> HalfInt:
    """Projection value such as ``"-1/2"``, ``"0"`` or ``"1.5"``."""
    try:
        return HalfInt.of(str(text).strip())
    except (ValueError, ZeroDivisionError, SpinEntropyError):
        raise ConfigError(f"cannot read projection {text!r}") from None


def parse_angle(text: str) -> float:
    """Float, optionally written with ``pi`` (``"pi/2"``, ``"pi-0.01"``)."""
    expr = str(text).strip().lower()
    if not re.fullmatch(r"[0-9eE.+\-*/() pi]+", expr):
        raise ConfigError(f"cannot read angle {text!r}")
    try:
        return float(eval(expr, {"__builtins__": {}}, {"pi": math.pi}))
    except Exception:
        raise ConfigError(f"cannot read angle {text!r}") from None


# key -> (dest, converter)
_KEYS = {
    "j": ("j", parse_spin),
    "axis": ("axis", str),
    "fixed": ("fixed", parse_projection),
    "perm": ("perm", str),
    "beta_min": ("beta_min", parse_angle),
    "beta_max": ("beta_max", parse_angle),
    "points": ("points", int),
    "mode": ("mode", str),
    "t": ("t", int),
    "l": ("l", int),
    "format": ("format", str),
    "out": ("out", str),
    "path": ("path", str),
    "ascending": ("ascending", lambda s: s.strip().lower() in ("1", "true", "yes", "on")),
    "log_base": ("log_base", float),
    "js": ("js", str),
    "grid": ("grid", int),
    "max_j": ("max_j", parse_spin),
}


def read_config_file(path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        dest, conv = _KEYS[key]
        try:
            out[dest] = conv(value)
        except ConfigError as exc:
            raise ConfigError(f"{path}:{lineno}: field {key!r}: {exc}") from None
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: field {key!r}: bad value {value!r}") from None
    return out


def _merged(args: argparse.Namespace, defaults: dict) -> dict:
    opts = dict(defaults)
    if getattr(args, "config", None):
        opts.update(read_config_file(args.config))
    opts.update({k: v for k, v in vars(args).items() if v is not None})
    return opts


_SWEEP_DEFAULTS = dict(
    axis="column", perm="identity", beta_min=0.0, beta_max=math.pi, points=101,
    mode="information", format="csv", path="both", ascending=False,
)


def _sweep_config(opts: dict) -> SweepConfig:
    if "j" not in opts:
        raise ConfigError("field 'j': required")
    tl = None
    if opts.get("t") is not None or opts.get("l") is not None:
        if opts.get("t") is None or opts.get("l") is None:
            raise ConfigError("fields 't'/'l': give both or neither")
        tl = (opts["t"], opts["l"])
    return SweepConfig(
        j=opts["j"], axis=opts["axis"], fixed=opts.get("fixed"), permutation=opts["perm"],
        beta_min=opts["beta_min"], beta_max=opts["beta_max"], points=opts["points"],
        mode=opts["mode"], tl=tl, path=opts["path"], ascending=opts["ascending"],
        log_base=opts.get("log_base"),
    )


def _write(records, opts: dict, out=None) -> None:
    out = out if out is not None else opts.get("out")
    if out:
        emit(records, opts["format"], out)
        log.info("wrote %d records to %s", len(records), out)
    else:
        sys.stdout.write(render(records, opts["format"]))


def _fails(config: SweepConfig, records) -> bool:
    # only the full-marginal family is a theorem
    return config.mode == "inequality" and config.tl is None and not all(r.passed for r in records)


def cmd_sweep(args) -> int:
    opts = _merged(args, _SWEEP_DEFAULTS)
    config = _sweep_config(opts)
    records = run_sweep(config)
    _write(records, opts)
    return EXIT_VIOLATION if _fails(config, records) else EXIT_OK


def cmd_figure(args) -> int:
    opts = _merged(args, _SWEEP_DEFAULTS)
    overrides = {k: opts[k] for k in ("beta_min", "beta_max", "points", "path", "ascending")}
    overrides["log_base"] = opts.get("log_base")
    status = EXIT_OK
    configs = figure_configs(args.n, **overrides)
    for label, config in configs:
        records = run_sweep(config)
        out = opts.get("out")
        if out and len(configs) > 1:
            p = Path(out)
            out = str(p.with_name(f"{label}{p.suffix or '.' + opts['format']}"))
        elif not out and len(configs) > 1:
            sys.stdout.write(f"# {label}\n")
        _write(records, opts, out)
        if _fails(config, records):
            status = EXIT_VIOLATION
    return status


def cmd_verify(args) -> int:
    opts = _merged(args, dict(grid=64, path="both", beta_min=0.0, beta_max=math.pi, max_j=MAX_J))
    if opts.get("js"):
        js = [parse_spin(tok) for tok in str(opts["js"]).split(",") if tok.strip()]
    else:
        js = [HalfInt(t) for t in range(1, opts["max_j"].twice + 1)]
    report = verify_campaign(js, opts["grid"], path=opts["path"], beta_min=opts["beta_min"],
                             beta_max=opts["beta_max"], max_j=opts["max_j"])
    text = json.dumps(report.as_dict(), indent=1) + "\n"
    if opts.get("out"):
        Path(opts["out"]).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    full, per = report.full, report.per_term
    log.info("full-marginal: %d checks, min %.3e, %d negative", full.count, full.min_residual, full.negatives)
    log.info("per-term: %d values, min %.3e, %d negative", per.count, per.min_residual, per.negatives)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def _common(p: argparse.ArgumentParser) -> None:
    # defaults are None so config-file values are not clobbered
    p.add_argument("--config", help="key=value config file; command-line flags take precedence")
    p.add_argument("--beta-min", dest="beta_min", type=parse_angle)
    p.add_argument("--beta-max", dest="beta_max", type=parse_angle)
    p.add_argument("--path", choices=("sum", "factored", "both"))
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out")
    p.add_argument("--log-base", dest="log_base", type=float, help="display base for entropies")
    p.add_argument("-v", "--verbose", action="store_true", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinentropy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="sweep one configuration over an angle grid")
    _common(sw)
    sw.add_argument("--j", type=parse_spin, help="spin: twice-value (3) or n/2 form (3/2)")
    sw.add_argument("--axis", choices=("row", "column"))
    sw.add_argument("--fixed", type=parse_projection, help="fixed projection m (column) or m' (row)")
    sw.add_argument("--perm", help="identity, cyclic, or 1-based list such as 4,1,2,3")
    sw.add_argument("--points", type=int)
    sw.add_argument("--mode", choices=("entropies", "information", "information_tl", "inequality"))
    sw.add_argument("--t", type=int)
    sw.add_argument("--l", type=int)
    sw.add_argument("--ascending", action="store_true", default=None,
                    help="list projections from -j upward")
    sw.set_defaults(func=cmd_sweep)

    fg = sub.add_parser("figure", help="run a figure preset (1..11)")
    fg.add_argument("n", type=int)
    _common(fg)
    fg.add_argument("--points", type=int)
    fg.add_argument("--ascending", action="store_true", default=None)
    fg.set_defaults(func=cmd_figure)

    vf = sub.add_parser("verify", help="check all rows/columns over a set of spins")
    _common(vf)
    vf.add_argument("--js", help="comma-separated spins (default: 1/2 .. max-j)")
    vf.add_argument("--max-j", dest="max_j", type=parse_spin)
    vf.add_argument("--grid", type=int)
    vf.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SubadditivityViolation as exc:
        print(f"inequality violated: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except PathDisagreement as exc:
        print(f"numerical routes disagree: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
