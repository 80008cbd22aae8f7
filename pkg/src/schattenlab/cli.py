"""Command-line entry points.

Subcommands: ``verify`` (inequality campaign), ``witness`` (dual-witness
construction on one tuple), ``interpolate`` (strip scan to CSV), and
``conjecture`` (unitary certificate search). Exit codes: 0 all checks
passed, 1 at least one violation (reports are still written), 2 invalid
configuration or unreadable input.

Options are resolved as defaults, then command-line flags, then the
``--config`` JSON file: values in the file override flags.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import fields, replace
from pathlib import Path

from ._version import __version__
from .campaign import (
    DEFAULT_SUITES,
    DIMS,
    P_GRID,
    SIZES,
    SUITES,
    CampaignConfig,
    ConfigError,
    run_conjecture,
    run_interpolate,
    run_verify,
    run_witness,
)
from .ensembles import KINDS
from .matcore import DEFAULT_TOL, Tolerances
from .matio import load_tuple

__all__ = ["main", "build_parser"]

CONJECTURE_P_GRID = (2.5, 3.0, 4.0)
CONJECTURE_DIMS = (2, 3, 4)
CONJECTURE_SIZES = (2, 3)

_CONFIG_KEYS = ("suites", "kinds", "p_grid", "dims", "sizes", "trials", "seed",
                "out", "tol", "figures", "budget", "restarts")


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _names(text: str) -> tuple[str, ...]:
    return tuple(v.strip() for v in text.split(",") if v.strip())


def _tolerances(pairs: list[str] | None, file_overrides: dict | None = None) -> Tolerances:
    valid = {f.name for f in fields(Tolerances)}
    overrides: dict[str, float] = {}
    for item in pairs or []:
        key, sep, val = item.partition("=")
        key = key.strip()
        if not sep or key not in valid:
            raise ConfigError(f"--tol expects KEY=VALUE with KEY in {sorted(valid)}, got {item!r}")
        try:
            overrides[key] = float(val)
        except ValueError:
            raise ConfigError(f"--tol {key}: {val!r} is not a number")
    for key, val in (file_overrides or {}).items():
        if key not in valid:
            raise ConfigError(f"config file tol key {key!r} not in {sorted(valid)}")
        overrides[key] = float(val)
    return replace(DEFAULT_TOL, **overrides)


def _load_config_file(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}")
    if not isinstance(doc, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    unknown = set(doc) - set(_CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"config file {path}: unknown keys {sorted(unknown)}; "
                          f"allowed: {list(_CONFIG_KEYS)}")
    return doc


def _campaign_config(ns: argparse.Namespace) -> CampaignConfig:
    file_doc = _load_config_file(ns.config) if ns.config else {}

    def pick(key, flag_value):
        return file_doc.get(key, flag_value)

    def seq(key, flag_value, cast):
        raw = pick(key, flag_value)
        if isinstance(raw, str):
            raw = raw.split(",")
        try:
            return tuple(cast(v) for v in raw)
        except (TypeError, ValueError):
            raise ConfigError(f"config value for {key!r} must be a list of {cast.__name__}s")

    tol = _tolerances(ns.tol, file_doc.get("tol"))
    figures = not ns.no_figures
    if "figures" in file_doc:
        figures = bool(file_doc["figures"])
    try:
        return CampaignConfig(
            suites=seq("suites", getattr(ns, "suites", ("conjecture",)), str),
            kinds=seq("kinds", ns.kinds, str),
            p_grid=seq("p_grid", ns.p_grid, float),
            dims=seq("dims", ns.dims, int),
            sizes=seq("sizes", ns.sizes, int),
            trials=int(pick("trials", ns.trials)),
            seed=int(pick("seed", ns.seed)),
            out=Path(pick("out", ns.out)),
            tol=tol,
            figures=figures,
            budget=int(pick("budget", getattr(ns, "budget", 2000))),
            restarts=int(pick("restarts", getattr(ns, "restarts", 8))),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schattenlab",
        description="Numerical checks of Schatten-norm tuple inequalities, "
                    "their proof machinery, and a unitary-certificate search.",
        epilog="Precedence: defaults, then flags, then --config file values.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def campaign_flags(sp, p_grid, dims, sizes, trials):
        sp.add_argument("--seed", type=int, default=1729, help="master seed (default 1729)")
        sp.add_argument("--trials", type=int, default=trials,
                        help=f"trials per cell (default {trials})")
        sp.add_argument("--p-grid", dest="p_grid", type=_floats,
                        default=p_grid, metavar="P1,P2,...",
                        help=f"exponent grid (default {','.join(str(p) for p in p_grid)})")
        sp.add_argument("--dims", type=_ints, default=dims, metavar="D1,D2,...",
                        help=f"matrix sizes (default {','.join(str(d) for d in dims)})")
        sp.add_argument("--sizes", type=_ints, default=sizes, metavar="N1,N2,...",
                        help=f"tuple lengths (default {','.join(str(n) for n in sizes)})")
        sp.add_argument("--kinds", type=_names, default=KINDS, metavar="K1,K2,...",
                        help=f"ensemble kinds (default all: {','.join(KINDS)})")
        sp.add_argument("--out", default="reports", help="output directory (default reports/)")
        sp.add_argument("--tol", action="append", metavar="KEY=VAL",
                        help="tolerance override, repeatable (keys: "
                             + ", ".join(f.name for f in fields(Tolerances)) + ")")
        sp.add_argument("--config", metavar="FILE",
                        help="JSON config file; its values override flags")
        sp.add_argument("--no-figures", action="store_true",
                        help="skip rendering PNG figures next to the report")

    sp = sub.add_parser("verify", help="run inequality suites over random ensembles")
    campaign_flags(sp, P_GRID, DIMS, SIZES, trials=3)
    sp.add_argument("--suites", type=_names, default=DEFAULT_SUITES, metavar="S1,S2,...",
                    help="suites to run (default "
                         + ",".join(DEFAULT_SUITES) + "; also available: "
                         + ",".join(sorted(set(SUITES) - set(DEFAULT_SUITES))) + ")")

    sp = sub.add_parser("conjecture", help="search unitary certificates for the n-tuple statement")
    campaign_flags(sp, CONJECTURE_P_GRID, CONJECTURE_DIMS, CONJECTURE_SIZES, trials=2)
    sp.add_argument("--budget", type=int, default=2000,
                    help="descent iterations per restart (default 2000)")
    sp.add_argument("--restarts", type=int, default=8, help="search restarts (default 8)")

    sp = sub.add_parser("witness", help="build dual witnesses for a tuple file and check identities")
    sp.add_argument("input", help="JSON tuple file (matrices as nested [re, im] pairs)")
    sp.add_argument("--p", type=float, default=1.5, help="exponent in (1, 2] (default 1.5)")
    sp.add_argument("--out", default=None, metavar="DIR",
                    help="directory for witness_report.json (default: print only)")
    sp.add_argument("--tol", action="append", metavar="KEY=VAL", help="tolerance override")

    sp = sub.add_parser("interpolate", help="scan the analytic family on the strip; write CSV")
    sp.add_argument("input", help="JSON tuple file (matrices as nested [re, im] pairs)")
    sp.add_argument("--p", type=float, default=1.5, help="exponent in (1, 2] (default 1.5)")
    sp.add_argument("--x-points", dest="x_points", type=int, default=9,
                    help="abscissa samples across [1/2, 1] (default 9)")
    sp.add_argument("--y-points", dest="y_points", type=int, default=41,
                    help="ordinate samples (default 41)")
    sp.add_argument("--y-max", dest="y_max", type=float, default=5.0,
                    help="ordinate range is [-y_max, y_max] (default 5)")
    sp.add_argument("--out", default="reports", metavar="DIR",
                    help="directory for scan.csv and the figure (default reports/)")
    sp.add_argument("--tol", action="append", metavar="KEY=VAL", help="tolerance override")
    sp.add_argument("--no-figures", action="store_true", help="skip the PNG figure")

    return parser


def _load_input_tuple(path: str):
    try:
        return load_tuple(path)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot load tuple from {path}: {exc}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        if ns.command == "verify":
            code, _ = run_verify(_campaign_config(ns))
            return code
        if ns.command == "conjecture":
            code, _ = run_conjecture(_campaign_config(ns))
            return code
        if ns.command == "witness":
            T = _load_input_tuple(ns.input)
            tol = _tolerances(ns.tol)
            out = Path(ns.out) if ns.out else None
            code, _ = run_witness(T, ns.p, out=out, tol=tol)
            return code
        if ns.command == "interpolate":
            T = _load_input_tuple(ns.input)
            tol = _tolerances(ns.tol)
            code, _ = run_interpolate(T, ns.p, Path(ns.out), x_points=ns.x_points,
                                      y_points=ns.y_points, y_max=ns.y_max,
                                      figures=not ns.no_figures, tol=tol)
            return code
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError(f"unhandled command {ns.command!r}")  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
