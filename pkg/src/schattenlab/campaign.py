"""Campaign orchestration: sweep suites over ensembles, exponents, sizes and
trials; assemble JSON reports; drive the witness, interpolation and
conjecture surfaces.

Reproducibility contract: every cell of the sweep derives its generator seed
from (master seed, suite, kind, n, d, p, trial) through a seed sequence, so
results are independent of execution order and of which other suites were
selected. Reports are byte-identical across reruns of the same
configuration except for the timestamp in ``meta``.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import math
import sys
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable

import numpy as np

from ._version import __version__
from .conjecture import ConjectureInstance, necessary_conditions, unitary_search
from .ensembles import KINDS, EnsembleSpec, generate
from .inequalities import (
    OperatorTuple,
    ak,
    bcl,
    bcl_dominates_clarkson,
    clarkson_pair,
    cm,
    hk_ntuple,
    mccarthy,
    parallelogram,
)
from .matcore import DEFAULT_TOL, Tolerances
from .matio import save_json, write_scan_csv
from .proofs import (
    ak_from_witness,
    ak_via_duality,
    convexity_scan,
    pairing_bound_check,
    witness_set,
)
from .reports import InequalityReport, make_report
from .schatten import dual_exponent, snorm, trace_pairing

__all__ = [
    "CampaignConfig",
    "ConfigError",
    "Suite",
    "SUITES",
    "SUITE_ORDER",
    "DEFAULT_SUITES",
    "P_GRID",
    "DIMS",
    "SIZES",
    "cell_seed",
    "config_hash",
    "validate_config",
    "run_verify",
    "run_conjecture",
    "run_witness",
    "run_interpolate",
]

P_GRID = (0.5, 1.0, 1.3, 1.5, 2.0, 2.5, 3.0, 4.0)
DIMS = (1, 2, 3, 4, 8)
SIZES = (2, 3, 4, 5)
DEFAULT_SUITES = ("clarkson", "hk", "bcl", "bcl_dominates_clarkson", "mccarthy", "ak", "cm")

# near p = 1 the dual exponent q = p/(p-1) explodes and q-th norm powers
# overflow doubles; the campaign refuses the sliver instead of guessing.
_P_EXCLUSION = (1.0, 1.0 + 1e-3)


class ConfigError(ValueError):
    """Campaign configuration rejected; the message lists every problem."""


@dataclass(frozen=True)
class CampaignConfig:
    suites: tuple[str, ...] = DEFAULT_SUITES
    kinds: tuple[str, ...] = KINDS
    p_grid: tuple[float, ...] = P_GRID
    dims: tuple[int, ...] = DIMS
    sizes: tuple[int, ...] = SIZES
    trials: int = 3
    seed: int = 1729
    out: Path = Path("reports")
    tol: Tolerances = DEFAULT_TOL
    figures: bool = True
    budget: int = 2000
    restarts: int = 8


def _run_clarkson(T: OperatorTuple, p: float, tol: Tolerances) -> list[InequalityReport]:
    return list(clarkson_pair(T[0], T[1], p, tol))


def _run_parallelogram(T: OperatorTuple, p: float, tol: Tolerances) -> list[InequalityReport]:
    return [parallelogram(T[0], T[1], tol)]


def _run_bcl(T: OperatorTuple, p: float, tol: Tolerances) -> list[InequalityReport]:
    return [bcl(T[0], T[1], p, tol)]


def _run_bcl_dominates(T: OperatorTuple, p: float, tol: Tolerances) -> list[InequalityReport]:
    return [bcl_dominates_clarkson(T[0], T[1], p, tol)]


def _run_mccarthy(T: OperatorTuple, p: float, tol: Tolerances) -> list[InequalityReport]:
    return [mccarthy(T[0], T[1], p, tol)]


def _run_hk(T: OperatorTuple, p: float, tol: Tolerances) -> list[InequalityReport]:
    return [hk_ntuple(T, p, tol)]


def _run_ak(T: OperatorTuple, p: float, tol: Tolerances) -> list[InequalityReport]:
    return [ak(T, p, tol)]


def _run_cm(T: OperatorTuple, p: float, tol: Tolerances) -> list[InequalityReport]:
    return [cm(T, p, tol)]


def _run_duality(T: OperatorTuple, p: float, tol: Tolerances) -> list[InequalityReport]:
    return [ak_via_duality(T, p, tol)]


def _run_pairing_bound(T: OperatorTuple, p: float, tol: Tolerances) -> list[InequalityReport]:
    W = witness_set(T, p, tol)
    return [pairing_bound_check(T, W, p, tol)]


def _run_interpolation(T: OperatorTuple, p: float, tol: Tolerances) -> list[InequalityReport]:
    W = witness_set(T, p, tol)
    scan = convexity_scan(T, W, p, tol=tol)
    bound_check = make_report("interpolation", abs(scan.value_at_target), scan.target_bound,
                              p=p, n=T.n, d=T.d, tol=tol)
    midpoint = make_report("interpolation_convexity", scan.max_midpoint_defect, tol.scan,
                           p=p, n=T.n, d=T.d, tol=tol)
    return [bound_check, midpoint]


@dataclass(frozen=True)
class Suite:
    """One registered verification suite: its p-domain and its checker."""

    name: str
    pair_only: bool
    accepts: Callable[[float], bool]
    runner: Callable[[OperatorTuple, float, Tolerances], list[InequalityReport]]


SUITES: dict[str, Suite] = {
    s.name: s
    for s in (
        Suite("clarkson", True, lambda p: p > 0.0, _run_clarkson),
        Suite("parallelogram", True, lambda p: p == 2.0, _run_parallelogram),
        Suite("hk", False, lambda p: p > 0.0, _run_hk),
        Suite("bcl", True, lambda p: p >= 1.0, _run_bcl),
        Suite("bcl_dominates_clarkson", True, lambda p: 1.0 <= p <= 2.0, _run_bcl_dominates),
        Suite("mccarthy", True, lambda p: p > 1.0, _run_mccarthy),
        Suite("ak", False, lambda p: p > 1.0, _run_ak),
        Suite("cm", False, lambda p: p > 1.0, _run_cm),
        Suite("duality", False, lambda p: p >= 2.0, _run_duality),
        Suite("pairing_bound", False, lambda p: 1.0 < p <= 2.0, _run_pairing_bound),
        Suite("interpolation", False, lambda p: 1.0 < p <= 2.0, _run_interpolation),
    )
}

# canonical indices for seed derivation; stable across releases
SUITE_ORDER = (
    "clarkson",
    "parallelogram",
    "hk",
    "bcl",
    "bcl_dominates_clarkson",
    "mccarthy",
    "ak",
    "cm",
    "duality",
    "pairing_bound",
    "interpolation",
    "conjecture",
)


def cell_seed(master: int, suite: str, kind: str, n: int, d: int, p: float, trial: int) -> int:
    """Deterministic per-cell generator seed, independent of sweep order."""
    entropy = (
        int(master),
        SUITE_ORDER.index(suite),
        KINDS.index(kind),
        int(n),
        int(d),
        int(round(float(p) * 1000.0)),
        int(trial),
    )
    return int(np.random.SeedSequence(entropy).generate_state(1, np.uint64)[0])


def config_hash(config: CampaignConfig) -> str:
    """Hash of everything that influences the numbers (not paths/figures)."""
    doc = {
        "suites": list(config.suites),
        "kinds": list(config.kinds),
        "p_grid": list(config.p_grid),
        "dims": list(config.dims),
        "sizes": list(config.sizes),
        "trials": config.trials,
        "seed": config.seed,
        "tol": dataclasses.asdict(config.tol),
        "budget": config.budget,
        "restarts": config.restarts,
    }
    return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()


def validate_config(config: CampaignConfig, conjecture: bool = False) -> None:
    """Raise ConfigError listing every problem; silent when valid."""
    problems: list[str] = []
    if not conjecture:
        if not config.suites:
            problems.append("no suites selected")
        known = set(SUITES) | {"conjecture"}
        for s in config.suites:
            if s not in known:
                problems.append(f"unknown suite {s!r}; choose from {sorted(known)}")
    if not config.kinds:
        problems.append("no ensemble kinds selected")
    for k in config.kinds:
        if k not in KINDS:
            problems.append(f"unknown ensemble kind {k!r}; choose from {list(KINDS)}")
    if not config.p_grid:
        problems.append("empty p grid")
    for p in config.p_grid:
        if not (math.isfinite(p) and p > 0.0):
            problems.append(f"exponent {p} is not a finite positive number")
        elif _P_EXCLUSION[0] < p <= _P_EXCLUSION[1]:
            problems.append(
                f"exponent {p} is too close to 1 (dual exponent overflows); "
                f"use p > {_P_EXCLUSION[1]}"
            )
    if not config.dims or any(d < 1 for d in config.dims):
        problems.append("dims must be a non-empty list of integers >= 1")
    if not config.sizes or any(n < 2 for n in config.sizes):
        problems.append("tuple sizes must be a non-empty list of integers >= 2")
    if config.trials < 1:
        problems.append("trials must be >= 1")
    if config.seed < 0:
        problems.append("seed must be nonnegative")
    if config.budget < 1:
        problems.append("budget must be >= 1")
    if config.restarts < 1:
        problems.append("restarts must be >= 1")
    if not problems and not conjecture:
        for s in config.suites:
            if s == "conjecture":
                continue
            if not any(SUITES[s].accepts(p) for p in config.p_grid):
                problems.append(f"suite {s!r} admits no exponent of the p grid {list(config.p_grid)}")
    if problems:
        raise ConfigError("; ".join(problems))


def _meta(config: CampaignConfig) -> dict:
    return {
        "seed": config.seed,
        "config_hash": config_hash(config),
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def _summarize(rows: list[dict]) -> dict:
    summary: dict[str, dict] = {}
    for row in rows:
        entry = summary.setdefault(row["suite"], {"count": 0, "violations": 0, "worst_margin": math.inf})
        entry["count"] += 1
        entry["violations"] += 0 if row["satisfied"] else 1
        entry["worst_margin"] = min(entry["worst_margin"], row["margin"])
    for entry in summary.values():
        if entry["count"] == 0:  # pragma: no cover - suites always emit rows
            entry["worst_margin"] = 0.0
    return summary


def run_verify(config: CampaignConfig) -> tuple[int, dict]:
    """Sweep the configured inequality suites; write report and figure.

    Returns (exit code, report): 0 with every check satisfied, 1 when any
    margin dips below the acceptance threshold (the report is still
    written). The conjecture suite has its own entry point and is skipped
    here with a note.
    """
    validate_config(config)
    started = time.perf_counter()
    rows: list[dict] = []
    for suite_name in config.suites:
        if suite_name == "conjecture":
            print("note: the conjecture suite runs under the 'conjecture' subcommand; skipping",
                  file=sys.stderr)
            continue
        suite = SUITES[suite_name]
        ps = [p for p in config.p_grid if suite.accepts(p)]
        sizes = (2,) if suite.pair_only else config.sizes
        for kind in config.kinds:
            for n in sizes:
                for d in config.dims:
                    for p in ps:
                        for trial in range(config.trials):
                            seed = cell_seed(config.seed, suite_name, kind, n, d, p, trial)
                            T = generate(EnsembleSpec(kind, n, d, seed))
                            for rep in suite.runner(T, p, config.tol):
                                rows.append({
                                    "suite": suite_name,
                                    "tag": rep.tag,
                                    "p": rep.p,
                                    "n": n,
                                    "d": d,
                                    "kind": kind,
                                    "trial": trial,
                                    "lhs": rep.lhs,
                                    "rhs": rep.rhs,
                                    "margin": rep.margin,
                                    "satisfied": rep.satisfied,
                                })
    summary = _summarize(rows)
    report = {"meta": _meta(config), "results": rows, "summary": summary}
    report_path = Path(config.out) / "verify_report.json"
    save_json(report_path, report)
    for suite_name, entry in summary.items():
        print(f"{suite_name}: {entry['count']} checks, worst margin {entry['worst_margin']:.3e}, "
              f"violations {entry['violations']}")
    violations = sum(e["violations"] for e in summary.values())
    elapsed = time.perf_counter() - started
    print(f"total: {len(rows)} checks, {violations} violations, {elapsed:.1f}s")
    print(f"report: {report_path}")
    if config.figures:
        from .figures import margins_figure

        fig_path = margins_figure(rows, Path(config.out) / "margins.png")
        print(f"figure: {fig_path}")
    return (1 if violations else 0), report


def run_conjecture(config: CampaignConfig) -> tuple[int, dict]:
    """Certificate-search campaign over the configured grid.

    Exit code 1 is reserved for a trace necessary-condition failure, which
    contradicts a proved inequality and therefore signals a bug (or a
    discovery) rather than a search shortfall; unresolved instances exit 0.
    """
    validate_config(config, conjecture=True)
    started = time.perf_counter()
    records: list[dict] = []
    trace_failures = 0
    for kind in config.kinds:
        for n in config.sizes:
            for d in config.dims:
                for p in config.p_grid:
                    for trial in range(config.trials):
                        seed = cell_seed(config.seed, "conjecture", kind, n, d, p, trial)
                        T = generate(EnsembleSpec(kind, n, d, seed))
                        inst = ConjectureInstance(T, p)
                        nec = necessary_conditions(inst, config.tol)
                        cert = unitary_search(inst, budget=config.budget,
                                              restarts=config.restarts, seed=seed,
                                              tol=config.tol)
                        if not nec.trace.satisfied:
                            trace_failures += 1
                        rec = {
                            "suite": "conjecture",
                            "kind": kind,
                            "n": n,
                            "d": d,
                            "trial": trial,
                            "necessary_trace_ok": nec.trace.satisfied,
                            "necessary_trace_margin": nec.trace.margin,
                            "necessary_weyl_ok": nec.weyl_ok,
                        }
                        rec.update(cert.as_dict(include_unitaries=True))
                        records.append(rec)
    counts: dict[str, int] = {}
    for rec in records:
        counts[rec["status"]] = counts.get(rec["status"], 0) + 1
    worst = max((rec["residual"] for rec in records), default=0.0)
    summary = {"counts": counts, "worst_residual": worst,
               "trace_condition_failures": trace_failures}
    report = {"meta": _meta(config), "results": records, "summary": summary}
    report_path = Path(config.out) / "conjecture_report.json"
    save_json(report_path, report)
    elapsed = time.perf_counter() - started
    print(f"instances: {len(records)}, status counts: {counts}, "
          f"worst residual {worst:.3e}, {elapsed:.1f}s")
    print(f"report: {report_path}")
    if config.figures:
        from .figures import residuals_figure

        fig_path = residuals_figure(records, Path(config.out) / "residuals.png")
        print(f"figure: {fig_path}")
    return (1 if trace_failures else 0), report


def run_witness(T: OperatorTuple, p: float, out: Path | None = None,
                tol: Tolerances = DEFAULT_TOL) -> tuple[int, dict]:
    """Witness construction report for one tuple: identities, the pairing
    bound with canonical witnesses, and the end-to-end replay vs the direct
    inequality."""
    p = float(p)
    if not 1.0 < p <= 2.0:
        raise ConfigError(f"witness construction needs 1 < p <= 2, got {p}")
    q = dual_exponent(p)
    W = witness_set(T, p, tol)
    identities = []
    ok = True

    def identity_row(label, Y, B):
        nonlocal ok
        target = snorm(B, p, tol) ** q
        pairing = trace_pairing(Y, B)
        wnorm = snorm(Y, q, tol) ** p
        scale = max(1.0, target)
        err_tr = abs(pairing - target) / scale
        err_nm = abs(wnorm - target) / scale
        ok = ok and err_tr <= tol.rtol and err_nm <= tol.rtol
        return {
            "part": label,
            "trace_pairing": [pairing.real, pairing.imag],
            "norm_identity_target": target,
            "witness_norm_power": wnorm,
            "rel_err_trace": err_tr,
            "rel_err_norm": err_nm,
        }

    identities.append(identity_row("sum", W.y, T.total()))
    for (i, j), D in T.differences():
        identities.append(identity_row(f"diff_{i}_{j}", W.pairs[(i, j)], D))
    pairing_rep = pairing_bound_check(T, W, p, tol)
    replay_rep = ak_from_witness(T, p, tol)
    direct_rep = ak(T, p, tol)
    agree = (
        math.isclose(replay_rep.lhs, direct_rep.lhs, rel_tol=tol.rtol, abs_tol=tol.atol)
        and math.isclose(replay_rep.rhs, direct_rep.rhs, rel_tol=tol.rtol, abs_tol=tol.atol)
    )
    ok = ok and pairing_rep.satisfied and replay_rep.satisfied and agree
    report = {
        "p": p,
        "q": q,
        "n": T.n,
        "d": T.d,
        "identities": identities,
        "pairing_bound": pairing_rep.as_dict(),
        "ak_witness": replay_rep.as_dict(),
        "ak": direct_rep.as_dict(),
        "replay_matches_direct": agree,
        "all_ok": ok,
    }
    worst_id = max((max(r["rel_err_trace"], r["rel_err_norm"]) for r in identities), default=0.0)
    print(f"witness identities: {len(identities)} parts, worst relative error {worst_id:.3e}")
    print(f"pairing bound: lhs {pairing_rep.lhs:.6e} <= rhs {pairing_rep.rhs:.6e} "
          f"(margin {pairing_rep.margin:.3e})")
    print(f"replay vs direct: lhs {replay_rep.lhs:.6e} vs {direct_rep.lhs:.6e}, "
          f"rhs {replay_rep.rhs:.6e} vs {direct_rep.rhs:.6e}, agree={agree}")
    if out is not None:
        report_path = Path(out) / "witness_report.json"
        save_json(report_path, report)
        print(f"report: {report_path}")
    return (0 if ok else 1), report


def run_interpolate(T: OperatorTuple, p: float, out: Path,
                    x_points: int = 9, y_points: int = 41, y_max: float = 5.0,
                    figures: bool = True,
                    tol: Tolerances = DEFAULT_TOL) -> tuple[int, dict]:
    """Scan the analytic family on the strip; write CSV (and the figure)."""
    p = float(p)
    if not 1.0 < p <= 2.0:
        raise ConfigError(f"interpolation scans need 1 < p <= 2, got {p}")
    if x_points < 3 or y_points < 1 or not y_max > 0:
        raise ConfigError("need x_points >= 3, y_points >= 1 and y_max > 0")
    W = witness_set(T, p, tol)
    xs = np.linspace(0.5, 1.0, x_points)
    ys = np.linspace(-y_max, y_max, y_points)
    scan = convexity_scan(T, W, p, xs, ys, tol)
    out = Path(out)
    csv_path = out / "scan.csv"
    write_scan_csv(csv_path, scan.samples)
    target = abs(scan.value_at_target)
    bound_ok = target <= scan.target_bound + tol.rtol * max(1.0, scan.target_bound)
    defect_ok = scan.max_midpoint_defect <= tol.scan
    print(f"boundary bounds: M1 {scan.m1:.6e}, M2 {scan.m2:.6e}")
    print(f"x = 1/p: |f| {target:.6e} <= three-lines bound {scan.target_bound:.6e} "
          f"-> {'ok' if bound_ok else 'VIOLATED'}")
    print(f"max midpoint log-convexity defect {scan.max_midpoint_defect:.3e} "
          f"(tolerance {tol.scan:g}) -> {'ok' if defect_ok else 'VIOLATED'}")
    print(f"scan: {csv_path}")
    if figures:
        from .figures import interpolation_figure

        fig_path = interpolation_figure(scan, out / "interpolation.png", p)
        print(f"figure: {fig_path}")
    doc = {
        "p": p,
        "m1": scan.m1,
        "m2": scan.m2,
        "value_at_target": [scan.value_at_target.real, scan.value_at_target.imag],
        "target_bound": scan.target_bound,
        "max_midpoint_defect": scan.max_midpoint_defect,
        "rows": len(scan.samples),
    }
    return (0 if bound_ok and defect_ok else 1), doc
