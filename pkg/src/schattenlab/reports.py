"""Shared report record for inequality checks."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .matcore import DEFAULT_TOL, Tolerances

__all__ = ["InequalityReport", "make_report", "make_equality_report"]


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of one inequality evaluation.

    ``lhs <= rhs`` is the claim; ``margin = (rhs - lhs) / max(1, rhs)`` so a
    negative margin means a violation. Equality-style checks store the
    unnormalized defect as ``-margin`` instead. The exponent ``p`` and the
    instance shape (``n`` operators of dimension ``d``) ride along so report
    rows can never silently mix regimes.
    """

    tag: str
    lhs: float
    rhs: float
    margin: float
    satisfied: bool
    p: float
    n: int
    d: int

    def as_dict(self) -> dict:
        return asdict(self)


def make_report(tag: str, lhs: float, rhs: float, p: float, n: int, d: int,
                tol: Tolerances = DEFAULT_TOL) -> InequalityReport:
    """Report for a one-sided claim ``lhs <= rhs``."""
    lhs = float(lhs)
    rhs = float(rhs)
    if not (math.isfinite(lhs) and math.isfinite(rhs)):
        raise ValueError(f"{tag}: non-finite sides lhs={lhs} rhs={rhs}")
    margin = (rhs - lhs) / max(1.0, rhs)
    return InequalityReport(tag=tag, lhs=lhs, rhs=rhs, margin=margin,
                            satisfied=margin >= -tol.margin, p=float(p), n=int(n), d=int(d))


def make_equality_report(tag: str, lhs: float, rhs: float, p: float, n: int, d: int,
                         tol: Tolerances = DEFAULT_TOL,
                         accept: float | None = None) -> InequalityReport:
    """Report for an equality claim; margin is minus the absolute defect."""
    lhs = float(lhs)
    rhs = float(rhs)
    defect = abs(rhs - lhs)
    threshold = tol.margin if accept is None else accept
    return InequalityReport(tag=tag, lhs=lhs, rhs=rhs, margin=-defect,
                            satisfied=defect <= threshold, p=float(p), n=int(n), d=int(d))
