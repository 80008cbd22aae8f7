"""Schatten p-(quasi-)norms, dual exponents and trace pairings.

For 0 < p < infinity, ``||X||_p = (sum_j s_j(X)^p)^(1/p)`` over the singular
values of ``X``; ``p = inf`` gives the operator norm ``s_1(X)``. Values of p
in (0, 1) give a quasi-norm (the triangle inequality only holds for p-th
powers). The Hoelder pairing ``|tr(Y B)| <= ||Y||_q ||B||_p`` uses the dual
exponent ``1/p + 1/q = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matcore import DEFAULT_TOL, Tolerances, as_matrix
from .reports import InequalityReport, make_report

__all__ = [
    "SchattenExponent",
    "NormValue",
    "schatten_norm",
    "snorm",
    "dual_exponent",
    "trace_pairing",
    "holder_check",
]


@dataclass(frozen=True)
class SchattenExponent:
    """A validated norm exponent: any real p > 0, or infinity."""

    p: float

    def __post_init__(self):
        p = float(self.p)
        if math.isnan(p) or p <= 0.0:
            raise ValueError(f"Schatten exponent must be > 0, got {self.p}")
        object.__setattr__(self, "p", p)

    @property
    def is_quasi(self) -> bool:
        return self.p < 1.0

    @property
    def dual(self) -> float:
        return dual_exponent(self.p)


@dataclass(frozen=True)
class NormValue:
    """A norm value that remembers which exponent produced it."""

    value: float
    p: float
    is_quasi: bool

    def __float__(self) -> float:
        return self.value


def _exponent(p) -> float:
    if isinstance(p, SchattenExponent):
        return p.p
    p = float(p)
    if math.isnan(p) or p <= 0.0:
        raise ValueError(f"Schatten exponent must be > 0, got {p}")
    return p


def dual_exponent(p) -> float:
    """The conjugate exponent q with 1/p + 1/q = 1; requires p > 1."""
    p = _exponent(p)
    if p <= 1.0:
        raise ValueError(f"dual exponent needs p > 1, got {p}")
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def schatten_norm(X, p, tol: Tolerances = DEFAULT_TOL) -> NormValue:
    """Schatten p-(quasi-)norm of a square complex matrix.

    For p < 1, singular values below ``zero_rel`` times the largest one are
    treated as exact zeros before the p-th power is taken; otherwise the
    numerical noise of rank-deficient inputs (singular values ~1e-16) would
    contribute ~1e-8 apiece at p = 0.5.
    """
    M = as_matrix(X)
    p = _exponent(p)
    s = np.linalg.svd(M, compute_uv=False)
    if math.isinf(p):
        return NormValue(value=float(s[0]), p=p, is_quasi=False)
    if p < 1.0 and s[0] > 0.0:
        s = s[s > tol.zero_rel * s[0]]
    if s.size == 0 or s[0] == 0.0:
        return NormValue(value=0.0, p=p, is_quasi=p < 1.0)
    value = float(np.sum(s ** p) ** (1.0 / p))
    return NormValue(value=value, p=p, is_quasi=p < 1.0)


def snorm(X, p, tol: Tolerances = DEFAULT_TOL) -> float:
    """Shorthand for ``schatten_norm(X, p).value``."""
    return schatten_norm(X, p, tol).value


def trace_pairing(Y, B) -> complex:
    """The bilinear pairing ``tr(Y B)``."""
    My = as_matrix(Y, "Y")
    Mb = as_matrix(B, "B")
    if My.shape != Mb.shape:
        raise ValueError(f"shape mismatch: {My.shape} vs {Mb.shape}")
    return complex(np.trace(My @ Mb))


def holder_check(X, Y, p, tol: Tolerances = DEFAULT_TOL) -> InequalityReport:
    """Hoelder inequality ``|tr(X Y)| <= ||X||_p ||Y||_q`` with q dual to p."""
    p = _exponent(p)
    q = dual_exponent(p)
    lhs = abs(trace_pairing(X, Y))
    rhs = snorm(X, p, tol) * snorm(Y, q, tol)
    d = as_matrix(X).shape[0]
    return make_report("holder", lhs, rhs, p=p, n=2, d=d, tol=tol)
