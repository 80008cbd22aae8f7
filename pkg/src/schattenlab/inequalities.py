"""Clarkson-McCarthy type inequality checkers for Schatten p-norms.

Every checker evaluates both sides at the given exponent, dispatches the
inequality direction on the regime (``p <= 2`` vs ``p >= 2``; at ``p == 2``
both coincide and every margin is zero), and returns a numeric
:class:`~schattenlab.reports.InequalityReport` rather than a bare boolean.

The families covered, for square complex A, B and tuples (A_1, ..., A_n),
writing M = ||A+B||_p^p + ||A-B||_p^p and q for the dual exponent:

* Clarkson: 2^(p-1)(||A||_p^p + ||B||_p^p) <= M <= 2(||A||_p^p + ||B||_p^p)
  for 0 < p <= 2, both reversed for p >= 2.
* Hirzallah-Kittaneh n-tuple version: n^(p-1) sum ||A_i||_p^p <=
  ||sum A_i||_p^p + sum_{i<j} ||A_i - A_j||_p^p for 0 < p <= 2, reversed
  for p >= 2.
* Ball-Carlen-Lieb: ||A||_p^2 + (p-1)||B||_p^2 <= (M/2)^(2/p) for
  1 <= p <= 2, reversed for p >= 2.
* the concavity step linking the previous bound to Clarkson's p-th-power
  form: (||A||_p^2 + (p-1)||B||_p^2)^(p/2) >=
  2^(p/2-1)(||A||_p^p + (p-1)^(p/2)||B||_p^p) for 1 <= p <= 2.
* McCarthy: ||A+B||_p^q + ||A-B||_p^q <= 2(||A||_p^p + ||B||_p^p)^(q/p) for
  1 < p <= 2, reversed for p >= 2.
* Audenaert-Kittaneh: ||sum A_i||_p^q + sum_{i<j} ||A_i - A_j||_p^q <=
  n (sum ||A_i||_p^p)^(q/p) for 1 < p <= 2, reversed for p >= 2.
* Conde-Moslehian: same two-sided statement with coefficient n^(q/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matcore import DEFAULT_TOL, Tolerances, as_matrix
from .reports import InequalityReport, make_equality_report, make_report
from .schatten import dual_exponent, snorm

__all__ = [
    "OperatorTuple",
    "InequalityReport",
    "clarkson_pair",
    "parallelogram",
    "hk_ntuple",
    "bcl",
    "bcl_dominates_clarkson",
    "mccarthy",
    "ak",
    "cm",
]


@dataclass(frozen=True)
class OperatorTuple:
    """An ordered tuple of same-sized square complex matrices."""

    mats: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.mats) < 1:
            raise ValueError("OperatorTuple needs at least one matrix")
        mats = tuple(as_matrix(M, f"mats[{k}]") for k, M in enumerate(self.mats))
        d = mats[0].shape[0]
        for k, M in enumerate(mats):
            if M.shape != (d, d):
                raise ValueError(f"mats[{k}] has shape {M.shape}, expected {(d, d)}")
        object.__setattr__(self, "mats", mats)

    @property
    def n(self) -> int:
        return len(self.mats)

    @property
    def d(self) -> int:
        return self.mats[0].shape[0]

    def __iter__(self):
        return iter(self.mats)

    def __getitem__(self, k) -> np.ndarray:
        return self.mats[k]

    def total(self) -> np.ndarray:
        """The sum A_1 + ... + A_n."""
        return np.sum(np.stack(self.mats), axis=0)

    def differences(self) -> list[tuple[tuple[int, int], np.ndarray]]:
        """All pairwise differences A_i - A_j for i < j in lexicographic order."""
        out = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                out.append(((i, j), self.mats[i] - self.mats[j]))
        return out


def _as_pair(A, B) -> OperatorTuple:
    return OperatorTuple((A, B))


def _check_p(p, low: float, low_inclusive: bool, what: str) -> float:
    p = float(p)
    if math.isnan(p) or math.isinf(p):
        raise ValueError(f"{what} needs a finite exponent, got {p}")
    ok = p >= low if low_inclusive else p > low
    if not ok:
        cmp = ">=" if low_inclusive else ">"
        raise ValueError(f"{what} needs p {cmp} {low}, got {p}")
    return p


def clarkson_pair(A, B, p, tol: Tolerances = DEFAULT_TOL) -> tuple[InequalityReport, InequalityReport]:
    """Both Clarkson inequalities for the pair (A, B); see module docstring.

    Returns (lower, upper) reports bounding M = ||A+B||_p^p + ||A-B||_p^p
    from below and above. Direction of the constants flips at p = 2.
    """
    pair = _as_pair(A, B)
    p = _check_p(p, 0.0, False, "clarkson_pair")
    power_sum = snorm(pair[0], p, tol) ** p + snorm(pair[1], p, tol) ** p
    mid = snorm(pair[0] + pair[1], p, tol) ** p + snorm(pair[0] - pair[1], p, tol) ** p
    small, big = sorted((2.0 ** (p - 1.0) * power_sum, 2.0 * power_sum))
    lower = make_report("clarkson_lower", small, mid, p=p, n=2, d=pair.d, tol=tol)
    upper = make_report("clarkson_upper", mid, big, p=p, n=2, d=pair.d, tol=tol)
    return lower, upper


def parallelogram(A, B, tol: Tolerances = DEFAULT_TOL) -> InequalityReport:
    """Parallelogram law ||A-B||_2^2 + ||A+B||_2^2 = 2(||A||_2^2 + ||B||_2^2).

    The report's margin is minus the absolute defect.
    """
    pair = _as_pair(A, B)
    lhs = snorm(pair[0] - pair[1], 2, tol) ** 2 + snorm(pair[0] + pair[1], 2, tol) ** 2
    rhs = 2.0 * (snorm(pair[0], 2, tol) ** 2 + snorm(pair[1], 2, tol) ** 2)
    return make_equality_report("parallelogram", lhs, rhs, p=2.0, n=2, d=pair.d, tol=tol)


def hk_ntuple(T: OperatorTuple, p, tol: Tolerances = DEFAULT_TOL) -> InequalityReport:
    """Hirzallah-Kittaneh n-tuple inequality (reduces to Clarkson at n = 2)."""
    p = _check_p(p, 0.0, False, "hk_ntuple")
    n = T.n
    scaled = n ** (p - 1.0) * sum(snorm(M, p, tol) ** p for M in T)
    spread = snorm(T.total(), p, tol) ** p + sum(snorm(D, p, tol) ** p for _, D in T.differences())
    if p <= 2.0:
        lhs, rhs = scaled, spread
    else:
        lhs, rhs = spread, scaled
    return make_report("hk", lhs, rhs, p=p, n=n, d=T.d, tol=tol)


def bcl(A, B, p, tol: Tolerances = DEFAULT_TOL) -> InequalityReport:
    """Ball-Carlen-Lieb two-point inequality (1 <= p <= 2; reversed above 2)."""
    pair = _as_pair(A, B)
    p = _check_p(p, 1.0, True, "bcl")
    mid = snorm(pair[0] + pair[1], p, tol) ** p + snorm(pair[0] - pair[1], p, tol) ** p
    convexity_side = (mid / 2.0) ** (2.0 / p)
    norm_side = snorm(pair[0], p, tol) ** 2 + (p - 1.0) * snorm(pair[1], p, tol) ** 2
    if p <= 2.0:
        lhs, rhs = norm_side, convexity_side
    else:
        lhs, rhs = convexity_side, norm_side
    return make_report("bcl", lhs, rhs, p=p, n=2, d=pair.d, tol=tol)


def bcl_dominates_clarkson(A, B, p, tol: Tolerances = DEFAULT_TOL) -> InequalityReport:
    """Concavity step relating the Ball-Carlen-Lieb bound to Clarkson's form.

    For 1 <= p <= 2 and x, y >= 0, concavity of t^(p/2) gives
    (x + y)^(p/2) >= 2^(p/2-1)(x^(p/2) + y^(p/2)); applied with
    x = ||A||_p^2 and y = (p-1)||B||_p^2 this yields

        (||A||_p^2 + (p-1)||B||_p^2)^(p/2)
            >= 2^(p/2-1)(||A||_p^p + (p-1)^(p/2)||B||_p^p).

    The (p-1)^(p/2) factor on the ||B|| term is essential: dropping it flips
    the claim into a falsehood for p < 2 (it would need (p-1)^(p/2) >= 1).
    """
    pair = _as_pair(A, B)
    p = _check_p(p, 1.0, True, "bcl_dominates_clarkson")
    if p > 2.0:
        raise ValueError(f"bcl_dominates_clarkson needs 1 <= p <= 2, got {p}")
    na = snorm(pair[0], p, tol)
    nb = snorm(pair[1], p, tol)
    lhs = 2.0 ** (p / 2.0 - 1.0) * (na ** p + (p - 1.0) ** (p / 2.0) * nb ** p)
    rhs = (na ** 2 + (p - 1.0) * nb ** 2) ** (p / 2.0)
    return make_report("bcl_vs_clarkson", lhs, rhs, p=p, n=2, d=pair.d, tol=tol)


def mccarthy(A, B, p, tol: Tolerances = DEFAULT_TOL) -> InequalityReport:
    """McCarthy's dual-power pair inequality (1 < p <= 2; reversed above 2)."""
    pair = _as_pair(A, B)
    p = _check_p(p, 1.0, False, "mccarthy")
    q = dual_exponent(p)
    dual_side = snorm(pair[0] + pair[1], p, tol) ** q + snorm(pair[0] - pair[1], p, tol) ** q
    power_side = 2.0 * (snorm(pair[0], p, tol) ** p + snorm(pair[1], p, tol) ** p) ** (q / p)
    if p <= 2.0:
        lhs, rhs = dual_side, power_side
    else:
        lhs, rhs = power_side, dual_side
    return make_report("mccarthy", lhs, rhs, p=p, n=2, d=pair.d, tol=tol)


def _ak_sides(T: OperatorTuple, p: float, coeff: float, tol: Tolerances) -> tuple[float, float]:
    q = dual_exponent(p)
    spread = snorm(T.total(), p, tol) ** q + sum(snorm(D, p, tol) ** q for _, D in T.differences())
    bound = coeff * sum(snorm(M, p, tol) ** p for M in T) ** (q / p)
    if p <= 2.0:
        return spread, bound
    return bound, spread


def ak(T: OperatorTuple, p, tol: Tolerances = DEFAULT_TOL) -> InequalityReport:
    """Audenaert-Kittaneh n-tuple inequality with coefficient n.

    Both directions are equalities when A_1 = ... = A_n, so the constant n
    is sharp.
    """
    p = _check_p(p, 1.0, False, "ak")
    lhs, rhs = _ak_sides(T, p, float(T.n), tol)
    return make_report("ak", lhs, rhs, p=p, n=T.n, d=T.d, tol=tol)


def cm(T: OperatorTuple, p, tol: Tolerances = DEFAULT_TOL) -> InequalityReport:
    """Conde-Moslehian variant with coefficient n^(q/2).

    Weaker than :func:`ak` whenever q != 2 (the coefficient is larger for
    1 < p < 2 and smaller for p > 2), and in particular not tight on equal
    tuples away from p = 2.
    """
    p = _check_p(p, 1.0, False, "cm")
    q = dual_exponent(p)
    lhs, rhs = _ak_sides(T, p, float(T.n) ** (q / 2.0), tol)
    return make_report("cm", lhs, rhs, p=p, n=T.n, d=T.d, tol=tol)
