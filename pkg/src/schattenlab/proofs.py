"""Replay of the interpolation and duality arguments behind the n-tuple
Audenaert-Kittaneh inequality.

The machinery, for a tuple (A_1, ..., A_n), an exponent 1 < p <= 2 with dual
q, B = sum_k A_k and B_{i,j} = A_i - A_j:

* dual witnesses: from the left polar factorization B = U|B|, the operator
  Y = ||B||_p^(q-p) |B|^(p-1) U* satisfies tr(Y B) = ||B||_p^q = ||Y||_q^p.
* an entire family: with right polar parts A_k = |A_k| W_k and left polar
  parts Y = V|Y|, set A_k(z) = |A_k|^(pz) W_k and
  Y(z) = ||Y||_q^(pz - q(1-z)) V |Y|^(q(1-z)); then
  f(z) = tr(Y(z) B(z)) + sum_{i<j} tr(Y_{i,j}(z) B_{i,j}(z)) recovers the
  plain pairing at z = 1/p.
* boundary bounds on the strip 1/2 <= Re z <= 1: writing
  S = ||Y||_q^p + sum ||Y_{i,j}||_q^p and T_p = sum_k ||A_k||_p^p,
  |f(1 + iy)| <= M_1 = S T_p (trace-norm factorization) and
  |f(1/2 + iy)| <= M_2 = sqrt(n S T_p) (Cauchy-Schwarz in the Frobenius
  pairing, plus the n-tuple parallelogram identity).
* Hadamard three lines: |f(1/p)| <= M_1^(2(1/p - 1/2)) M_2^(2(1 - 1/p)),
  which evaluates to n^(1/q) T_p^(1/p) S^(1/p).
* cancellation: with the canonical witnesses S equals
  ||B||_p^q + sum ||B_{i,j}||_p^q, and dividing by S^(1/p) gives the
  n-coefficient inequality checked by :func:`schattenlab.inequalities.ak`.
* duality: norming functionals turn the q >= 2 statement into the
  1 < p <= 2 one, so proving one side proves both.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .inequalities import OperatorTuple
from .matcore import DEFAULT_TOL, Tolerances, as_matrix, polar, psd_power
from .reports import InequalityReport, make_report
from .schatten import dual_exponent, snorm

__all__ = [
    "WitnessSet",
    "StripPoint",
    "InterpolationSample",
    "ConvexityScan",
    "FamilyEvaluator",
    "dual_witness",
    "witness_set",
    "analytic_family_eval",
    "boundary_bound",
    "three_lines_bound",
    "chord_bound",
    "pairing_bound_check",
    "convexity_scan",
    "norming_functional",
    "duality_images",
    "ak_via_duality",
    "ak_from_witness",
]


def _check_strip_p(p) -> float:
    p = float(p)
    if not 1.0 < p <= 2.0:
        raise ValueError(f"the interpolation argument operates at 1 < p <= 2, got p={p}")
    return p


@dataclass(frozen=True)
class WitnessSet:
    """Dual-side operators paired against a tuple's sum and differences.

    ``y`` faces ``sum A_k``; ``pairs[(i, j)]`` faces ``A_i - A_j``. Usually
    built by :func:`witness_set`, but any operators of the right shape are
    accepted (the pairing bound holds for all of them). Zero matrices mark
    absent witnesses and contribute nothing to the analytic family.
    """

    y: np.ndarray
    pairs: dict[tuple[int, int], np.ndarray]
    p: float

    def all_pairs(self, n: int) -> list[tuple[tuple[int, int], np.ndarray]]:
        out = []
        for i in range(n):
            for j in range(i + 1, n):
                if (i, j) not in self.pairs:
                    raise ValueError(f"witness for pair {(i, j)} is missing")
                out.append(((i, j), self.pairs[(i, j)]))
        return out


@dataclass(frozen=True)
class StripPoint:
    """A point x + iy of the closed strip 1/2 <= x <= 1."""

    x: float
    y: float = 0.0

    def __post_init__(self):
        if not 0.5 <= self.x <= 1.0:
            raise ValueError(f"strip points need 1/2 <= x <= 1, got x={self.x}")

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)


@dataclass(frozen=True)
class InterpolationSample:
    z: complex
    f_value: complex
    bound_at_x: float


def dual_witness(B, p, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """The norming operator Y = ||B||_p^(q-p) |B|^(p-1) U* for B = U|B|.

    Satisfies tr(Y B) = ||B||_p^q = ||Y||_q^p. Returns the zero matrix when
    B vanishes.
    """
    M = as_matrix(B, "B")
    p = _check_strip_p(p)
    q = dual_exponent(p)
    norm_b = snorm(M, p, tol)
    if norm_b == 0.0:
        return np.zeros_like(M)
    parts = polar(M, side="left")
    return norm_b ** (q - p) * psd_power(parts.modulus, p - 1.0, tol) @ parts.unitary.conj().T


def witness_set(T: OperatorTuple, p, tol: Tolerances = DEFAULT_TOL) -> WitnessSet:
    """Canonical witnesses for the tuple: one for the sum, one per difference."""
    p = _check_strip_p(p)
    y = dual_witness(T.total(), p, tol)
    pairs = {ij: dual_witness(D, p, tol) for ij, D in T.differences()}
    return WitnessSet(y=y, pairs=pairs, p=p)


class FamilyEvaluator:
    """Evaluates the entire family f(z) for one tuple and witness set.

    Polar parts and eigendecompositions are prepared once, so each call to
    :meth:`value` costs a handful of d x d products. The zero-eigenvalue
    convention 0**t = 0 (Re t >= 0) keeps every matrix entry of the family
    an entire function of z, rank-deficient inputs included.
    """

    def __init__(self, T: OperatorTuple, W: WitnessSet, p, tol: Tolerances = DEFAULT_TOL):
        self.p = _check_strip_p(p)
        self.q = dual_exponent(self.p)
        self.n = T.n
        self.d = T.d
        self.tol = tol
        self._a_parts = []
        for A in T:
            parts = polar(A, side="right")
            w, Q = np.linalg.eigh(parts.modulus)
            w = np.clip(w, 0.0, None)
            self._a_parts.append((w, Q, Q.conj().T @ parts.unitary))
        self._pair_index = [ij for ij, _ in T.differences()]
        self._y_parts = self._witness_parts(W.y)
        self._pair_parts = {}
        for ij, Yij in W.all_pairs(T.n):
            if as_matrix(Yij, f"pairs[{ij}]").shape != (T.d, T.d):
                raise ValueError(f"witness for pair {ij} has the wrong shape")
            self._pair_parts[ij] = self._witness_parts(Yij)
        self.sum_witness_norms = (
            (0.0 if self._y_parts is None else self._y_parts[0] ** self.p)
            + sum(0.0 if wp is None else wp[0] ** self.p for wp in self._pair_parts.values())
        )
        self.sum_tuple_norms = sum(snorm(A, self.p, tol) ** self.p for A in T)

    def _witness_parts(self, Y):
        sigma = snorm(Y, self.q, self.tol)
        if sigma == 0.0:
            return None
        parts = polar(as_matrix(Y, "witness"), side="left")
        w, Q = np.linalg.eigh(parts.modulus)
        w = np.clip(w, 0.0, None)
        return (sigma, w, parts.unitary @ Q, Q.conj().T)

    @staticmethod
    def _powvec(w: np.ndarray, t: complex, zero_rel: float) -> np.ndarray:
        top = float(w[-1]) if w.size else 0.0
        cut = zero_rel * top
        keep = w > cut
        logs = np.log(np.where(keep, w, 1.0))
        return np.where(keep, np.exp(t * logs), 0.0)

    def value(self, z) -> complex:
        """f(z) = tr(Y(z) B(z)) + sum_{i<j} tr(Y_{i,j}(z) (A_i(z) - A_j(z)))."""
        if isinstance(z, StripPoint):
            z = z.z
        z = complex(z)
        p, q = self.p, self.q
        a_of_z = [
            (Q * self._powvec(w, p * z, self.tol.zero_rel)) @ M
            for w, Q, M in self._a_parts
        ]
        b_of_z = sum(a_of_z)

        def term(parts, target):
            if parts is None:
                return 0.0 + 0.0j
            sigma, w, vq, qh = parts
            prefactor = cmath.exp((p * z - q * (1.0 - z)) * math.log(sigma))
            weights = self._powvec(w, q * (1.0 - z), self.tol.zero_rel)
            diag = np.einsum("ij,jk,ki->i", qh, target, vq)
            return prefactor * complex(np.sum(weights * diag))

        total = term(self._y_parts, b_of_z)
        for i, j in self._pair_index:
            total += term(self._pair_parts[(i, j)], a_of_z[i] - a_of_z[j])
        return complex(total)

    def boundary(self, x: float) -> float:
        """M_1 (x = 1) or M_2 (x = 1/2); other abscissas are not boundary."""
        S, Tp = self.sum_witness_norms, self.sum_tuple_norms
        if x == 1.0:
            return S * Tp
        if x == 0.5:
            return math.sqrt(self.n * S * Tp)
        raise ValueError(f"boundary abscissa must be 1/2 or 1, got {x}")


def analytic_family_eval(T: OperatorTuple, W: WitnessSet, p, z,
                         tol: Tolerances = DEFAULT_TOL) -> complex:
    """One-off evaluation of the analytic family at z (see FamilyEvaluator)."""
    return FamilyEvaluator(T, W, p, tol).value(z)


def boundary_bound(T: OperatorTuple, W: WitnessSet, p, x: float,
                   tol: Tolerances = DEFAULT_TOL) -> float:
    """The strip-boundary bound at x = 1 (M_1) or x = 1/2 (M_2)."""
    return FamilyEvaluator(T, W, p, tol).boundary(float(x))


def three_lines_bound(m1: float, m2: float, p) -> float:
    """Hadamard three-lines bound at x = 1/p on the strip [1/2, 1].

    Interpolates the boundary bounds: M_1^(2(1/p - 1/2)) M_2^(2(1 - 1/p)).
    At p = 2 this is just M_2.
    """
    p = _check_strip_p(p)
    return chord_bound(float(m1), float(m2), 1.0 / p)


def chord_bound(m1: float, m2: float, x: float) -> float:
    """The log-linear interpolant M_1^(2x - 1) M_2^(2 - 2x) on 1/2 <= x <= 1."""
    if not 0.5 <= x <= 1.0:
        raise ValueError(f"chord abscissa must lie in [1/2, 1], got {x}")
    if m1 < 0.0 or m2 < 0.0:
        raise ValueError("boundary bounds must be nonnegative")
    return m1 ** (2.0 * x - 1.0) * m2 ** (2.0 - 2.0 * x)


def pairing_bound_check(T: OperatorTuple, W: WitnessSet, p,
                        tol: Tolerances = DEFAULT_TOL) -> InequalityReport:
    """Interpolated trace-pairing bound for arbitrary dual-side operators:

        |tr(Y B) + sum_{i<j} tr(Y_{i,j} B_{i,j})|
            <= n^(1/q) (sum_k ||A_k||_p^p)^(1/p)
                       (||Y||_q^p + sum ||Y_{i,j}||_q^p)^(1/p).
    """
    p = _check_strip_p(p)
    q = dual_exponent(p)
    B = T.total()
    paired = complex(np.trace(as_matrix(W.y, "y") @ B))
    for ij, D in T.differences():
        paired += complex(np.trace(as_matrix(W.pairs[ij]) @ D))
    S = snorm(W.y, q, tol) ** p + sum(snorm(W.pairs[ij], q, tol) ** p for ij, _ in T.differences())
    Tp = sum(snorm(A, p, tol) ** p for A in T)
    rhs = T.n ** (1.0 / q) * Tp ** (1.0 / p) * S ** (1.0 / p)
    return make_report("pairing_bound", abs(paired), rhs, p=p, n=T.n, d=T.d, tol=tol)


@dataclass(frozen=True)
class ConvexityScan:
    """Grid scan of M(x) = sup_y |f(x + iy)| across the strip.

    ``sup_abs[i]`` is the sampled sup at ``x_grid[i]``; the midpoint defect
    is max over consecutive triples of
    ``log M(x_mid) - (log M(x_left) + log M(x_right)) / 2`` (positive means
    a convexity violation at the sampling resolution). ``samples`` carries
    every grid evaluation along with the chord bound at its abscissa.
    """

    x_grid: np.ndarray
    y_grid: np.ndarray
    sup_abs: np.ndarray
    samples: list[InterpolationSample] = field(repr=False)
    m1: float
    m2: float
    value_at_target: complex
    target_bound: float
    max_midpoint_defect: float

    @property
    def midpoint_ok(self) -> bool:
        return self.max_midpoint_defect <= DEFAULT_TOL.scan

    def midpoint_within(self, tol_scan: float) -> bool:
        return self.max_midpoint_defect <= tol_scan


def convexity_scan(T: OperatorTuple, W: WitnessSet, p,
                   x_grid=None, y_grid=None,
                   tol: Tolerances = DEFAULT_TOL) -> ConvexityScan:
    """Sample |f| on a strip grid and measure log-convexity of the sups.

    Defaults: 9 abscissas across [1/2, 1] and 41 ordinates across [-5, 5].
    Instances whose family vanishes identically scan trivially (defect 0).
    """
    p = _check_strip_p(p)
    ev = FamilyEvaluator(T, W, p, tol)
    xs = np.linspace(0.5, 1.0, 9) if x_grid is None else np.asarray(x_grid, dtype=float)
    ys = np.linspace(-5.0, 5.0, 41) if y_grid is None else np.asarray(y_grid, dtype=float)
    if xs.ndim != 1 or ys.ndim != 1 or xs.size < 3 or ys.size < 1:
        raise ValueError("need a 1-d x grid (>= 3 points) and a 1-d y grid (>= 1 point)")
    if np.any(xs < 0.5) or np.any(xs > 1.0):
        raise ValueError("x grid must stay inside [1/2, 1]")
    m1 = ev.boundary(1.0)
    m2 = ev.boundary(0.5)
    samples: list[InterpolationSample] = []
    sups = np.zeros(xs.size)
    for i, x in enumerate(xs):
        bound_x = chord_bound(m1, m2, float(x)) if m1 > 0.0 and m2 > 0.0 else 0.0
        best = 0.0
        for y in ys:
            val = ev.value(complex(x, y))
            best = max(best, abs(val))
            samples.append(InterpolationSample(z=complex(x, y), f_value=val, bound_at_x=bound_x))
        sups[i] = best
    defect = 0.0
    if np.all(sups > 0.0):
        logs = np.log(sups)
        mids = logs[1:-1] - 0.5 * (logs[:-2] + logs[2:])
        defect = float(np.max(mids)) if mids.size else 0.0
    target = ev.value(1.0 / p)
    target_bound = three_lines_bound(m1, m2, p)
    return ConvexityScan(x_grid=xs, y_grid=ys, sup_abs=sups, samples=samples,
                         m1=m1, m2=m2, value_at_target=target,
                         target_bound=target_bound, max_midpoint_defect=defect)


def norming_functional(phi, q, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """The operator mu with ||mu||_p = 1 and tr(mu phi) = ||phi||_q (q > 1).

    Built from the left polar factorization phi = V|phi| as
    mu = |phi|^(q-1) V* / ||phi||_q^(q-1). Zero input has no norming
    functional and raises.
    """
    M = as_matrix(phi, "phi")
    q = float(q)
    if not q > 1.0:
        raise ValueError(f"norming functionals are built for q > 1, got {q}")
    norm_phi = snorm(M, q, tol)
    if norm_phi == 0.0:
        raise ValueError("the zero operator has no norming functional")
    parts = polar(M, side="left")
    return psd_power(parts.modulus, q - 1.0, tol) @ parts.unitary.conj().T / norm_phi ** (q - 1.0)


def duality_images(Phi: OperatorTuple, q, tol: Tolerances = DEFAULT_TOL) -> list[np.ndarray]:
    """The dual tuple x_i = (sum ||phi_i||_q^q)^(-1/p) ||phi_i||_q^(q-1) mu_i.

    Normalized so that sum ||x_i||_p^p = 1 with p dual to q. Zero members map
    to zero; an all-zero tuple is rejected.
    """
    q = float(q)
    if not q > 1.0:
        raise ValueError(f"duality needs q > 1, got {q}")
    p = dual_exponent(q)
    norms = [snorm(M, q, tol) for M in Phi]
    total = sum(v ** q for v in norms)
    if total == 0.0:
        raise ValueError("duality images are undefined for an all-zero tuple")
    scale = total ** (-1.0 / p)
    out = []
    for M, v in zip(Phi, norms):
        if v == 0.0:
            out.append(np.zeros_like(M))
        else:
            out.append(scale * v ** (q - 1.0) * norming_functional(M, q, tol))
    return out


def ak_via_duality(Phi: OperatorTuple, q, tol: Tolerances = DEFAULT_TOL) -> InequalityReport:
    """The q >= 2 n-tuple inequality obtained through norming functionals:

        n (sum ||phi_i||_q^q)^(p/q)
            <= ||sum phi_i||_q^p + sum_{i<j} ||phi_i - phi_j||_q^p,

    with p dual to q. This is exactly the statement :func:`ak` checks at
    exponent q, so both must agree up to report convention; the dual images
    (see :func:`duality_images`) are what transports the 1 < p <= 2 case to
    this one.
    """
    q = float(q)
    if not q >= 2.0:
        raise ValueError(f"the duality route targets q >= 2, got {q}")
    p = dual_exponent(q)
    norms_q = sum(snorm(M, q, tol) ** q for M in Phi)
    lhs = Phi.n * norms_q ** (p / q)
    rhs = snorm(Phi.total(), q, tol) ** p + sum(snorm(D, q, tol) ** p for _, D in Phi.differences())
    return make_report("ak_dual", lhs, rhs, p=q, n=Phi.n, d=Phi.d, tol=tol)


def ak_from_witness(T: OperatorTuple, p, tol: Tolerances = DEFAULT_TOL) -> InequalityReport:
    """Replay of the witness route to the n-coefficient inequality.

    Builds the canonical witnesses, forms
    S = ||B||_p^q + sum ||B_{i,j}||_p^q, and applies the cancellation
    S <= n^(1/q) T_p^(1/p) S^(1/p) implies S <= n T_p^(q/p) (trivial when
    S = 0). The resulting report must agree with :func:`ak`.
    """
    p = _check_strip_p(p)
    q = dual_exponent(p)
    S = snorm(T.total(), p, tol) ** q + sum(snorm(D, p, tol) ** q for _, D in T.differences())
    Tp = sum(snorm(A, p, tol) ** p for A in T)
    rhs = T.n * Tp ** (q / p)
    return make_report("ak_witness", S, rhs, p=p, n=T.n, d=T.d, tol=tol)
