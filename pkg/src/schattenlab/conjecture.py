"""Search for unitary certificates of the conjectured n-tuple matrix
inequality, plus its known two-matrix case.

For a tuple (A_1, ..., A_n) and p > 2 the conjectured statement: there exist
unitaries U and U_{i,j} (one per pair, n(n-1)/2 + 1 in total) with

    U|sum A_i|^p U* + sum_{i<j} U_{i,j}|A_i - A_j|^p U_{i,j}*
        <= n^(p-1) sum_i |A_i|^p        (Loewner order),

reversed for 0 < p <= 2. The two-matrix case is a theorem, so a search
failure there is a budget artifact, never a refutation; for general n this
module only ever reports "feasible" (with a re-verified certificate) or
"unresolved". Cheap necessary conditions are checked first: the trace form
of the inequality (itself a theorem, so a violation means a bug) and Weyl
eigenvalue comparisons that any certificate must respect.

The search is local descent over the unitary group: each step conjugates by
exp(-eta G) with G skew-Hermitian, G computed from the dominant eigenvector
of the current residual matrix, with step halving and seeded Haar restarts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .inequalities import OperatorTuple
from .matcore import DEFAULT_TOL, LoewnerResult, Tolerances, as_matrix, loewner_leq, polar, psd_power
from .reports import InequalityReport, make_report

__all__ = [
    "ConjectureInstance",
    "FeasibilityCertificate",
    "NecessaryReport",
    "modulus_power",
    "conjecture_sides",
    "necessary_conditions",
    "unitary_search",
    "bl_two_check",
    "verify_certificate",
]

FEASIBLE = "feasible"
UNRESOLVED = "unresolved"
NECESSARY_VIOLATED = "necessary_condition_violated"

DEFAULT_BUDGET = 2000
DEFAULT_RESTARTS = 8

_UNITARITY_TOL = 1e-9


def modulus_power(X, p, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """|X|^p with |X| = (X*X)^(1/2), for any square X and p > 0."""
    if not float(p) > 0.0:
        raise ValueError(f"modulus power wants p > 0, got {p}")
    return psd_power(polar(as_matrix(X), side="left").modulus, float(p), tol)


def _direction_for(p: float) -> str:
    return "upper" if p > 2.0 else "reversed"


@dataclass(frozen=True)
class ConjectureInstance:
    """One tuple and exponent, with the direction the statement takes.

    ``direction`` is derived from p ("upper" for p > 2, "reversed" for
    0 < p <= 2); passing it explicitly just asserts consistency.
    """

    tuple: OperatorTuple
    p: float
    direction: str = ""

    def __post_init__(self):
        p = float(self.p)
        if not p > 0.0 or not math.isfinite(p):
            raise ValueError(f"conjecture exponent must be a finite p > 0, got {self.p}")
        object.__setattr__(self, "p", p)
        derived = _direction_for(p)
        if self.direction and self.direction != derived:
            raise ValueError(
                f"direction {self.direction!r} inconsistent with p={p} (expected {derived!r})"
            )
        object.__setattr__(self, "direction", derived)

    @property
    def sign(self) -> float:
        """+1 when the search drives LHS below RHS, -1 for the reversed order."""
        return 1.0 if self.direction == "upper" else -1.0

    @property
    def n_unitaries(self) -> int:
        n = self.tuple.n
        return 1 + (n * (n - 1)) // 2

    def terms(self, tol: Tolerances = DEFAULT_TOL) -> list[np.ndarray]:
        """[|sum A_i|^p, |A_1 - A_2|^p, ...] in the fixed pair order."""
        out = [modulus_power(self.tuple.total(), self.p, tol)]
        out.extend(modulus_power(D, self.p, tol) for _, D in self.tuple.differences())
        return out

    def rhs(self, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
        n, p = self.tuple.n, self.p
        total = sum(modulus_power(A, p, tol) for A in self.tuple)
        return n ** (p - 1.0) * total


@dataclass(frozen=True)
class FeasibilityCertificate:
    """Outcome of a certificate search.

    ``residual`` is lambda_max(LHS - RHS) in the upper direction and
    lambda_max(RHS - LHS) in the reversed one, recomputed from the stored
    unitaries independently of the search path; ``feasible`` requires it to
    clear the feasibility tolerance. ``iterations`` counts every descent
    step over all restarts; ``restart`` identifies the winning start.
    """

    status: str
    residual: float
    unitaries: tuple[np.ndarray, ...]
    iterations: int
    seed: int
    restart: int = -1
    p: float = float("nan")
    direction: str = ""

    def __post_init__(self):
        if self.status not in (FEASIBLE, UNRESOLVED, NECESSARY_VIOLATED):
            raise ValueError(f"unknown certificate status {self.status!r}")
        for t, U in enumerate(self.unitaries):
            U = as_matrix(U, f"unitaries[{t}]")
            gram_defect = np.abs(U.conj().T @ U - np.eye(U.shape[0])).max()
            if gram_defect > _UNITARITY_TOL:
                raise ValueError(f"unitaries[{t}] is not unitary (defect {gram_defect:.2e})")

    def as_dict(self, include_unitaries: bool = True) -> dict:
        from .matio import encode_matrix

        doc = {
            "status": self.status,
            "residual": self.residual,
            "iterations": self.iterations,
            "seed": self.seed,
            "restart": self.restart,
            "p": self.p,
            "direction": self.direction,
        }
        if include_unitaries:
            doc["unitaries"] = [encode_matrix(U) for U in self.unitaries]
        return doc


@dataclass(frozen=True)
class NecessaryReport:
    """Pre-search screens: the trace inequality and Weyl comparisons.

    ``trace`` restates the tuple inequality via tr|X|^p sums; it is a
    theorem in both directions, so trace.satisfied = False indicates a bug
    (or a genuine refutation, worth treating as one until proven a bug).
    ``weyl_ok`` covers the spectral comparisons any certificate must obey.
    """

    direction: str
    trace: InequalityReport
    weyl_ok: bool
    weyl_worst_gap: float

    @property
    def ok(self) -> bool:
        return self.trace.satisfied and self.weyl_ok


def conjecture_sides(inst: ConjectureInstance, unitaries,
                     tol: Tolerances = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """(LHS, RHS) for the given unitaries; both Hermitian PSD.

    ``unitaries[0]`` conjugates |sum A_i|^p; the rest follow the pair order
    of :meth:`OperatorTuple.differences`.
    """
    terms = inst.terms(tol)
    if len(unitaries) != len(terms):
        raise ValueError(f"expected {len(terms)} unitaries, got {len(unitaries)}")
    d = inst.tuple.d
    lhs = np.zeros((d, d), dtype=np.complex128)
    for t, (U, X) in enumerate(zip(unitaries, terms)):
        U = as_matrix(U, f"unitaries[{t}]")
        if U.shape != (d, d):
            raise ValueError(f"unitaries[{t}] has shape {U.shape}, expected {(d, d)}")
        lhs += U @ X @ U.conj().T
    lhs = 0.5 * (lhs + lhs.conj().T)
    return lhs, inst.rhs(tol)


def necessary_conditions(inst: ConjectureInstance, tol: Tolerances = DEFAULT_TOL) -> NecessaryReport:
    """Certificate-independent screens for one instance.

    (a) the trace inequality: in the upper direction,
        tr|sum A|^p + sum tr|A_i - A_j|^p <= n^(p-1) sum tr|A_i|^p,
        reversed for 0 < p <= 2 (equivalent to :func:`hk_ntuple`).
    (b) Weyl comparisons: upper direction, every k and every single term X of
        the left side must satisfy lambda_k(X) <= lambda_k(RHS); reversed,
        lambda_k(RHS) <= lambda_k(|sum A|^p) + sum_{i<j} lambda_max(|A_i - A_j|^p).
    """
    terms = inst.terms(tol)
    rhs = inst.rhs(tol)
    lhs_tr = float(sum(np.trace(X).real for X in terms))
    rhs_tr = float(np.trace(rhs).real)
    if inst.direction == "upper":
        trace = make_report("necessary_trace", lhs_tr, rhs_tr,
                            p=inst.p, n=inst.tuple.n, d=inst.tuple.d, tol=tol)
    else:
        trace = make_report("necessary_trace", rhs_tr, lhs_tr,
                            p=inst.p, n=inst.tuple.n, d=inst.tuple.d, tol=tol)

    rhs_eigs = np.linalg.eigvalsh(rhs)
    worst = -math.inf
    if inst.direction == "upper":
        for X in terms:
            gaps = np.linalg.eigvalsh(X) - rhs_eigs
            worst = max(worst, float(gaps.max()))
    else:
        cap = np.linalg.eigvalsh(terms[0])
        cap = cap + sum(float(np.linalg.eigvalsh(X).max()) for X in terms[1:])
        worst = float((rhs_eigs - cap).max())
    return NecessaryReport(direction=inst.direction, trace=trace,
                           weyl_ok=worst <= tol.feas, weyl_worst_gap=worst)


def _expm_skew(K: np.ndarray) -> np.ndarray:
    """exp(K) for skew-Hermitian K, via the Hermitian eigenproblem of iK."""
    w, V = np.linalg.eigh(1j * K)
    return (V * np.exp(-1j * w)) @ V.conj().T


def _haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    Z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2.0)
    Q, R = np.linalg.qr(Z)
    diag = np.diag(R).copy()
    diag[diag == 0] = 1.0
    return Q * (diag / np.abs(diag))


def _objective(terms, rhs_eigs, sign, unitaries):
    """Evaluate one configuration of unitaries.

    A free global rotation can always align the summed left side with the
    right side's eigenbasis, so what decides feasibility is the sorted
    spectrum of S = sum U_t X_t U_t* against the sorted spectrum of RHS:
    the certificate residual is g = max_k sign*(lambda_k(S) - lambda_k(RHS))
    (descending order), and the descent works on the once-differentiable
    surrogate F = sum_k max(sign*(lambda_k(S) - lambda_k(RHS)), 0)^2, which
    stays informative where the max-gap objective has kinks.

    Returns (g, F, eigenvalue gaps, eigenvectors of S, conjugated terms);
    gaps and eigenvectors are in descending eigenvalue order.
    """
    conj = [U @ X @ U.conj().T for U, X in zip(unitaries, terms)]
    S = sum(conj)
    S = 0.5 * (S + S.conj().T)
    w, V = np.linalg.eigh(S)
    gaps = sign * (w[::-1] - rhs_eigs)
    g = float(gaps.max())
    pos = np.clip(gaps, 0.0, None)
    F = float(np.sum(pos ** 2))
    return g, F, gaps, V[:, ::-1], conj


def _descend(terms, rhs_eigs, sign, unitaries, budget, tol_feas):
    """Descent on the squared positive spectral gaps (see _objective).

    For term M_t = U_t X_t U_t* the surrogate's gradient with respect to a
    skew-Hermitian generator of U_t is
    sum_k 2 max(gap_k, 0) * sign * (M_t P_k - P_k M_t), P_k the eigenprojector
    of the k-th (descending) eigenvalue of the sum. Steps are normalized to
    rotation angle eta, halved on non-improvement, grown on success; stops on
    certification, stationarity, or exhausted budget. Returns the iterate
    with the best certificate residual seen, not the best surrogate value.
    """
    us = [U.copy() for U in unitaries]
    g, F, gaps, V, conj = _objective(terms, rhs_eigs, sign, us)
    best_g, best_us = g, [U.copy() for U in us]
    eta = 0.3
    used = 0
    while used < budget and best_g > tol_feas:
        used += 1
        weights = 2.0 * np.clip(gaps, 0.0, None)
        active = np.nonzero(weights)[0]
        P = sum(weights[k] * np.outer(V[:, k], V[:, k].conj()) for k in active)
        grads = [sign * (M @ P - P @ M) for M in conj]
        gnorm = math.sqrt(sum(float(np.sum(np.abs(G) ** 2)) for G in grads))
        if gnorm < 1e-14:
            break
        trial = [_expm_skew((eta / gnorm) * G) @ U for G, U in zip(grads, us)]
        g_new, F_new, gaps_new, V_new, conj_new = _objective(terms, rhs_eigs, sign, trial)
        if g_new < best_g:
            best_g, best_us = g_new, [U.copy() for U in trial]
        if F_new < F:
            us, F, gaps, V, conj = trial, F_new, gaps_new, V_new, conj_new
            eta = min(eta * 1.5, 1.5)
        else:
            eta *= 0.5
            if eta < 1e-7:
                break
    return best_g, best_us, used


def _aligned_start(terms, rhs_basis, flip_rest: bool) -> list[np.ndarray]:
    """Candidate unitaries that diagonalize every term in the right side's
    eigenbasis.

    With ``flip_rest`` False all terms go in descending order (large with
    large); with True the difference terms go ascending against the first
    term's descending order, the arrangement that keeps the summed spectrum
    flat. Both are commuting configurations; the descent explores the
    interpolations between them.
    """
    out = []
    for t, X in enumerate(terms):
        _, QX = np.linalg.eigh(X)
        QX = QX[:, ::-1]
        if flip_rest and t > 0:
            QX = QX[:, ::-1]
        out.append(rhs_basis @ QX.conj().T)
    return out


def unitary_search(inst: ConjectureInstance, budget: int = DEFAULT_BUDGET,
                   restarts: int = DEFAULT_RESTARTS, seed: int = 0,
                   tol: Tolerances = DEFAULT_TOL) -> FeasibilityCertificate:
    """Look for unitaries certifying the instance's Loewner inequality.

    Starts: identity, eigenbasis alignment, then Haar draws (seeded; restart
    r uses its own child stream, so results are reproducible regardless of
    how many restarts run). The best candidate is re-polished to exact
    unitarity and its residual recomputed from scratch before the verdict.
    """
    if budget <= 0:
        raise ValueError(f"search budget must be positive, got {budget}")
    if restarts < 1:
        raise ValueError(f"need at least one restart, got {restarts}")
    nec = necessary_conditions(inst, tol)
    terms = inst.terms(tol)
    rhs = inst.rhs(tol)
    d = inst.tuple.d
    rhs_w, rhs_v = np.linalg.eigh(rhs)
    rhs_eigs, rhs_basis = rhs_w[::-1], rhs_v[:, ::-1]
    if not nec.ok:
        eye = tuple(np.eye(d, dtype=np.complex128) for _ in terms)
        g0, _, _, _, _ = _objective(terms, rhs_eigs, inst.sign, eye)
        return FeasibilityCertificate(status=NECESSARY_VIOLATED, residual=g0,
                                      unitaries=eye, iterations=0, seed=seed,
                                      restart=-1, p=inst.p, direction=inst.direction)

    best = None
    total_iters = 0
    for r in range(restarts):
        if r == 0:
            start = [np.eye(d, dtype=np.complex128) for _ in terms]
        elif r == 1:
            start = _aligned_start(terms, rhs_basis, flip_rest=False)
        elif r == 2:
            start = _aligned_start(terms, rhs_basis, flip_rest=True)
        else:
            rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(7001, r)))
            start = [_haar_unitary(d, rng) for _ in terms]
        g, us, used = _descend(terms, rhs_eigs, inst.sign, start, budget, tol.feas)
        total_iters += used
        if best is None or g < best[0]:
            best = (g, us, r)
        if best[0] <= tol.feas:
            break

    _, us, r_best = best
    # rotate the sum into the right side's eigenbasis: the sorted-gap value
    # the descent certifies equals lambda_max of the aligned difference
    S = sum(U @ X @ U.conj().T for U, X in zip(us, terms))
    _, SV = np.linalg.eigh(0.5 * (S + S.conj().T))
    W = rhs_basis @ SV[:, ::-1].conj().T
    polished = tuple(polar(W @ U, side="left").unitary for U in us)
    lhs_mat, rhs_mat = conjecture_sides(inst, polished, tol)
    residual = float(np.linalg.eigvalsh(inst.sign * (lhs_mat - rhs_mat))[-1])
    status = FEASIBLE if residual <= tol.feas else UNRESOLVED
    return FeasibilityCertificate(status=status, residual=residual, unitaries=polished,
                                  iterations=total_iters, seed=seed, restart=r_best,
                                  p=inst.p, direction=inst.direction)


def bl_two_check(A, B, p: float, budget: int = DEFAULT_BUDGET, seed: int = 0,
                 restarts: int = DEFAULT_RESTARTS,
                 tol: Tolerances = DEFAULT_TOL) -> FeasibilityCertificate:
    """Two-matrix certificate search: find U, V with
    U|A+B|^p U* + V|A-B|^p V* on the small side of 2^(p-1)(|A|^p + |B|^p).

    Existence is a theorem for every p > 2 (and reversed for 0 < p <= 2), so
    an unresolved outcome here means the budget ran out, nothing more.
    """
    inst = ConjectureInstance(OperatorTuple((as_matrix(A, "A"), as_matrix(B, "B"))), float(p))
    return unitary_search(inst, budget=budget, restarts=restarts, seed=seed, tol=tol)


def verify_certificate(inst: ConjectureInstance, cert: FeasibilityCertificate,
                       tol_feas: float | None = None) -> LoewnerResult:
    """Independent recheck: does the certificate's Loewner inequality hold?"""
    tol_feas = DEFAULT_TOL.feas if tol_feas is None else float(tol_feas)
    lhs, rhs = conjecture_sides(inst, cert.unitaries)
    if inst.direction == "upper":
        return loewner_leq(lhs, rhs, tol_feas)
    return loewner_leq(rhs, lhs, tol_feas)
