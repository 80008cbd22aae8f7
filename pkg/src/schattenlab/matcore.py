"""Dense complex-matrix primitives: SVD, polar decompositions, PSD powers.

Conventions used throughout the package:

* matrices are square numpy arrays, handled as ``complex128``;
* :func:`svd` returns ``(left, spectrum, right)`` with
  ``X = left @ diag(spectrum) @ right.conj().T`` and the spectrum sorted in
  decreasing order;
* polar isometries are completed to full unitaries through the SVD factors,
  so ``X = U @ modulus`` (left) and ``X = modulus @ W`` (right) hold with an
  honest unitary factor even when ``X`` is singular, and ``polar(0)`` returns
  the identity;
* eigenvalues of a PSD matrix below ``zero_rel`` times the largest one are
  treated as exact zeros, and ``0**t == 0`` for every exponent with
  ``Re t >= 0`` (the analytic-continuation convention from ``Re t > 0``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "PolarParts",
    "LoewnerResult",
    "as_matrix",
    "svd",
    "polar",
    "psd_power",
    "herm_eigvals",
    "loewner_leq",
]


@dataclass(frozen=True)
class Tolerances:
    """Central numeric tolerances. Every checker accepts one of these.

    atol/rtol gate structural validation (hermiticity, reconstruction),
    ``margin`` is the inequality acceptance threshold on normalized margins,
    ``feas`` bounds the Loewner residual of a feasibility certificate,
    ``scan`` bounds midpoint defects of sampled log-convexity checks and
    ``zero_rel`` is the relative cutoff under which singular values and
    eigenvalues count as exact zeros.
    """

    atol: float = 1e-10
    rtol: float = 1e-8
    margin: float = 1e-9
    feas: float = 1e-7
    scan: float = 1e-6
    zero_rel: float = 1e-12


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class PolarParts:
    """Factors of a polar decomposition.

    ``side == "left"`` means ``X = unitary @ modulus`` with
    ``modulus = (X* X)^(1/2)``; ``side == "right"`` means
    ``X = modulus @ unitary`` with ``modulus = (X X*)^(1/2)``.
    """

    unitary: np.ndarray
    modulus: np.ndarray
    side: str


class LoewnerResult(NamedTuple):
    ok: bool
    witness: float  # lambda_min(Z - X); nonnegative (up to tol) when X <= Z


def as_matrix(X, name: str = "matrix") -> np.ndarray:
    """Validate and convert ``X`` to a square complex128 array."""
    M = np.asarray(X, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be a square 2-d array, got shape {M.shape}")
    if M.shape[0] == 0:
        raise ValueError(f"{name} must be nonempty")
    if not np.all(np.isfinite(M.view(np.float64))):
        raise ValueError(f"{name} contains non-finite entries")
    return M


def _require_hermitian(M: np.ndarray, tol: Tolerances, name: str) -> np.ndarray:
    defect = np.linalg.norm(M - M.conj().T)
    scale = max(1.0, np.linalg.norm(M))
    if defect > tol.atol + tol.rtol * scale:
        raise ValueError(f"{name} is not Hermitian (defect {defect:.3e})")
    return 0.5 * (M + M.conj().T)


def svd(X) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Full SVD with ``X = left @ diag(spectrum) @ right.conj().T``.

    Returns ``(left, spectrum, right)``. The spectrum is real, nonnegative
    and sorted in decreasing order; left and right are unitary.
    """
    M = as_matrix(X)
    left, s, vh = np.linalg.svd(M)
    return left, s, vh.conj().T


def singular_values(X) -> np.ndarray:
    """Singular values of ``X`` in decreasing order."""
    return np.linalg.svd(as_matrix(X), compute_uv=False)


def polar(X, side: str = "left") -> PolarParts:
    """Polar decomposition with the isometry completed to a full unitary.

    For ``side="left"``, ``X = U @ |X|`` with ``|X| = (X* X)^(1/2)``; for
    ``side="right"``, ``X = |X|' @ W`` with ``|X|' = (X X*)^(1/2)``. Both
    factors come from the SVD ``X = L S R*``: the unitary is ``L @ R*`` in
    either case, the modulus is ``R S R*`` (left) or ``L S L*`` (right).
    The completion makes ``polar(0)`` return the identity unitary.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    L, s, R = svd(X)
    U = L @ R.conj().T
    if side == "left":
        modulus = (R * s) @ R.conj().T
    else:
        modulus = (L * s) @ L.conj().T
    return PolarParts(unitary=U, modulus=modulus, side=side)


def psd_power(P, t, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Power ``P**t`` of a Hermitian PSD matrix, complex exponents allowed.

    Eigenvalues below ``zero_rel`` times the largest one are treated as
    exact zeros and mapped to 0 for any exponent with ``Re t >= 0`` (this is
    the analytic continuation of ``s**t`` from ``Re t > 0`` and keeps
    ``z -> P**(a z + b)`` entire). ``Re t < 0`` with a zero eigenvalue is a
    genuine pole and raises.
    """
    M = _require_hermitian(as_matrix(P, "P"), tol, "P")
    w, Q = np.linalg.eigh(M)
    top = float(w[-1])
    if w[0] < -(tol.atol + tol.rtol * max(top, 0.0)):
        raise ValueError(f"P is not PSD (lambda_min = {w[0]:.3e})")
    w = np.clip(w, 0.0, None)
    cut = tol.zero_rel * top if top > 0.0 else 0.0
    keep = w > cut
    t = complex(t)
    if t.real < 0.0 and not keep.all():
        raise ValueError("negative-real-part power of a singular PSD matrix")
    logw = np.log(np.where(keep, w, 1.0))
    powed = np.where(keep, np.exp(t * logw), 0.0)
    out = (Q * powed) @ Q.conj().T
    if t.imag == 0.0:
        out = 0.5 * (out + out.conj().T)
    return out


def herm_eigvals(H, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, sorted in decreasing order."""
    M = _require_hermitian(as_matrix(H, "H"), tol, "H")
    return np.linalg.eigvalsh(M)[::-1]


def loewner_leq(X, Z, tol: float = DEFAULT_TOL.feas) -> LoewnerResult:
    """Check ``X <= Z`` in the Loewner order, for Hermitian X and Z.

    Returns ``(ok, witness)`` with ``witness = lambda_min(Z - X)``; the
    order holds when the witness is at least ``-tol``.
    """
    A = _require_hermitian(as_matrix(X, "X"), DEFAULT_TOL, "X")
    B = _require_hermitian(as_matrix(Z, "Z"), DEFAULT_TOL, "Z")
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch: {A.shape} vs {B.shape}")
    witness = float(np.linalg.eigvalsh(B - A)[0])
    return LoewnerResult(ok=witness >= -tol, witness=witness)
