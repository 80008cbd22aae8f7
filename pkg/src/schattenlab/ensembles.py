"""Seeded random matrix tuples for verification campaigns.

Generation is deterministic and order-independent: matrix ``i`` of a tuple
is drawn from its own PCG64 stream, obtained as
``default_rng(SeedSequence(spec.seed, spawn_key=(i,)))``. Campaign code
derives ``spec.seed`` itself from (master seed, cell indices, trial index),
so any cell of any run can be regenerated in isolation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .inequalities import OperatorTuple

__all__ = ["KINDS", "EnsembleSpec", "generate", "default_rank", "haar_unitary"]

KINDS = (
    "ginibre",
    "hermitian",
    "psd",
    "low_rank",
    "diagonal_real",
    "equal_tuple",
    "near_equal",
    "nilpotent",
)


@dataclass(frozen=True)
class EnsembleSpec:
    """What to draw: ``n`` matrices of size ``d`` from one of :data:`KINDS`.

    ``rank`` applies to ``low_rank`` only (default ``max(1, d // 2)``);
    ``eps`` is the perturbation scale of ``near_equal`` (default 1e-2).
    """

    kind: str
    n: int
    d: int
    seed: int
    rank: int | None = None
    eps: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown ensemble kind {self.kind!r}; choose from {KINDS}")
        if self.n < 1 or self.d < 1:
            raise ValueError(f"need n >= 1 and d >= 1, got n={self.n} d={self.d}")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")
        if self.rank is not None:
            if self.kind != "low_rank":
                raise ValueError("rank applies to the low_rank kind only")
            if not 1 <= self.rank <= self.d:
                raise ValueError(f"rank must be in [1, {self.d}], got {self.rank}")
        if self.eps is not None:
            if self.kind != "near_equal":
                raise ValueError("eps applies to the near_equal kind only")
            if not self.eps > 0:
                raise ValueError(f"eps must be positive, got {self.eps}")


def default_rank(d: int) -> int:
    return max(1, d // 2)


def _stream(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _ginibre(d: int, rng: np.random.Generator) -> np.ndarray:
    # entries are standard complex Gaussians, CN(0, 1)
    return (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)


def generate(spec: EnsembleSpec) -> OperatorTuple:
    """Draw the tuple described by ``spec``; same spec, same bits."""
    kind, n, d = spec.kind, spec.n, spec.d

    if kind == "equal_tuple":
        base = _ginibre(d, _stream(spec.seed, 0))
        return OperatorTuple(tuple(base.copy() for _ in range(n)))

    if kind == "near_equal":
        eps = spec.eps if spec.eps is not None else 1e-2
        base = _ginibre(d, _stream(spec.seed, 0))
        mats = []
        for i in range(n):
            rng = _stream(spec.seed, i)
            if i == 0:
                _ = _ginibre(d, rng)  # skip the base draw already consumed
            mats.append(base + eps * _ginibre(d, rng))
        return OperatorTuple(tuple(mats))

    mats = []
    for i in range(n):
        rng = _stream(spec.seed, i)
        if kind == "ginibre":
            M = _ginibre(d, rng)
        elif kind == "hermitian":
            G = _ginibre(d, rng)
            M = 0.5 * (G + G.conj().T)
        elif kind == "psd":
            G = _ginibre(d, rng)
            M = G.conj().T @ G
        elif kind == "low_rank":
            r = spec.rank if spec.rank is not None else default_rank(d)
            F = (rng.standard_normal((d, r)) + 1j * rng.standard_normal((d, r))) / np.sqrt(2.0)
            G = (rng.standard_normal((r, d)) + 1j * rng.standard_normal((r, d))) / np.sqrt(2.0)
            M = F @ G
        elif kind == "diagonal_real":
            M = np.diag(rng.standard_normal(d)).astype(np.complex128)
        elif kind == "nilpotent":
            M = np.triu(_ginibre(d, rng), 1)
        else:  # pragma: no cover - guarded by EnsembleSpec validation
            raise ValueError(f"unknown kind {kind!r}")
        mats.append(M)
    return OperatorTuple(tuple(mats))


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """A Haar-distributed unitary (QR of a Ginibre matrix, phases fixed)."""
    Z = _ginibre(d, rng)
    Q, R = np.linalg.qr(Z)
    diag = np.diag(R).copy()
    diag[diag == 0] = 1.0  # almost surely never hit; keeps the column unitary
    return Q * (diag / np.abs(diag))
