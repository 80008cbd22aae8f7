"""File formats: matrix tuples as JSON, reports as JSON, scans as CSV.

Complex entries are encoded as two-element [re, im] arrays; a matrix is a
list of rows, a tuple a list of matrices. Floats pass through the json and
csv modules' shortest-round-trip encoding, so writing and re-reading a
double is bit-exact.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .inequalities import OperatorTuple

__all__ = [
    "encode_matrix",
    "decode_matrix",
    "load_tuple",
    "dump_tuple",
    "save_json",
    "write_scan_csv",
]

SCAN_COLUMNS = ("x", "y", "re_f", "im_f", "abs_f", "bound")


def encode_matrix(M) -> list[list[list[float]]]:
    A = np.asarray(M, dtype=np.complex128)
    return [[[float(v.real), float(v.imag)] for v in row] for row in A]


def decode_matrix(obj, name: str = "matrix") -> np.ndarray:
    try:
        A = np.asarray(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{name}: expected nested [re, im] pairs") from exc
    if A.ndim != 3 or A.shape[2] != 2:
        raise ValueError(f"{name}: expected shape (rows, cols, 2), got {A.shape}")
    return A[..., 0] + 1j * A[..., 1]


def load_tuple(path) -> OperatorTuple:
    """Read a tuple file: {"matrices": [...]} or a bare list of matrices."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if isinstance(doc, dict):
        if "matrices" not in doc:
            raise ValueError(f"{path}: missing 'matrices' key")
        doc = doc["matrices"]
    if not isinstance(doc, list) or not doc:
        raise ValueError(f"{path}: expected a non-empty list of matrices")
    mats = [decode_matrix(m, name=f"matrices[{i}]") for i, m in enumerate(doc)]
    return OperatorTuple(tuple(mats))


def dump_tuple(path, T: OperatorTuple) -> None:
    save_json(path, {"matrices": [encode_matrix(A) for A in T]})


def save_json(path, obj) -> None:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with open(p, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def write_scan_csv(path, samples) -> None:
    """Rows of (x, y, re_f, im_f, abs_f, bound) from InterpolationSamples."""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with open(p, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SCAN_COLUMNS)
        for s in samples:
            z = complex(s.z)
            f = complex(s.f_value)
            writer.writerow([z.real, z.imag, f.real, f.imag, abs(f), s.bound_at_x])
