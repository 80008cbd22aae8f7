"""Round-trip file formats and report record semantics."""

import csv
import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from schattenlab.matio import (
    SCAN_COLUMNS,
    decode_matrix,
    dump_tuple,
    encode_matrix,
    load_tuple,
    save_json,
    write_scan_csv,
)
from schattenlab.inequalities import OperatorTuple
from schattenlab.proofs import InterpolationSample
from schattenlab.reports import make_equality_report, make_report


def test_matrix_round_trip_exact(rng):
    M = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    assert np.array_equal(decode_matrix(encode_matrix(M)), M)


def test_decode_validates_shape():
    with pytest.raises(ValueError):
        decode_matrix([[1.0, 2.0]])
    with pytest.raises(ValueError):
        decode_matrix("nope")


def test_tuple_file_round_trip(tmp_path, rng):
    mats = tuple(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(3))
    path = tmp_path / "t.json"
    dump_tuple(path, OperatorTuple(mats))
    back = load_tuple(path)
    for a, b in zip(mats, back.mats):
        assert np.array_equal(a, b)  # doubles survive the JSON round trip bit-exactly


def test_load_tuple_accepts_bare_list(tmp_path):
    path = tmp_path / "bare.json"
    path.write_text(json.dumps([encode_matrix(np.eye(2))]))
    T = load_tuple(path)
    assert T.n == 1
    assert_allclose(T.mats[0], np.eye(2))


def test_load_tuple_rejects_bad_documents(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"rows": []}))
    with pytest.raises(ValueError):
        load_tuple(path)
    path.write_text(json.dumps([]))
    with pytest.raises(ValueError):
        load_tuple(path)


def test_save_json_creates_parents(tmp_path):
    target = tmp_path / "a" / "b" / "doc.json"
    save_json(target, {"k": 1})
    text = target.read_text()
    assert text.endswith("\n") and json.loads(text) == {"k": 1}


def test_write_scan_csv(tmp_path):
    samples = [
        InterpolationSample(z=0.5 + 1.0j, f_value=0.25 - 0.5j, bound_at_x=2.0),
        InterpolationSample(z=1.0 + 0.0j, f_value=1.0 + 0.0j, bound_at_x=3.0),
    ]
    path = tmp_path / "scan.csv"
    write_scan_csv(path, samples)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == list(SCAN_COLUMNS)
    assert float(rows[1][0]) == 0.5 and float(rows[1][1]) == 1.0
    assert float(rows[1][4]) == pytest.approx(abs(0.25 - 0.5j))
    assert float(rows[2][5]) == 3.0


def test_make_report_margin_and_threshold():
    rep = make_report("demo", 1.0, 2.0, p=1.5, n=2, d=3)
    assert rep.margin == pytest.approx(0.5)
    assert rep.satisfied and rep.p == 1.5 and (rep.n, rep.d) == (2, 3)
    # margins normalize by max(1, rhs) so tiny instances stay comparable
    rep = make_report("demo", 2.0, 1.0, p=1.5, n=2, d=3)
    assert rep.margin == pytest.approx(-1.0) and not rep.satisfied
    assert make_report("demo", 1.0 + 5e-10, 1.0, p=2, n=2, d=2).satisfied
    assert not make_report("demo", 1.0 + 5e-9, 1.0, p=2, n=2, d=2).satisfied


def test_make_report_rejects_non_finite():
    with pytest.raises(ValueError):
        make_report("demo", np.inf, 1.0, p=2, n=2, d=2)


def test_make_equality_report():
    rep = make_equality_report("eq", 1.0, 1.0 + 1e-12, p=2, n=2, d=2)
    assert rep.satisfied and rep.margin == pytest.approx(-1e-12)
    rep = make_equality_report("eq", 1.0, 2.0, p=2, n=2, d=2)
    assert not rep.satisfied and rep.margin == -1.0
    rep = make_equality_report("eq", 1.0, 1.5, p=2, n=2, d=2, accept=1.0)
    assert rep.satisfied


def test_report_as_dict_round_trips():
    rep = make_report("demo", 1.0, 2.0, p=1.5, n=2, d=3)
    doc = rep.as_dict()
    assert doc["tag"] == "demo" and doc["satisfied"] is True
    json.dumps(doc)  # must be JSON-serializable as-is
