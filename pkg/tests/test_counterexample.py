import json
from fractions import Fraction

import pytest

from ratrecon.counterexample import (
    CounterexampleTable,
    f_counter,
    f_counter_literal,
    nonrationality_report,
    slice_poly,
)
from ratrecon.fields import enumerate_countable
from ratrecon.poly import Poly1
from ratrecon.fields import QQ


def test_base_values():
    assert f_counter(0, 0) == 0
    for n in range(10):
        assert f_counter(n, 0) == 0
        assert f_counter(0, n) == 0


def test_symmetry():
    assert f_counter(3, 5) == f_counter(5, 3)
    t = CounterexampleTable.build(20)
    for i in range(20):
        for j in range(20):
            assert t.values[i][j] == t.values[j][i]


def test_literal_sum_equivalence():
    # the full-range sum with upper limit n+m equals the effective-sum form
    for n in range(8):
        for m in range(8):
            assert f_counter(n, m) == f_counter_literal(n, m)


def test_slice_poly_small():
    assert slice_poly(0).is_zero()
    a0, a1 = enumerate_countable(0), enumerate_countable(1)
    expected = Poly1(QQ, [-a0, Fraction(1)]).scale(a1 - a0)  # (x - a0)(a1 - a0)
    assert slice_poly(1) == expected


def test_slice_degrees():
    for m in range(1, 31):
        assert int(slice_poly(m).degree) == m


def test_slice_consistency_with_table():
    for m in range(20):
        p = slice_poly(m)
        for n in range(20):
            assert p.eval(enumerate_countable(n)) == f_counter(n, m)


def test_table_cap_enforced():
    with pytest.raises(ValueError):
        f_counter(5, 2, n_cap=5)
    with pytest.raises(ValueError):
        slice_poly(7, cap=7)


def test_grid_precondition():
    with pytest.raises(ValueError):
        nonrationality_report(5, 11)


def test_refutation_degree0():
    rep = nonrationality_report(0, 4)
    entry = rep.per_degree[0]
    assert entry["rational_refuted"] and entry["polynomial_refuted"]


def test_refutation_full():
    rep = nonrationality_report(5, 16)
    assert rep.table_symmetric
    assert rep.slice_degrees[1:] == list(range(1, 16))
    for entry in rep.per_degree:
        assert entry["polynomial_refuted"], entry
        assert entry["rational_refuted"], entry


def test_report_deterministic():
    a = json.dumps(nonrationality_report(2, 8).to_json(), sort_keys=True)
    b = json.dumps(nonrationality_report(2, 8).to_json(), sort_keys=True)
    assert a == b


def test_csv_export_shape():
    t = CounterexampleTable.build(3)
    lines = t.to_csv().strip().split("\n")
    assert len(lines) == 4
    assert lines[1].startswith("0,")
