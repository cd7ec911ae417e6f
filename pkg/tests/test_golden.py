import math

import numpy as np
import pytest

from steerbound import golden
from steerbound.lhsbound import lhs_bound, lhs_bound_eig


def test_table_sizes():
    assert [e.n for e in golden.TABLE1] == [2, 3, 4, 6, 10]
    assert [e.n for e in golden.TABLE2] == list(range(2, 11))
    assert [e.n for e in golden.SM_TABLE] == [12, 14, 16, 18, 20]
    for e in golden.ALL:
        assert len(e.directions) == e.n


@pytest.mark.parametrize("entry", golden.ALL, ids=lambda e: e.key)
def test_every_entry_reproduces(entry):
    mset, delta = golden.load(entry.key)
    assert delta < 1e-3
    assert np.allclose(np.linalg.norm(mset.directions, axis=1), 1, atol=1e-15)
    assert abs(lhs_bound(mset).value - entry.reference) <= entry.tolerance


def test_closed_form_entries_are_exact():
    for e in golden.ALL:
        if e.closed_form is not None and e.digits is None:
            assert lhs_bound(golden.load(e.key)[0]).value == pytest.approx(e.closed_form, abs=1e-12)


def test_n5_supplement_closed_form_wins():
    value = lhs_bound(golden.load("table2-n5")[0]).value
    sm = math.sqrt((9 + math.sqrt(33)) / 50)
    main = math.sqrt(2 * (9 + math.sqrt(33))) / 20
    assert abs(value - sm) < 1e-4
    assert abs(value - main) > 0.2
    assert lhs_bound(golden.load("sm-n5-exact")[0]).value == pytest.approx(sm, abs=1e-14)


def test_n7_enumeration_matches_main_table():
    value = lhs_bound(golden.load("table2-n7")[0]).value
    assert abs(value - 0.5268) < 5e-4
    assert abs(value - 0.562784) > 0.03
    # the printed C_7 expression, evaluated at the printed angles
    assert golden.sm_n7_formula() == pytest.approx(0.526784, abs=1e-6)


def test_n7_relations_at_quoted_angles():
    r1, r2, r3 = golden.sm_n7_residuals()
    assert abs(r1) < 1e-6 and abs(r2) < 1e-6
    # the third relation is not satisfied as printed (recorded, not asserted away)
    assert abs(r3) > 1


def test_n8_relations_and_formula():
    assert max(abs(r) for r in golden.sm_n8_residuals()) < 1e-6
    angle_set = golden.sm_n8_angle_set()
    assert lhs_bound(angle_set).value == pytest.approx(golden.sm_n8_formula(), abs=1e-12)
    assert lhs_bound_eig(angle_set) == pytest.approx(golden.sm_n8_formula(), abs=1e-12)
    assert golden.sm_n8_formula() == pytest.approx(0.521867, abs=1e-6)


@pytest.mark.parametrize("entry", golden.TABLE2 + golden.SM_TABLE, ids=lambda e: e.key)
def test_optimal_sets_are_canonical(entry):
    """All-ones is maximizing up to the printed precision; mean points along +z."""
    mset, _ = golden.load(entry.key)
    res = lhs_bound(mset)
    mean = mset.directions.sum(axis=0) / mset.n
    assert res.value - np.linalg.norm(mean) <= 1e-3
    assert np.allclose(mean, [0, 0, res.value], atol=1e-3)


def test_exact_optimal_sets_have_all_ones_maximizer():
    for key in ("table2-n2", "table2-n3", "table2-n4", "table2-n6", "sm-n5-exact"):
        assert lhs_bound(golden.load(key)[0]).signs == (1,) * golden.BY_KEY[key].n


def test_optimal_records():
    assert golden.OPTIMAL_RECORDS[6] == pytest.approx(math.sqrt(10) / 6)
    assert golden.OPTIMAL_RECORDS[5] == pytest.approx(0.5430389, abs=1e-7)
    assert set(golden.OPTIMAL_RECORDS) == set(range(2, 11)) | {12, 14, 16, 18, 20}


def test_load_returns_fresh_labelled_sets():
    m, _ = golden.load("table1-n3")
    assert m.label == "table1, N=3"
    assert golden.raw_directions("table1-n3").shape == (3, 3)
