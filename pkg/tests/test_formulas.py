import pytest
from hypothesis import given
from hypothesis import strategies as st

from sandpilion.errors import InvalidParameters
from sandpilion.formulas import (
    BSequence,
    CaseTag,
    a_value,
    b,
    b_gf_coefficients,
    coconut_plus_tau,
    coconut_tau,
    fib,
    gf_coefficients,
    gf_coefficients_as_stated,
    predict_group,
    t_closed,
)
from sandpilion.graphs import FamilyParams


def test_fib_values():
    assert fib(6) == 8
    assert fib(0) == 0
    assert fib(-2) == -1
    assert [fib(n) for n in range(-5, 6)] == [5, -3, 2, -1, 1, 0, 1, 1, 2, 3, 5]


@given(st.integers(-60, 60))
def test_fib_recurrence_everywhere(n):
    assert fib(n + 2) == fib(n + 1) + fib(n)


def test_b_values():
    assert b(1, 0) == 5
    assert b(2, -2) == 4
    assert b(2, 1) == 20
    assert [b(0, n) for n in (-2, -1)] == [1, 1]
    with pytest.raises(InvalidParameters):
        b(1, -3)
    with pytest.raises(InvalidParameters):
        BSequence(-1)


def test_b_sequence_memo_grows_on_demand():
    seq = BSequence(3)
    big = seq[200]
    assert seq[199] + seq[198] == big


def test_t_closed_values():
    assert t_closed(FamilyParams(1, 1, 1)) == 8
    assert t_closed(FamilyParams(2, 1, 1)) == 21
    assert t_closed(FamilyParams(1, 2, 1)) == 20
    assert t_closed(FamilyParams(1, 1, 2)) == 20
    with pytest.raises(InvalidParameters):
        t_closed(FamilyParams(0, 1, 1))


def test_a_values():
    assert a_value(FamilyParams(4, 1, 1)) == 144
    assert a_value(FamilyParams(2, 2, 2)) == 32
    assert a_value(FamilyParams(2, 1, 2)) == 26


@given(st.integers(1, 30), st.integers(1, 8), st.integers(1, 8))
def test_t_symmetric(p, s1, s2):
    assert t_closed(FamilyParams(p, s1, s2)) == t_closed(FamilyParams(p, s2, s1))


@given(st.integers(1, 30), st.integers(1, 8), st.integers(1, 8))
def test_a_value_is_exact(p, s1, s2):
    params = FamilyParams(p, s1, s2)
    assert a_value(params) << (s1 + s2 - 2) == t_closed(params)


def test_gf_values():
    assert gf_coefficients(1, 1, 4) == [8, 21, 55, 144]
    assert gf_coefficients(1, 1, 4) == [fib(2 * p + 4) for p in range(1, 5)]
    assert gf_coefficients(2, 1, 1) == [20]
    assert gf_coefficients(1, 2, 3) == gf_coefficients(2, 1, 3)


def test_gf_stated_prefactor_is_double():
    assert gf_coefficients_as_stated(1, 1, 1) == [16]
    assert t_closed(FamilyParams(1, 1, 1)) == 8


def test_gf_bad_input():
    with pytest.raises(InvalidParameters):
        gf_coefficients(0, 1, 3)
    with pytest.raises(InvalidParameters):
        gf_coefficients(1, 1, 0)


def test_b_gf_values():
    assert b_gf_coefficients(1, 3) == [2, 3, 5]
    assert b_gf_coefficients(0, 2) == [1, 1]
    assert b_gf_coefficients(3, 4) == [8, 20, 28, 48]


@given(st.integers(0, 8), st.integers(1, 30))
def test_b_gf_matches_sequence(s1, terms):
    assert b_gf_coefficients(s1, terms) == [b(s1, n) for n in range(-2, terms - 2)]


def test_coconut_values():
    assert coconut_tau(1, 1) == 3
    assert coconut_tau(2, 1) == 8
    assert coconut_plus_tau(2, 1) == 13
    with pytest.raises(InvalidParameters):
        coconut_tau(0, 1)


def test_predict_group_cases():
    g = predict_group(FamilyParams(4, 1, 1))
    assert g.case_tag is CaseTag.P_MOD3_IS_1
    assert g.to_group().factors == (144,)
    g = predict_group(FamilyParams(2, 2, 2))
    assert g.case_tag is CaseTag.EVEN_S_EVEN_S
    assert g.to_group().factors == (4, 32)
    g = predict_group(FamilyParams(2, 1, 2))
    assert g.case_tag is CaseTag.ODD_S
    assert (g.two_rank, g.cyclic_part) == (0, 52)
    g = predict_group(FamilyParams(2, 1, 1))
    assert g.case_tag is CaseTag.MERGED_BOUNDARY
    assert g.to_group().factors == (21,)


@given(st.integers(1, 20), st.integers(1, 6), st.integers(1, 6))
def test_prediction_order_is_t(p, s1, s2):
    params = FamilyParams(p, s1, s2)
    pred = predict_group(params)
    assert pred.order == t_closed(params)
    assert pred.to_group().order == pred.order
