import warnings
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from boolcondense.core import BoolFun, BudgetExceeded, Restriction, random_function, restrict
from boolcondense.condense import (
    SoftRelationWarning,
    ceil_sqrt,
    choose_branch,
    condense_by_blocks,
    condense_by_degree,
    condense_by_sensitivity,
    condense_positive,
    laws_check,
    restriction_monotone,
    search_restrictions,
)
from boolcondense.measures import measure
from boolcondense.zoo import AND, OR, XOR, mod_rubinstein
from conftest import boolfuns, fun_and_restriction


def test_ceil_sqrt():
    assert [ceil_sqrt(v) for v in (0, 1, 2, 4, 5, 9, 10)] == [0, 1, 2, 2, 3, 3, 4]
    assert ceil_sqrt(Fraction(9, 4)) == 2 and ceil_sqrt(Fraction(17, 4)) == 3
    assert ceil_sqrt(2.25) == 2


def test_sensitivity_construction():
    res = condense_by_sensitivity(OR(4), 2)
    assert str(res.rho) == "**00" and res.restricted == 2
    res = condense_by_sensitivity(XOR(3), 2)
    assert res.stars == 2 and res.restricted == 2
    with pytest.raises(ValueError):
        condense_by_sensitivity(OR(4), 5)


def test_degree_construction_via_higher_monomial():
    # x1 - x1*x2*x3 has no degree-2 monomial; keep x1,x2 free and set x3 = 1
    f = BoolFun.from_callable(3, lambda x: x[0] * (1 - x[1] * x[2]))
    res = condense_by_degree(f, 2)
    assert str(res.rho) == "**1" and res.restricted == 2
    res = condense_by_degree(AND(3), 3)
    assert str(res.rho) == "***" and res.restricted == 3


def test_blocks_construction():
    res = condense_by_blocks(OR(3), 3)
    assert str(res.rho) == "***" and res.restricted == 3
    res = condense_by_blocks(mod_rubinstein(4), 3)
    assert res.restricted >= 3 and res.stars == 6


def test_condense_positive_examples():
    res = condense_positive(OR(8), "C")
    assert res.construction == "sensitivity" and res.restricted >= res.guaranteed == 3
    res = condense_positive(mod_rubinstein(4), "C")
    assert res.construction == "sensitivity" and res.restricted == 8
    res = condense_positive(BoolFun.constant(3, 1), "bs")
    assert res.construction == "constant" and str(res.rho) == "000" and res.restricted == 0
    with pytest.raises(ValueError):
        condense_positive(OR(3), "s")
    with pytest.raises(KeyError):
        condense_positive(OR(3), "nonsense")


def test_choose_branch_covers_every_case():
    assert choose_branch("C", 9, 3, 1) == "sensitivity"
    assert choose_branch("D", 16, 2, 4) == "degree"
    assert choose_branch("bs", 16, 2, 4) == "blocks"
    assert choose_branch("UCmin", 25, 2, 4) == "blocks"
    assert choose_branch("adeg", Fraction(5), 2, 3) == "degree"


@given(boolfuns(1, 5), st.sampled_from(["bs", "fbs", "C", "D", "adeg", "lambda"]))
def test_condense_positive_guarantee(f, name):
    res = condense_positive(f, name)
    assert res.restricted == measure(name, restrict(f, res.rho))
    if res.guaranteed is not None:
        assert res.restricted >= res.guaranteed


@given(boolfuns(1, 3), st.sampled_from(["UCmin", "UC1", "UC"]))
def test_condense_positive_uc(f, name):
    res = condense_positive(f, name)
    assert res.restricted >= res.guaranteed


def test_search_examples():
    res = search_restrictions(XOR(4), "deg", 2)
    assert res.best == 2 and str(res.rho) == "**00"
    assert res.examined == 6 * 4
    res = search_restrictions(OR(3), "s", 0)
    assert res.best == 0 and res.examined == 8
    with pytest.raises(BudgetExceeded):
        search_restrictions(OR(10), "s", 5, budget=10)
    with pytest.raises(ValueError):
        search_restrictions(OR(3), "s", 4)
    with pytest.raises(ValueError):
        search_restrictions(OR(3), "s", 1, mode="greedy")


@given(boolfuns(2, 5), st.integers(0, 5), st.integers(0, 1000))
def test_sampled_never_beats_exhaustive(f, stars, seed):
    stars = min(stars, f.n)
    ex = search_restrictions(f, "bs", stars)
    sm = search_restrictions(f, "bs", stars, mode="sampled", samples=20, seed=seed)
    assert sm.best <= ex.best
    assert measure("bs", restrict(f, ex.rho)) == ex.best


def test_search_independent_of_threads():
    f = random_function(7, 3)
    a = search_restrictions(f, "C", 4, threads=1)
    b = search_restrictions(f, "C", 4, threads=2)
    assert (a.best, str(a.rho)) == (b.best, str(b.rho))


def test_laws_examples():
    assert laws_check(AND(3)) == []
    assert laws_check(XOR(3)) == []
    assert laws_check(BoolFun.constant(2, 0)) == []


@given(boolfuns(0, 3))
def test_laws_hold(f):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SoftRelationWarning)
        assert laws_check(f) == []


@given(fun_and_restriction(1, 5))
def test_restriction_monotone(pair):
    f, rho = pair
    assert restriction_monotone(f, rho) == []


def test_restriction_monotone_example():
    assert restriction_monotone(AND(3), Restriction.parse("1*0")) == []
