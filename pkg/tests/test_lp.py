from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

import oracles
from boolcondense.algebraic import degree
from boolcondense.combinatorial import block_sensitivity_at, certificate_at, minimal_sensitive_blocks
from boolcondense.core import BoolFun, CapExceeded
from boolcondense.lp import (
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    LinearProgram,
    approx_degree,
    approximation_lp,
    best_approximation_error,
    check_feasible,
    fbs_at,
    fractional_block_sensitivity,
    solve_exact,
)
from boolcondense.zoo import AND, OR, XOR, mod_rubinstein
from conftest import boolfuns


def test_solve_examples():
    lp = LinearProgram([1], "max", upper=[1])
    assert solve_exact(lp).optimum == 1
    lp = LinearProgram([1, 1], "max")
    lp.add_row([1, 1], "<=", 1)
    assert solve_exact(lp).optimum == 1
    lp = LinearProgram([1], "max")
    lp.add_row([1], "<=", -1)
    assert solve_exact(lp).status == INFEASIBLE


def test_unbounded_and_min_sense():
    lp = LinearProgram([1, 0], "max")
    lp.add_row([1, -1], "<=", 2)
    assert solve_exact(lp).status == UNBOUNDED
    lp = LinearProgram([1, 2], "min")
    lp.add_row([1, 1], ">=", 3)
    lp.add_row([0, 1], ">=", Fraction(1, 2))
    res = solve_exact(lp)
    assert res.status == OPTIMAL and res.optimum == Fraction(7, 2)
    assert check_feasible(lp, res.assignment)


def test_free_variables_and_equalities():
    lp = LinearProgram([1, 1], "max", lower=[None, None])
    lp.add_row([1, 0], "<=", -2)
    lp.add_row([1, 1], "==", -5)
    res = solve_exact(lp)
    assert res.status == OPTIMAL and res.optimum == -5
    assert check_feasible(lp, res.assignment)


@st.composite
def small_lps(draw):
    nv = draw(st.integers(1, 4))
    nr = draw(st.integers(1, 4))
    coef = st.integers(-3, 3)
    obj = draw(st.lists(coef, min_size=nv, max_size=nv))
    lp = LinearProgram(obj, "max", upper=[Fraction(5)] * nv)
    for _ in range(nr):
        row = draw(st.lists(coef, min_size=nv, max_size=nv))
        lp.add_row(row, "<=", draw(st.integers(-2, 6)))
    return lp


@given(small_lps())
def test_exact_simplex_matches_float_solver(lp):
    res = solve_exact(lp)
    A = [[float(c) for c in row[0]] for row in lp.rows]
    b = [float(row[2]) for row in lp.rows]
    ref = linprog([-float(c) for c in lp.objective], A_ub=A, b_ub=b,
                  bounds=[(0, 5)] * lp.num_vars, method="highs")
    if ref.status == 2:
        assert res.status == INFEASIBLE
    else:
        assert res.status == OPTIMAL
        assert abs(float(res.optimum) + ref.fun) < 1e-9
        assert check_feasible(lp, res.assignment)


@given(small_lps(), st.fractions(min_value=Fraction(1, 7), max_value=7))
def test_row_scaling_invariance(lp, scale):
    scaled = LinearProgram(list(lp.objective), lp.sense, upper=list(lp.upper))
    for coeffs, rel, rhs in lp.rows:
        scaled.add_row([c * scale for c in coeffs], rel, rhs * scale)
    a, b = solve_exact(lp), solve_exact(scaled)
    assert a.status == b.status and a.optimum == b.optimum


def test_fbs_examples():
    assert fbs_at(OR(3), 0) == 3
    assert fractional_block_sensitivity(BoolFun.constant(2, 0))[0] == 0


def test_fbs_mod_rubinstein():
    assert fractional_block_sensitivity(mod_rubinstein(4))[0] == Fraction(8)


def test_fbs_fractional_value():
    # three pairwise-intersecting blocks {1,2},{1,3},{2,3}: packing 3/2
    f = BoolFun.from_callable(3, lambda x: int(sum(x) >= 2))
    assert minimal_sensitive_blocks(f, 0) == [0b011, 0b101, 0b110]
    assert fbs_at(f, 0) == Fraction(3, 2)


@given(boolfuns(1, 3))
def test_fbs_vertex_oracle(f):
    for x in range(f.size):
        blocks = tuple(oracles.sensitive_blocks(f.table, f.n, x))
        assert fbs_at(f, x) == oracles.packing_vertex_optimum(blocks, f.n)


@given(boolfuns(1, 5))
def test_bs_fbs_c_sandwich(f):
    for x in range(f.size):
        bs = block_sensitivity_at(f, x)[0]
        fbs = fbs_at(f, x)
        c = certificate_at(f, x)[0]
        assert bs <= fbs <= c


def test_approx_degree_examples():
    assert approx_degree(BoolFun.constant(3, 1)) == 0
    assert approx_degree(XOR(3)) == 3
    assert best_approximation_error(XOR(3), 2) == Fraction(1, 2)
    assert approx_degree(OR(2)) == 1
    assert best_approximation_error(OR(2), 0) == Fraction(1, 2)
    assert best_approximation_error(OR(2), 1) == Fraction(1, 4)
    assert approx_degree(AND(3)) == 1
    assert best_approximation_error(AND(3), 1) == Fraction(1, 3)


def test_approx_degree_respects_eps():
    assert approx_degree(AND(3), eps=Fraction(1, 4)) == 2
    assert approx_degree(OR(2), eps=Fraction(1, 5)) == 2


@given(boolfuns(1, 4), st.integers(0, 3))
def test_best_error_matches_float_lp(f, d):
    d = min(d, f.n)
    exact = best_approximation_error(f, d)
    lp = approximation_lp(f, d)
    A = np.array([[float(c) for c in row[0]] for row in lp.rows])
    b = np.array([float(row[2]) for row in lp.rows])
    bounds = [(None, None)] * (lp.num_vars - 1) + [(0, None)]
    c = np.zeros(lp.num_vars)
    c[-1] = -1.0
    ref = linprog(c, A_ub=A, b_ub=b, bounds=bounds, method="highs")
    assert abs(float(exact) - (1 + ref.fun)) < 1e-7


@given(boolfuns(0, 4))
def test_approx_degree_at_most_degree(f):
    assert approx_degree(f) <= degree(f)


def test_approx_degree_cap():
    with pytest.raises(CapExceeded):
        approx_degree(OR(9))
