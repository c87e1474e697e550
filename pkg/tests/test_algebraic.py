from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

import oracles
from boolcondense.algebraic import (
    ConvergenceError,
    adjacency_matrix,
    degree,
    mobius,
    spectral_sensitivity,
)
from boolcondense.combinatorial import sensitivity
from boolcondense.core import BoolFun, restrict
from boolcondense.zoo import AND, OR, XOR, mod_rubinstein
from conftest import boolfuns, fun_and_restriction


def test_mobius_examples():
    p = mobius(XOR(2))
    assert str(p) == "x1 + x2 - 2*x1*x2" and p.degree == 2
    p = mobius(AND(3))
    assert p.coefficients == {0b111: Fraction(1)} and str(p) == "x1*x2*x3"
    assert degree(BoolFun.constant(3, 0)) == 0
    assert degree(BoolFun.constant(3, 1)) == 0


def test_mod_rubinstein_degree_matches_fourier_route():
    f = mod_rubinstein(4)
    assert degree(f) == 16
    # independent: parity coefficient sum_x (-1)^{f(x) + |x|} is nonzero iff full degree
    idx = np.arange(f.size)
    par = np.zeros(f.size, dtype=np.int64)
    for i in range(16):
        par ^= (idx >> i) & 1
    F = 1 - 2 * f.table.astype(np.int64)
    assert int(np.sum(F * (1 - 2 * par))) != 0


@given(boolfuns(0, 6))
def test_mobius_round_trip(f):
    p = mobius(f)
    assert all(p(x) == int(f.table[x]) for x in range(f.size))


@given(boolfuns(0, 5))
def test_degree_matches_fourier_degree(f):
    assert degree(f) == oracles.fourier_degree(f.table, f.n)


@given(fun_and_restriction(1, 6))
def test_degree_monotone_under_restriction(pair):
    f, rho = pair
    assert degree(restrict(f, rho)) <= degree(f)


@pytest.mark.parametrize("n", range(2, 11))
def test_spectral_closed_forms(n):
    assert abs(spectral_sensitivity(OR(n)) - np.sqrt(n)) < 1e-9
    assert abs(spectral_sensitivity(XOR(n)) - n) < 1e-9


def test_spectral_constant():
    assert spectral_sensitivity(BoolFun.constant(4, 1)) == 0.0


@given(boolfuns(1, 7))
def test_spectral_matches_dense_eigensolver(f):
    ref = np.abs(np.linalg.eigvalsh(adjacency_matrix(f))).max()
    assert abs(spectral_sensitivity(f) - ref) < 1e-8


@given(boolfuns(1, 6))
def test_spectral_relations(f):
    lam = spectral_sensitivity(f)
    s = sensitivity(f)[0]
    assert lam <= s + 1e-9
    assert s <= lam * lam + 1e-6
    assert degree(f) <= lam * lam + 1e-6


def test_spectral_iteration_cap():
    f = BoolFun.from_string("0110100110010111")
    with pytest.raises(ConvergenceError):
        spectral_sensitivity(f, tol=1e-300, max_iter=3)
