import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from boolcondense.core import (
    ArityError,
    BoolFun,
    CapExceeded,
    OracleFun,
    Restriction,
    TableFormatError,
    bits_to_index,
    expansion_indices,
    format_table,
    index_to_bits,
    parse_table,
    random_function,
    read_table,
    restrict,
    write_table,
)
from boolcondense.zoo import AND, OR, XOR
from conftest import boolfuns, fun_and_restriction


def test_evaluate_gates():
    assert OR(2)((0, 0)) == 0
    assert OR(2)((1, 0)) == 1
    assert XOR(3)((1, 1, 1)) == 1


def test_bit_order_x1_is_lsb():
    assert bits_to_index((1, 0, 0)) == 1
    assert bits_to_index("001") == 4
    assert index_to_bits(6, 3) == (0, 1, 1)


def test_evaluate_arity_mismatch():
    with pytest.raises(ArityError):
        OR(2)((1, 0, 1))
    with pytest.raises(ArityError):
        OR(2)(4)


def test_restrict_examples():
    assert restrict(AND(3), Restriction.parse("1**")) == AND(2)
    zero = restrict(AND(3), Restriction.parse("0**"))
    assert zero.n == 2 and zero.is_constant() and zero.table[0] == 0
    flipped = restrict(XOR(3), Restriction.parse("*1*"))
    assert flipped.bitstring() == "1001"


def test_restrict_length_mismatch():
    with pytest.raises(ArityError):
        restrict(AND(3), Restriction.parse("1*"))


def test_restriction_parse_and_str():
    rho = Restriction.parse("0*1*")
    assert str(rho) == "0*1*"
    assert rho.stars == (1, 3)
    assert rho.star_count == 2 and rho.size == 2
    with pytest.raises(ValueError):
        Restriction.parse("0x1")


def test_table_format_examples(tmp_path):
    p = tmp_path / "and2.txt"
    p.write_text("2\n0001\n")
    assert read_table(p) == AND(2)
    out = tmp_path / "copy.txt"
    write_table(read_table(p), out)
    assert out.read_bytes() == p.read_bytes()
    with pytest.raises(TableFormatError):
        parse_table("1\n011\n")


@pytest.mark.parametrize("text", ["x\n01\n", "1\n0 1\n", "1\n02\n", "1\n01\n11\n", "1"])
def test_table_format_errors(text):
    with pytest.raises(TableFormatError):
        parse_table(text)


@given(boolfuns(0, 6))
def test_table_round_trip(f):
    assert parse_table(format_table(f)) == f


def test_random_function_determinism():
    a, b = random_function(3, 11), random_function(3, 11)
    assert a == b
    c = random_function(3, 12)
    assert (a.bitstring(), c.bitstring()) == ("01000110", "01110000")
    assert random_function(0, 5).n == 0
    with pytest.raises(CapExceeded):
        random_function(40, 0)


def test_table_is_read_only():
    f = OR(2)
    with pytest.raises(ValueError):
        f.table[0] = 1


@given(boolfuns(0, 5))
def test_all_star_restriction_is_identity(f):
    assert restrict(f, Restriction.all_stars(f.n)) == f


@given(boolfuns(1, 5), st.data())
def test_no_star_restriction_is_point_value(f, data):
    x = data.draw(st.integers(0, f.size - 1))
    g = restrict(f, Restriction.from_stars(f.n, [], x))
    assert g.n == 0 and g.table[0] == f.table[x]


@given(fun_and_restriction(1, 5), st.data())
def test_restriction_composition(pair, data):
    f, rho = pair
    inner_vals = data.draw(st.lists(st.sampled_from([None, 0, 1]),
                                    min_size=rho.star_count, max_size=rho.star_count))
    sigma = Restriction(tuple(inner_vals))
    assert restrict(restrict(f, rho), sigma) == restrict(f, rho.compose(sigma))


@given(fun_and_restriction(1, 5))
def test_expand_index_matches_vector_form(pair):
    _, rho = pair
    idx = expansion_indices(rho)
    assert [rho.expand_index(r) for r in range(1 << rho.star_count)] == idx.tolist()
    for r, full in enumerate(idx):
        assert rho.consistent(int(full))


def test_oracle_fun_counts_queries():
    o = OracleFun(3, lambda x: int(sum(x) >= 2))
    assert o((1, 1, 0)) == 1 and o((1, 0, 0)) == 0
    assert o.queries == 2
    with pytest.raises(ArityError):
        o((1, 1))
    o.reset()
    assert o.queries == 0


def test_boolfun_rejects_bad_tables():
    with pytest.raises(ArityError):
        BoolFun(2, [0, 1, 1])
    with pytest.raises(ValueError):
        BoolFun(1, [0, 2])
    with pytest.raises(ArityError):
        BoolFun.from_string("011")
    assert BoolFun.from_string("0110") == XOR(2)
    assert np.array_equal(OR(2).ones(), [1, 2, 3])
