import pytest

from boolcondense.combinatorial import certificate_at, certificate_complexity, sensitivity
from boolcondense.core import bits_to_index
from boolcondense.zoo import (
    AND,
    OR,
    compose,
    mod_rubinstein,
    mod_rubinstein_certify,
    mod_rubinstein_gadget,
    parse_spec,
    rubinstein,
    run_gadget,
    tribes,
)


def test_compose_block_layout():
    f = compose(OR(2), AND(2))
    assert f.n == 4
    assert f((1, 1, 0, 0)) == 1 and f((1, 0, 1, 0)) == 0


@pytest.mark.parametrize("y,want", [("1100", 1), ("0110", 1), ("0011", 1), ("1010", 0), ("1111", 0),
                                    ("0000", 0), ("1001", 0)])
def test_mod_rubinstein_gadget(y, want):
    g = mod_rubinstein_gadget(4)
    assert g(tuple(int(c) for c in y)) == want


def test_rubinstein_gadget():
    g = run_gadget(4, 2)
    assert g((0, 1, 1, 0)) == 1 and g((0, 1, 1, 1)) == 0


def test_rubinstein_pair_in_second_copy():
    x = [0] * 16
    x[4] = x[5] = 1
    assert rubinstein(4)(x) == 1
    assert mod_rubinstein(4)([0] * 16) == 0


def test_tribes_examples():
    f = tribes(4)
    assert f.n == 8
    assert f(tuple(int(c) for c in "11000000")) == 1
    assert f(tuple(int(c) for c in "10101010")) == 0
    assert (sensitivity(f, 0)[0], sensitivity(f, 1)[0]) == (4, 2)


def test_non_square_rejected():
    for make in (mod_rubinstein, rubinstein, tribes):
        with pytest.raises(ValueError):
            make(5)


def test_certify_zero_input():
    f = mod_rubinstein(4)
    cert = mod_rubinstein_certify(4, 0)
    assert cert.size == 8 and cert.value == 0 and cert.check(f)
    assert str(cert.assignment) == "*0*0*0*0*0*0*0*0"
    assert cert.size == certificate_at(f, 0)[0]


def test_certify_far_ones():
    f = mod_rubinstein(4)
    x = [0] * 16
    x[0] = x[3] = 1  # copy 1 is 1001
    cert = mod_rubinstein_certify(4, x)
    part = [cert.assignment.values[p] for p in range(4)]
    assert part == [1, None, None, 1]
    assert cert.check(f)


def test_certify_satisfied_copy():
    f = mod_rubinstein(4)
    x = [0] * 16
    x[5] = x[6] = 1  # copy 2 is 0110
    cert = mod_rubinstein_certify(4, x)
    assert cert.value == 1 and cert.size == 4 and cert.check(f)
    assert cert.assignment.stars == tuple(p for p in range(16) if not 4 <= p < 8)


def test_certify_errors():
    with pytest.raises(ValueError):
        mod_rubinstein_certify(4, [0] * 15)
    with pytest.raises(ValueError):
        mod_rubinstein_certify(4, 1 << 16)


def test_certify_never_below_exact_on_samples():
    import numpy as np

    f = mod_rubinstein(4)
    rng = np.random.default_rng(5)
    for x in rng.integers(0, 1 << 16, 300):
        cert = mod_rubinstein_certify(4, int(x))
        assert cert.check(f) and cert.assignment.consistent(int(x))
        assert cert.size >= certificate_at(f, int(x))[0]


def test_certify_max_over_zero_inputs_is_c0():
    f = mod_rubinstein(4)
    assert certificate_complexity(f, 0)[0] == mod_rubinstein_certify(4, 0).size == 8


@pytest.mark.parametrize("spec,n", [("modrub:k=4", 16), ("rub:k=4", 16), ("tribes:k=4", 8), ("or:n=3", 3),
                                    ("const0:n=3", 3), ("compose:or2,and2", 4), ("xor:n=4", 4)])
def test_parse_spec(spec, n):
    assert parse_spec(spec).n == n


@pytest.mark.parametrize("spec", ["modrub", "foo:n=3", "or:n", "compose:or2", "tribes:k=5"])
def test_parse_spec_errors(spec):
    with pytest.raises(ValueError):
        parse_spec(spec)


def test_bits_helper_used_consistently():
    assert tribes(4)(bits_to_index("11000000")) == 1
