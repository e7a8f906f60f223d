import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridrecon import RatFn, SpecFn, dft, family_threer, get_context, idft, idft_rational, make_group
from gridrecon.errors import NotRationalError
from gridrecon.spectral import character, rationality_check, support


def test_character():
    g = make_group([6])
    assert character(g, (0,), (4,)) == 1
    assert character(g, (1,), (3,)) == -1
    g2 = make_group([4, 6])
    rng = random.Random(1)
    for _ in range(20):
        x = (rng.randrange(4), rng.randrange(6))
        y = (rng.randrange(4), rng.randrange(6))
        assert character(g2, x, y) == character(g2, y, x)


def test_dft_delta_and_constant():
    g = make_group([5])
    hat = dft(RatFn.from_mapping(g, {(0,): 1}))
    assert all(v == 1 for _, v in hat.items())
    hat1 = dft(RatFn.from_callable(g, lambda x: 1))
    assert hat1((0,)) == 5
    assert all(v.is_zero() for x, v in hat1.items() if any(x))


def test_dft_z7_indicator(z7_f):
    ctx = get_context(7)
    hat = dft(z7_f)
    for a in range(1, 7):
        assert hat((a,)) == ctx.root(a) + ctx.root(2 * a) + ctx.root(4 * a)
    assert hat((0,)) == 3
    assert support(hat) == [(a,) for a in range(7)]


def test_idft_example_transform(z7_f):
    ctx = get_context(7)
    g = z7_f.group
    mapping = {(0,): ctx.rational(3)}
    for a in range(1, 7):
        mapping[(a,)] = ctx.root(a) + ctx.root(2 * a) + ctx.root(4 * a)
    assert idft_rational(SpecFn.from_mapping(g, mapping)) == z7_f
    assert [v for v in idft(SpecFn.from_mapping(g, mapping))] == list(z7_f.values)


def test_idft_of_constant_is_delta():
    g = make_group([2, 3])
    one = get_context(g.exponent).one
    f = idft_rational(SpecFn.from_mapping(g, {x: one for x in g.elements()}))
    assert f == RatFn.from_mapping(g, {(0, 0): 1})


values = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@settings(max_examples=40, deadline=None)
@given(st.lists(values, min_size=8, max_size=8))
def test_roundtrip_2x4(vals):
    f = RatFn(make_group([2, 4]), tuple(vals))
    assert idft_rational(dft(f)) == f


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([[5], [6], [2, 4], [3, 3]]), st.randoms(use_true_random=False))
def test_dft_is_galois_symmetric(dims, rnd):
    g = make_group(dims)
    f = RatFn.from_callable(g, lambda x: Fraction(rnd.randint(-9, 9), rnd.randint(1, 4)))
    assert rationality_check(dft(f))


def test_rationality_witness_fails():
    g = make_group([6])
    ctx = get_context(6)
    F = SpecFn.from_mapping(g, {(1,): ctx.root(1), (5,): ctx.root(1)})
    assert not rationality_check(F)
    with pytest.raises(NotRationalError):
        idft_rational(F)
    assert rationality_check(SpecFn.from_mapping(g, {}))


def test_support():
    g = make_group([6])
    assert support(SpecFn.from_mapping(g, {})) == []
    f, _ = family_threer(1)
    assert sorted(support(dft(f))) == [(1,), (3,), (5,)]


def test_linearity_and_shift():
    g = make_group([3, 4])
    rng = random.Random(7)
    f = RatFn.from_callable(g, lambda x: rng.randint(-3, 3))
    h = RatFn.from_callable(g, lambda x: rng.randint(-3, 3))
    assert dft(f + h) == dft(f) + dft(h)
    y = (1, 3)
    shifted = dft(f.shifted(y))
    for x, v in dft(f).items():
        assert shifted(x) == v * character(g, x, y)
