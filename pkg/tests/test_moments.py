import random
import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridrecon import MomentOracle, RatFn, autocorr, dft, get_context, make_group, moment_table, zero_sum
from gridrecon.errors import InvalidElementError, OrderExceededError
from gridrecon.moments import ZeroSumSeq, oracle_query, prop1_identity_check, transformed_moment


def test_example_moments(z7_f, z7_tables):
    assert autocorr(z7_f, []) == 3
    for x in range(7):
        assert autocorr(z7_f, [(x,)]) == (3 if x == 0 else 1)
    computed = moment_table(z7_f, 3)
    for n in (1, 2, 3):
        assert computed.tables[n] == {k: v for k, v in z7_tables.tables[n].items() if v}


def test_zero_function_moments():
    g = make_group([2, 3])
    f = RatFn.zeros(g)
    t = moment_table(f, 3)
    assert all(not t.tables[n] for n in (1, 2, 3))
    assert autocorr(f, [(1, 1), (0, 2)]) == 0


def test_table_matches_brute_force():
    g = make_group([2, 3])
    rng = random.Random(3)
    f = RatFn.from_callable(g, lambda x: Fraction(rng.randint(-3, 3), rng.choice([1, 2])))
    t = moment_table(f, 3)
    elements = list(g.elements())
    for a in elements:
        for b in elements:
            assert t.value([a, b]) == autocorr(f, [a, b])


def test_zero_sum_sequences():
    g = make_group([7])
    zs = zero_sum(g, [(1,), (1,)], close=True)
    assert zs.entries[-1] == (5,)
    assert zs.order == 3
    assert ZeroSumSeq(g, ((0,), (0,))).order == 1
    with pytest.raises(InvalidElementError):
        ZeroSumSeq(g, ((1,), (2,)))


def gauss(a):
    ctx = get_context(7)
    return ctx.root(a) + ctx.root(2 * a) + ctx.root(4 * a)


def closed_form_m3(j, k):
    # the hand-derived transformed order-3 table of the Z/7 example
    ctx = get_context(7)
    if j == k == 0:
        return ctx.rational(27)
    if (j == 0) != (k == 0) or (j + k) % 7 == 0:
        return ctx.rational(6)
    return sum(
        (ctx.root(u * j + v * k) for u, v in ((1, 3), (2, 6), (4, 5), (3, 1), (6, 2), (5, 4))),
        ctx.zero,
    )


def test_transformed_example(z7_tables):
    g = z7_tables.group
    for k in range(1, 7):
        assert transformed_moment(z7_tables, zero_sum(g, [(k,), (-k,)])) == 2
        assert z7_tables.transformed([(k,)]) == 2
    assert z7_tables.transformed([(0,)]) == 9
    for j in range(7):
        for k in range(7):
            assert z7_tables.transformed([(j,), (k,)]) == closed_form_m3(j, k)
    assert transformed_moment(z7_tables, zero_sum(g, [(1,), (1,), (5,)])) == gauss(1) * gauss(1) * gauss(5)
    assert transformed_moment(z7_tables, zero_sum(g, [(0,), (0,), (0,)])) == 3


def test_transformed_moment_from_function(z7_f):
    g = z7_f.group
    zs = zero_sum(g, [(1,), (2,), (4,)])
    assert transformed_moment(z7_f, zs) == gauss(1) * gauss(2) * gauss(4)


def test_oracle_cap_and_log(z7_f):
    o = MomentOracle(z7_f, cap=3)
    g = z7_f.group
    assert o.log == 0
    oracle_query(o, zero_sum(g, [(1,), (1,), (5,)]))
    assert o.log == 3
    with pytest.raises(OrderExceededError):
        o.query(zero_sum(g, [(1,), (1,), (1,), (4,)]))
    o6 = MomentOracle(z7_f, cap=6)
    o6.query([(1,), (6,)])
    o6.query([(2,), (5,)])
    assert o6.log == 2
    o6.query([(1,), (1,), (1,), (4,)])
    o6.query([(3,), (4,)])
    assert o6.log == 4


def test_table_oracle_refuses_missing_orders(z7_tables):
    o = MomentOracle(z7_tables)
    with pytest.raises(OrderExceededError):
        o.query([(1,), (1,), (1,), (4,)])


def test_scaled_view_shares_log():
    g = make_group([5])
    f = RatFn.from_mapping(g, {(1,): Fraction(1, 2), (3,): Fraction(-1, 3)})
    o = MomentOracle(f)
    assert o.integer_scale() == 6
    view = o.with_scale(6)
    assert view.query([(2,), (3,)]) == dft(f.scaled(6))((2,)) * dft(f.scaled(6))((3,))
    assert o.log == 2


def test_concurrent_queries_keep_running_max(z7_f):
    o = MomentOracle(z7_f)
    g = z7_f.group

    def worker(k):
        for _ in range(20):
            o.query(zero_sum(g, [(k,)] * (k % 3 + 1), close=True))

    threads = [threading.Thread(target=worker, args=(k,)) for k in range(1, 7)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert o.log == 4
    assert o.query_count == 120


@pytest.mark.parametrize("dims, n", [([6], 2), ([2, 4], 3), ([5], 4), ([3, 3], 3)])
def test_moment_transform_identity(dims, n):
    g = make_group(dims)
    rng = random.Random(sum(dims) * n)
    f = RatFn.from_callable(g, lambda x: Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
    assert prop1_identity_check(f, n, 5, random.Random(1))


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([[4], [7], [2, 3]]), st.integers(2, 4))
def test_moment_identity_for_delta(dims, n):
    g = make_group(dims)
    delta = RatFn.from_mapping(g, {g.zero: 1})
    assert prop1_identity_check(delta, n, 3)
    assert autocorr(delta, [g.zero] * (n - 1)) == 1


def test_moment_identity_detects_mismatch(monkeypatch):
    import gridrecon.moments as mm

    g = make_group([5])
    f = RatFn.from_mapping(g, {(1,): 1, (2,): 2})
    monkeypatch.setattr(mm, "autocorr", lambda f, s: Fraction(-99))
    assert not mm.prop1_identity_check(f, 2, 2)
