import pickle
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridrecon.cyclotomic import (
    as_root_of_unity,
    automorphism,
    cyclotomic_poly,
    get_context,
    numeric_embedding,
    root_of_unity,
)
from gridrecon.errors import ContextMismatchError, NotAUnitError


def test_cyclotomic_poly():
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(7) == (1,) * 7
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    assert cyclotomic_poly(1) == (-1, 1)


def gauss7():
    c = get_context(7)
    return c.root(1) + c.root(2) + c.root(4), c.root(3) + c.root(5) + c.root(6)


def test_gauss_period_product():
    a, b = gauss7()
    assert a * b == 2
    assert a.inverse() == b / 2
    assert (a * a.inverse()) == 1


def ring_elements(n):
    return st.lists(st.integers(-6, 6), min_size=n, max_size=n).map(lambda v: get_context(n).from_lifted(v))


conductors = st.sampled_from([1, 2, 3, 4, 6, 7, 12, 15])


@st.composite
def pairs(draw):
    n = draw(conductors)
    return draw(ring_elements(n)), draw(ring_elements(n)), draw(ring_elements(n))


@settings(max_examples=80)
@given(pairs())
def test_field_axioms(t):
    a, b, c = t
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()
    if a:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@settings(max_examples=40)
@given(pairs())
def test_embedding_is_a_homomorphism(t):
    a, b, _ = t
    with mpmath.workprec(200):
        lhs = numeric_embedding(a * b, 128)
        rhs = numeric_embedding(a, 128) * numeric_embedding(b, 128)
        assert abs(lhs - rhs) < mpmath.mpf(2) ** -90 * (1 + abs(rhs))


def test_roots_of_unity():
    c6 = get_context(6)
    assert root_of_unity(c6, 0) == 1
    assert root_of_unity(c6, 3) == -1
    assert root_of_unity(c6, 2).coeffs == (Fraction(-1), Fraction(1))
    assert as_root_of_unity(c6.one) == 0
    assert as_root_of_unity(-c6.one) == 3
    c7 = get_context(7)
    assert as_root_of_unity(c7.root(1) + c7.root(2)) is None


def test_automorphisms():
    a, b = gauss7()
    assert automorphism(1, a) == a
    assert automorphism(6, a) == b
    assert automorphism(6, a) == a.conj()
    assert a.sigma(0) == 1
    assert a.sigma(2) == a
    with pytest.raises(NotAUnitError):
        get_context(6).root(1).sigma(2)
    z = get_context(12).from_lifted([1, 2, 0, 5, 7])
    with mpmath.workprec(256):
        assert abs(numeric_embedding(z.conj(), 128) - mpmath.conj(numeric_embedding(z, 128))) < 1e-30


def test_numeric_embedding():
    with mpmath.workprec(256):
        assert numeric_embedding(get_context(1).one) == 1
        assert abs(numeric_embedding(get_context(4).root(1)) - 1j) < 1e-40
        w = numeric_embedding(get_context(6).root(1))
        assert abs(w - mpmath.mpc(0.5, mpmath.sqrt(3) / 2)) < 1e-40


def test_rational_and_norm():
    c = get_context(5)
    q = c.rational(Fraction(3, 4))
    assert q.is_rational() and q.rational_value() == Fraction(3, 4)
    assert (c.root(1) - 1).norm() == 5
    assert c.root(2) ** -3 == c.root(-6)


def test_context_mismatch():
    with pytest.raises(ContextMismatchError):
        get_context(5).one + get_context(7).one


def test_canonical_hash_and_pickle():
    c = get_context(7)
    x = c.from_lifted([2, 4, 6], 4)
    y = c.from_lifted([1, 2, 3], 2)
    assert x == y and hash(x) == hash(y)
    assert pickle.loads(pickle.dumps(x)) == x
