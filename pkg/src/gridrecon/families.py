"""Homometric families (equal low-order autocorrelations, not translates) and an agreement checker."""

from __future__ import annotations

import itertools
import math
from typing import NamedTuple, Union

from sympy import isprime

from .cyclotomic import CycNum, get_context
from .errors import BudgetExceededError, InternalInconsistencyError, InvalidParameterError
from .groups import GroupElement, GroupSpec, make_group
from .spectral import RatFn, SpecFn, dft, idft_rational

__all__ = [
    "Agreement",
    "agreement_order",
    "family_delta",
    "family_divisor",
    "family_sharp",
    "family_threer",
    "family_z6",
]

DEFAULT_BUDGET = 10**7


def family_z6(a: int, b: int) -> RatFn:
    """The Z/6 function whose transform is ``6(a +- sqrt(-3) b)`` at ``+-1`` and zero elsewhere."""
    g = make_group([6])
    return RatFn(g, (2 * a, a - 3 * b, -a - 3 * b, -2 * a, 3 * b - a, a + 3 * b))


def _assign(values: dict, x: GroupElement, v: CycNum) -> None:
    old = values.get(x)
    if old is not None and old != v:
        raise InternalInconsistencyError(f"conflicting transform values at {x}: {old} vs {v}")
    values[x] = v


def family_threer(r: int) -> tuple[RatFn, RatFn]:
    """Pair on ``(Z/6)^r`` agreeing through order ``3r``."""
    if r < 1:
        raise InvalidParameterError("r must be positive")
    g = make_group([6] * r)
    ctx = get_context(6)
    base: dict = {}
    for k in range(r):
        e = g.unit_vector(k)
        _assign(base, e, ctx.one)
        _assign(base, tuple(-c % 6 for c in e), ctx.one)
    corner = (3,) * r
    hat_f = dict(base)
    hat_g = dict(base)
    _assign(hat_f, corner, ctx.one)
    _assign(hat_g, corner, -ctx.one)
    return (
        idft_rational(SpecFn.from_mapping(g, hat_f)),
        idft_rational(SpecFn.from_mapping(g, hat_g)),
    )


def family_sharp(p: int, q: int, r: int) -> tuple[RatFn, RatFn]:
    """Pair on ``(Z/2pq)^r`` agreeing through order ``3r + 2``."""
    if p == q or p == 2 or q == 2 or not (isprime(p) and isprime(q)):
        raise InvalidParameterError("p and q must be distinct odd primes")
    if r < 1:
        raise InvalidParameterError("r must be positive")
    n = 2 * p * q
    g = make_group([n] * r)
    ctx = get_context(n)
    units = [a for a in range(n) if math.gcd(a, n) == 1]
    hat_f: dict = {}
    hat_g: dict = {}
    for a in units:
        for k in range(r):
            x = tuple(a * p * (q + 2) % n if i == k else 0 for i in range(r))
            _assign(hat_f, x, ctx.one)
            _assign(hat_g, x, ctx.one)
    for a in units:
        d = (a * q * (p + 2) % n,) * r
        _assign(hat_f, d, ctx.one)
        _assign(hat_g, d, ctx.rational((-1) ** a))
    return (
        idft_rational(SpecFn.from_mapping(g, hat_f)),
        idft_rational(SpecFn.from_mapping(g, hat_g)),
    )


def family_delta(g: GroupSpec) -> tuple[SpecFn, SpecFn]:
    """Transforms of ``f`` (a single spike at the last unit vector) and of ``g = 0``."""
    ctx = get_context(g.exponent)
    spike = g.unit_vector(len(g.dims) - 1)
    if not any(spike):
        raise InvalidParameterError("the last modulus must exceed 1")
    return SpecFn.from_mapping(g, {spike: ctx.one}), SpecFn.from_mapping(g, {})


def family_divisor(g: GroupSpec, d: int) -> tuple[SpecFn, SpecFn]:
    """Transforms agreeing through order ``sum(a_k) / d``; ``d > 1`` must divide every modulus."""
    if d <= 1 or any(a % d for a in g.dims):
        raise InvalidParameterError(f"d={d} must exceed 1 and divide every modulus of {g.dims}")
    ctx = get_context(g.exponent)
    base: dict = {}
    for k in range(len(g.dims)):
        _assign(base, g.unit_vector(k), ctx.one)
    corner = tuple(a // d for a in g.dims)
    if corner in base:
        raise InvalidParameterError(f"corner point {corner} collides with a unit vector")
    hat_f = dict(base)
    hat_g = dict(base)
    hat_f[corner] = ctx.one
    hat_g[corner] = ctx.root(g.exponent // d)
    return SpecFn.from_mapping(g, hat_f), SpecFn.from_mapping(g, hat_g)


class Agreement(NamedTuple):
    """``agree_through`` is the largest order checked with equal moments; ``witness`` a disagreeing sequence."""

    agree_through: int
    witness: tuple[GroupElement, ...] | None


Witness = Union[RatFn, SpecFn]


def _transform(h: Witness) -> SpecFn:
    return dft(h) if isinstance(h, RatFn) else h


def agreement_order(f: Witness, g: Witness, K: int, budget: int = DEFAULT_BUDGET) -> Agreement:
    """Compare all transformed moments of order ``1..K`` supported on either transform.

    Sequences are enumerated as multisets of nonzero support points with zero
    sum; any other sequence has a vanishing product on both sides.  Each
    candidate multiset costs one unit of ``budget``.
    """
    hf, hg = _transform(f), _transform(g)
    grp = hf.group
    if grp.dims != hg.group.dims:
        raise InvalidParameterError("functions live on different grids")
    zero = grp.zero
    if hf(zero) != hg(zero):
        return Agreement(0, (zero,))
    pts = sorted({x for x, v in hf.items() if v and any(x)} | {x for x, v in hg.items() if v and any(x)})
    dims = grp.dims
    spent = 0
    for n in range(2, K + 1):
        for combo in itertools.combinations_with_replacement(pts, n):
            spent += 1
            if spent > budget:
                raise BudgetExceededError(f"enumeration exceeded {budget} sequences at order {n}")
            if any(sum(c[i] for c in combo) % a for i, a in enumerate(dims)):
                continue
            pf = hf(combo[0])
            pg = hg(combo[0])
            for x in combo[1:]:
                pf = pf * hf(x)
                pg = pg * hg(x)
            if pf != pg:
                return Agreement(n - 1, combo)
    return Agreement(K, None)
