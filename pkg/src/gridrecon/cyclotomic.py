"""Exact arithmetic in the cyclotomic field ``Q(xi_N)``.

A :class:`CycNum` stores integer numerators of the power-basis coordinates
``1, xi, ..., xi^(phi(N)-1)`` (reduced modulo ``Phi_N``) over one positive
common denominator, always in lowest terms.  That makes the representation
canonical, so ``==`` and ``hash`` are structural.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

import mpmath

from .errors import ContextMismatchError, NotAUnitError

__all__ = [
    "CycNum",
    "CyclotomicContext",
    "as_root_of_unity",
    "automorphism",
    "cyclotomic_poly",
    "get_context",
    "numeric_embedding",
    "root_of_unity",
]

#: Guard bits added to the working precision of :func:`numeric_embedding`.
EMBED_MARGIN_BITS = 32


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (coefficients low to high, ``den`` monic)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert not any(num[: len(den) - 1]), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of ``Phi_n``, lowest degree first."""
    if n < 1:
        raise ValueError("cyclotomic polynomials are indexed by positive integers")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def _totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


class CyclotomicContext:
    """Shared tables for ``Q(xi_N)``; obtain instances through :func:`get_context`."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("conductor must be positive")
        self.N = n
        self.phi_poly = cyclotomic_poly(n)
        self.degree = len(self.phi_poly) - 1
        d = self.degree
        # red[j] = coordinates of x^j mod Phi_N, for 0 <= j < N
        red = []
        cur = [1] + [0] * (d - 1)
        for _ in range(n):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * p for c, p in zip(cur, self.phi_poly[:d])]
        self.red = tuple(red)
        self.units = tuple(a for a in range(n) if math.gcd(a, n) == 1)
        self._roots = tuple(self._from_lifted([int(j == t) for j in range(n)], 1) for t in range(n))
        self._root_index = {z: t for t, z in enumerate(self._roots)}
        self.zero = CycNum._make(self, (0,) * d, 1)
        self.one = self._roots[0]

    def __repr__(self):
        return f"CyclotomicContext(N={self.N})"

    def __reduce__(self):
        return get_context, (self.N,)

    # construction helpers -------------------------------------------------
    def _reduce_lifted(self, vec: Sequence[int]) -> list[int]:
        d, n = self.degree, self.N
        out = [0] * d
        for j, c in enumerate(vec):
            if c:
                row = self.red[j % n]
                for i in range(d):
                    if row[i]:
                        out[i] += c * row[i]
        return out

    def _from_lifted(self, vec: Sequence[int], den: int) -> CycNum:
        return CycNum._normalized(self, self._reduce_lifted(vec), den)

    def from_lifted(self, vec: Sequence[int], den: int = 1) -> CycNum:
        """Element ``sum(vec[j] * xi^j) / den`` for integer ``vec`` of any length."""
        return self._from_lifted([int(c) for c in vec], int(den))

    def from_coeffs(self, coeffs: Iterable) -> CycNum:
        """Element with the given power-basis coordinates (rationals allowed)."""
        fr = [Fraction(c) for c in coeffs]
        if len(fr) > self.degree:
            return self.from_lifted_fractions(fr)
        fr += [Fraction(0)] * (self.degree - len(fr))
        den = math.lcm(*(f.denominator for f in fr)) if fr else 1
        return CycNum._normalized(self, [int(f * den) for f in fr], den)

    def from_lifted_fractions(self, coeffs: Sequence) -> CycNum:
        fr = [Fraction(c) for c in coeffs]
        den = math.lcm(*(f.denominator for f in fr)) if fr else 1
        return self._from_lifted([int(f * den) for f in fr], den)

    def rational(self, q) -> CycNum:
        q = Fraction(q)
        return CycNum._normalized(self, [q.numerator] + [0] * (self.degree - 1), q.denominator)

    def root(self, t: int) -> CycNum:
        return self._roots[t % self.N]


@lru_cache(maxsize=None)
def get_context(n: int) -> CyclotomicContext:
    return CyclotomicContext(n)


class CycNum:
    """Exact element of ``Q(xi_N)``."""

    __slots__ = ("ctx", "num", "den", "_hash")

    ctx: CyclotomicContext
    num: tuple[int, ...]
    den: int

    @classmethod
    def _make(cls, ctx, num, den):
        self = object.__new__(cls)
        self.ctx = ctx
        self.num = num
        self.den = den
        self._hash = None
        return self

    @classmethod
    def _normalized(cls, ctx, num: list[int], den: int) -> CycNum:
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = [-c for c in num]
            den = -den
        if den != 1:
            g = math.gcd(den, *num)
            if g > 1:
                num = [c // g for c in num]
                den //= g
        if not any(num):
            den = 1
        return cls._make(ctx, tuple(num), den)

    # --- conversion -------------------------------------------------------
    def _coerce(self, other) -> CycNum:
        if isinstance(other, CycNum):
            if other.ctx is not self.ctx and other.ctx.N != self.ctx.N:
                raise ContextMismatchError(
                    f"cannot combine elements of Q(xi_{self.ctx.N}) and Q(xi_{other.ctx.N})"
                )
            return other
        if isinstance(other, (int, Rational)):
            return self.ctx.rational(other)
        return NotImplemented

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    def height(self) -> int:
        """Largest absolute numerator (after clearing the common denominator)."""
        return max((abs(c) for c in self.num), default=0)

    # --- ring operations --------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, CycNum):
            return self.ctx.N == other.ctx.N and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Rational)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self.ctx.N, self.num, self.den))
        return self._hash

    def __neg__(self):
        return CycNum._make(self.ctx, tuple(-c for c in self.num), self.den)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return CycNum._normalized(self.ctx, [a + b for a, b in zip(self.num, other.num)], self.den)
        return CycNum._normalized(
            self.ctx,
            [a * other.den + b * self.den for a, b in zip(self.num, other.num)],
            self.den * other.den,
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        if other.is_rational():
            c = other.num[0]
            return CycNum._normalized(ctx, [a * c for a in self.num], self.den * other.den)
        if self.is_rational():
            return other * self
        n = ctx.N
        lifted = [0] * n
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(other.num):
                    if b:
                        lifted[(i + j) % n] += a * b
        return CycNum._normalized(ctx, ctx._reduce_lifted(lifted), self.den * other.den)

    __rmul__ = __mul__

    def conjugates(self) -> list[CycNum]:
        """Images under every nontrivial automorphism."""
        return [self.sigma(a) for a in self.ctx.units if a != 1]

    def norm(self) -> Fraction:
        """Field norm down to ``Q``."""
        acc = self
        for c in self.conjugates():
            acc = acc * c
        return acc.rational_value()

    def inverse(self) -> CycNum:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return self.ctx.rational(Fraction(self.den, self.num[0]))
        # 1/z = (product of the other conjugates) / norm(z)
        rest = self.ctx.one
        for c in self.conjugates():
            rest = rest * c
        nz = (self * rest).rational_value()
        return rest * (1 / nz)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # --- Galois action ----------------------------------------------------
    def lifted(self) -> list[int]:
        return list(self.num) + [0] * (self.ctx.N - self.ctx.degree)

    def sigma(self, a: int) -> CycNum:
        """``sigma_a``: ``xi -> xi^a``; ``sigma_0`` is the constant 1 by convention."""
        ctx = self.ctx
        a %= ctx.N
        if ctx.N == 1:
            return self
        if a == 0:
            return ctx.one
        if math.gcd(a, ctx.N) != 1:
            raise NotAUnitError(f"{a} is not a unit modulo {ctx.N}")
        if a == 1 or self.is_rational():
            return self
        n = ctx.N
        lifted = [0] * n
        for j, c in enumerate(self.num):
            if c:
                lifted[j * a % n] += c
        return CycNum._normalized(ctx, ctx._reduce_lifted(lifted), self.den)

    def conj(self) -> CycNum:
        return self.sigma(-1)

    def mul_root(self, t: int) -> CycNum:
        """Multiply by ``xi^t``."""
        ctx = self.ctx
        t %= ctx.N
        if t == 0:
            return self
        n = ctx.N
        lifted = [0] * n
        for j, c in enumerate(self.num):
            if c:
                lifted[(j + t) % n] += c
        return CycNum._normalized(ctx, ctx._reduce_lifted(lifted), self.den)

    def __repr__(self):
        if self.is_rational():
            return f"CycNum({self.rational_value()}; N={self.ctx.N})"
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*z^{j}" if j else f"{c}")
        return f"CycNum({' + '.join(terms)}; N={self.ctx.N})"


def root_of_unity(ctx: CyclotomicContext, t: int) -> CycNum:
    return ctx.root(t)


def automorphism(a: int, z: CycNum) -> CycNum:
    return z.sigma(a)


def as_root_of_unity(z: CycNum) -> int | None:
    """``t`` with ``z == xi_N^t``, or ``None``."""
    return z.ctx._root_index.get(z)


@lru_cache(maxsize=64)
def _root_powers(n: int, prec: int) -> tuple:
    with mpmath.workprec(prec):
        return tuple(mpmath.expjpi(mpmath.mpf(2 * j) / n) for j in range(n))


def numeric_embedding(z: CycNum, precision_bits: int = 256) -> mpmath.mpc:
    """Value of ``z`` under ``xi_N -> exp(2 pi i / N)``.

    Arithmetic runs at ``precision_bits + EMBED_MARGIN_BITS + log2(height)``
    bits, so the relative error of the result is below ``2**-precision_bits``
    unless the value suffers catastrophic cancellation beyond that margin.
    """
    if precision_bits < 64:
        raise ValueError("precision must be at least 64 bits")
    extra = max(z.height(), 1).bit_length() + max(z.den, 1).bit_length()
    prec = precision_bits + EMBED_MARGIN_BITS + extra
    powers = _root_powers(z.ctx.N, prec)
    with mpmath.workprec(prec):
        acc = mpmath.mpc(0)
        for c, w in zip(z.num, powers):
            if c:
                acc += c * w
        acc /= z.den
    return acc
