"""Exact discrete Fourier transform on finite abelian grids.

Conventions (``N`` is the exponent of the grid)::

    chi(x, y) = xi_N ** sum_k (N / a_k) x_k y_k
    dft(f)(x) = sum_y f(y) * conj(chi(x, y))
    idft(F)(x) = |G|^-1 * sum_y F(y) * chi(x, y)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .cyclotomic import CycNum, CyclotomicContext, get_context
from .errors import InvalidElementError, NotRationalError
from .groups import GroupElement, GroupSpec

__all__ = [
    "RatFn",
    "SpecFn",
    "character",
    "dft",
    "idft",
    "idft_rational",
    "rationality_check",
    "support",
]


def _grid_arrays(g: GroupSpec):
    coords = np.array(list(g.elements()), dtype=np.int64).reshape(g.order, len(g.dims))
    weights = np.array([g.exponent // a for a in g.dims], dtype=np.int64)
    return coords, weights


@dataclass(frozen=True, eq=False)
class RatFn:
    """A rational-valued function stored densely in row-major grid order."""

    group: GroupSpec
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if len(vals) != self.group.order:
            raise InvalidElementError(
                f"expected {self.group.order} values for grid {self.group.dims}, got {len(vals)}"
            )
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_mapping(cls, group: GroupSpec, mapping: Mapping[Sequence[int], object]) -> RatFn:
        vals = [Fraction(0)] * group.order
        for x, v in mapping.items():
            vals[group.index(group.element(x))] = Fraction(v)
        return cls(group, tuple(vals))

    @classmethod
    def from_callable(cls, group: GroupSpec, fn: Callable[[GroupElement], object]) -> RatFn:
        return cls(group, tuple(Fraction(fn(x)) for x in group.elements()))

    @classmethod
    def zeros(cls, group: GroupSpec) -> RatFn:
        return cls(group, (Fraction(0),) * group.order)

    def __call__(self, x) -> Fraction:
        return self.values[self.group.index(self.group.element(x))]

    def __eq__(self, other):
        if not isinstance(other, RatFn):
            return NotImplemented
        return self.group.dims == other.group.dims and self.values == other.values

    def __hash__(self):
        return hash((self.group.dims, self.values))

    def __repr__(self):
        shown = ", ".join(str(v) for v in self.values[:12])
        more = ", ..." if len(self.values) > 12 else ""
        return f"RatFn(dims={list(self.group.dims)}, values=[{shown}{more}])"

    def __add__(self, other: RatFn) -> RatFn:
        return RatFn(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def scaled(self, c) -> RatFn:
        c = Fraction(c)
        return RatFn(self.group, tuple(c * v for v in self.values))

    def shifted(self, y: Sequence[int]) -> RatFn:
        """The function ``x -> f(x + y)``."""
        g = self.group
        y = g.element(y)
        return RatFn(g, tuple(self.values[g.index(tuple((p + q) % a for p, q, a in zip(x, y, g.dims)))]
                              for x in g.elements()))

    def denominator_lcm(self) -> int:
        return math.lcm(*(v.denominator for v in self.values)) if self.values else 1

    def integer_values(self, scale: int | None = None) -> list[int]:
        c = self.denominator_lcm() if scale is None else scale
        out = [v * c for v in self.values]
        if any(v.denominator != 1 for v in out):
            raise ValueError("scale does not clear all denominators")
        return [int(v) for v in out]

    def is_zero(self) -> bool:
        return not any(self.values)

    def as_grid(self) -> np.ndarray:
        """Values as an object array shaped like the grid."""
        arr = np.empty(self.group.order, dtype=object)
        arr[:] = list(self.values)
        return arr.reshape(self.group.dims)


@dataclass(frozen=True, eq=False)
class SpecFn:
    """A function with values in ``Q(xi_N)``, usually a Fourier transform."""

    group: GroupSpec
    values: tuple[CycNum, ...]

    def __post_init__(self):
        vals = tuple(self.values)
        if len(vals) != self.group.order:
            raise InvalidElementError(
                f"expected {self.group.order} values for grid {self.group.dims}, got {len(vals)}"
            )
        ctx = self.context
        for v in vals:
            if v.ctx.N != ctx.N:
                raise InvalidElementError("spectral values must live in Q(xi_N) with N = exp(G)")
        object.__setattr__(self, "values", vals)

    @property
    def context(self) -> CyclotomicContext:
        return get_context(self.group.exponent)

    @classmethod
    def from_mapping(cls, group: GroupSpec, mapping: Mapping[Sequence[int], CycNum]) -> SpecFn:
        ctx = get_context(group.exponent)
        vals = [ctx.zero] * group.order
        for x, v in mapping.items():
            vals[group.index(group.element(x))] = v if isinstance(v, CycNum) else ctx.rational(v)
        return cls(group, tuple(vals))

    def __call__(self, x) -> CycNum:
        return self.values[self.group.index(self.group.element(x))]

    def __eq__(self, other):
        if not isinstance(other, SpecFn):
            return NotImplemented
        return self.group.dims == other.group.dims and self.values == other.values

    def __hash__(self):
        return hash((self.group.dims, self.values))

    def __add__(self, other: SpecFn) -> SpecFn:
        return SpecFn(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def scaled(self, c) -> SpecFn:
        return SpecFn(self.group, tuple(v * c for v in self.values))

    def items(self) -> Iterable[tuple[GroupElement, CycNum]]:
        return zip(self.group.elements(), self.values)


def character(g: GroupSpec, x: GroupElement, y: GroupElement) -> CycNum:
    return get_context(g.exponent).root(g.pairing(g.element(x), g.element(y)))


def _transform_integer_rows(g: GroupSpec, rows: Sequence[Sequence[int]], sign: int):
    """Sum of ``character_sums`` over power-basis slices, returned lifted (length N)."""
    coords, weights = _grid_arrays(g)
    n = g.exponent
    total = None
    for j, column in enumerate(rows):
        if not any(column):
            continue
        arr = np.array(column, dtype=object)
        if max(abs(int(v)) for v in column) < (1 << 62) // max(g.order, 1):
            arr = arr.astype(np.int64)
        block = _kernels.character_sums(arr, coords, weights, n, sign)
        block = np.roll(np.asarray(block, dtype=object), j, axis=1)
        total = block if total is None else total + block
    if total is None:
        total = np.zeros((g.order, n), dtype=object)
    return total


def dft(f: RatFn) -> SpecFn:
    g = f.group
    ctx = get_context(g.exponent)
    den = f.denominator_lcm()
    lifted = _transform_integer_rows(g, [f.integer_values(den)], -1)
    return SpecFn(g, tuple(ctx.from_lifted([int(c) for c in row], den) for row in lifted))


def idft(F: SpecFn) -> list[CycNum]:
    """Inverse transform with values left in ``Q(xi_N)``, row-major order."""
    g = F.group
    ctx = F.context
    den = math.lcm(*(v.den for v in F.values)) if F.values else 1
    columns = [[0] * g.order for _ in range(ctx.degree)]
    for i, v in enumerate(F.values):
        mult = den // v.den
        for j, c in enumerate(v.num):
            if c:
                columns[j][i] = c * mult
    lifted = _transform_integer_rows(g, columns, 1)
    return [ctx.from_lifted([int(c) for c in row], den * g.order) for row in lifted]


def idft_rational(F: SpecFn) -> RatFn:
    vals = idft(F)
    for x, v in zip(F.group.elements(), vals):
        if not v.is_rational():
            raise NotRationalError(f"inverse transform is not rational at {x}: {v}")
    return RatFn(F.group, tuple(v.rational_value() for v in vals))


def rationality_check(F: SpecFn) -> bool:
    """True iff ``F(a x) == sigma_a(F(x))`` for every ``x`` and unit ``a``."""
    g = F.group
    units = F.context.units
    for x, v in F.items():
        for a in units:
            if a == 1:
                continue
            ax = tuple(a * c % m for c, m in zip(x, g.dims))
            if F(ax) != v.sigma(a):
                return False
    return True


def support(F: SpecFn) -> list[GroupElement]:
    return [x for x, v in F.items() if not v.is_zero()]
