"""Finite abelian grids ``Z/a_1 x ... x Z/a_r`` and their subgroup machinery.

Elements are plain tuples of ints, always fully reduced (``0 <= x[k] < a_k``).
Subgroups are described by the Hermite normal form of their preimage lattice
in ``Z^r``, which makes membership a triangular reduction.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Iterator, Sequence

from ._intmat import (
    SnfDecomposition,
    hnf,
    hnf_with_transform,
    smith_normal_form,
    solve_left,
    xgcd,
)
from .errors import InvalidElementError, InvalidGroupError, NotGeneratingError, NotInSpanError

GroupElement = tuple[int, ...]

__all__ = [
    "GroupElement",
    "GroupSpec",
    "SnfDecomposition",
    "Subgroup",
    "add",
    "bezout",
    "element_order",
    "express_in_generators",
    "kernel_basis",
    "make_group",
    "member",
    "neg",
    "quotient_generators",
    "scale",
    "smith_normal_form",
    "subgroup_generated",
    "torsion_subgroup",
]


def _lcm(values: Iterable[int]) -> int:
    return reduce(math.lcm, values, 1)


@dataclass(frozen=True)
class GroupSpec:
    dims: tuple[int, ...]
    exponent: int = field(init=False)
    invariant_factors: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        dims = tuple(self.dims)
        if not dims:
            raise InvalidGroupError("a group needs at least one modulus")
        for a in dims:
            if isinstance(a, bool) or not isinstance(a, int) or a < 1:
                raise InvalidGroupError(f"moduli must be positive integers, got {a!r}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "exponent", _lcm(dims))
        diag = [[a if i == j else 0 for j in range(len(dims))] for i, a in enumerate(dims)]
        factors = tuple(d for d in smith_normal_form(diag).diagonal if d > 1)
        object.__setattr__(self, "invariant_factors", factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def ndim(self) -> int:
        return len(self.dims)

    @cached_property
    def order(self) -> int:
        return math.prod(self.dims)

    @property
    def zero(self) -> GroupElement:
        return (0,) * len(self.dims)

    def element(self, coords: Sequence[int] | int) -> GroupElement:
        """Normalize ``coords`` into a reduced element (ints are allowed for 1-D grids)."""
        if isinstance(coords, int):
            coords = (coords,)
        coords = tuple(coords)
        if len(coords) != len(self.dims):
            raise InvalidElementError(
                f"element {coords} has {len(coords)} coordinates, group has {len(self.dims)}"
            )
        try:
            return tuple(int(c) % a for c, a in zip(coords, self.dims))
        except (TypeError, ValueError) as exc:
            raise InvalidElementError(f"bad coordinates {coords!r}") from exc

    def unit_vector(self, k: int) -> GroupElement:
        return self.element(tuple(int(i == k) for i in range(len(self.dims))))

    def elements(self) -> Iterator[GroupElement]:
        """All elements in row-major (lexicographic) order."""
        return itertools.product(*(range(a) for a in self.dims))

    def index(self, x: GroupElement) -> int:
        i = 0
        for c, a in zip(x, self.dims):
            i = i * a + c
        return i

    def from_index(self, i: int) -> GroupElement:
        out = []
        for a in reversed(self.dims):
            i, c = divmod(i, a)
            out.append(c)
        return tuple(reversed(out))

    def pairing(self, x: GroupElement, y: GroupElement) -> int:
        """Exponent ``t`` with ``chi(x, y) = xi_N^t``."""
        n = self.exponent
        return sum((n // a) * p * q for a, p, q in zip(self.dims, x, y)) % n


def make_group(dims: Sequence[int]) -> GroupSpec:
    return GroupSpec(tuple(dims))


def _check(g: GroupSpec, x: Sequence[int]) -> GroupElement:
    if len(x) != len(g.dims):
        raise InvalidElementError(f"element {tuple(x)} does not belong to a grid of shape {g.dims}")
    return tuple(x)


def add(g: GroupSpec, x: GroupElement, y: GroupElement) -> GroupElement:
    _check(g, x)
    _check(g, y)
    return tuple((p + q) % a for p, q, a in zip(x, y, g.dims))


def neg(g: GroupSpec, x: GroupElement) -> GroupElement:
    _check(g, x)
    return tuple(-p % a for p, a in zip(x, g.dims))


def scale(g: GroupSpec, c: int, x: GroupElement) -> GroupElement:
    _check(g, x)
    return tuple(c * p % a for p, a in zip(x, g.dims))


def element_order(g: GroupSpec, x: GroupElement) -> int:
    return _lcm(a // math.gcd(a, p) for p, a in zip(x, g.dims))


@dataclass(frozen=True)
class Subgroup:
    parent: GroupSpec
    generators: tuple[GroupElement, ...]
    hnf_basis: tuple[tuple[int, ...], ...]

    def __contains__(self, x: GroupElement) -> bool:
        return member(self, x)

    @cached_property
    def order(self) -> int:
        return self.parent.order // math.prod(self.hnf_basis[i][i] for i in range(len(self.hnf_basis)))

    @cached_property
    def invariant_factors(self) -> tuple[int, ...]:
        # The subgroup is L / D with D = diag(dims) Z^r.  Writing D in the
        # basis of L gives a relation matrix whose SNF is the answer.
        h = self.hnf_basis
        r = len(h)
        rel = []
        for i, a in enumerate(self.parent.dims):
            target = [a if j == i else 0 for j in range(r)]
            rel.append(_solve_upper(h, target))
        return tuple(d for d in smith_normal_form(rel).diagonal if d > 1)

    @property
    def exponent(self) -> int:
        f = self.invariant_factors
        return f[-1] if f else 1

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def elements(self) -> list[GroupElement]:
        """Enumerate members (fine for the small grids this library targets)."""
        h = self.hnf_basis
        dims = self.parent.dims
        ranges = [range(h[i][i] and dims[i] // h[i][i]) for i in range(len(h))]
        out = set()
        for coeffs in itertools.product(*ranges):
            v = [0] * len(dims)
            for c, row in zip(coeffs, h):
                if c:
                    v = [p + c * q for p, q in zip(v, row)]
            out.add(tuple(p % a for p, a in zip(v, dims)))
        return sorted(out)


def _solve_upper(h: Sequence[Sequence[int]], target: Sequence[int]) -> list[int]:
    """Integer row vector ``y`` with ``y @ h == target`` for square upper-triangular ``h``."""
    r = len(h)
    rest = list(target)
    y = [0] * r
    for i in range(r):
        q, rem = divmod(rest[i], h[i][i])
        if rem:
            raise NotInSpanError("target is not in the lattice")
        y[i] = q
        if q:
            rest = [p - q * s for p, s in zip(rest, h[i])]
    return y


def _lattice_rows(g: GroupSpec, elems: Iterable[Sequence[int]]) -> list[list[int]]:
    rows = [list(e) for e in elems]
    r = len(g.dims)
    rows += [[a if i == j else 0 for j in range(r)] for i, a in enumerate(g.dims)]
    return rows


def subgroup_generated(g: GroupSpec, elems: Iterable[GroupElement]) -> Subgroup:
    gens = tuple(g.element(e) for e in elems)
    basis = hnf(_lattice_rows(g, gens))
    return Subgroup(g, gens, tuple(map(tuple, basis)))


def member(s: Subgroup, x: GroupElement) -> bool:
    x = _check(s.parent, x)
    try:
        _solve_upper(s.hnf_basis, x)
    except NotInSpanError:
        return False
    return True


def torsion_subgroup(g: GroupSpec, b: int) -> Subgroup:
    """Elements killed by ``b``."""
    if b < 1:
        raise InvalidElementError("torsion index must be positive")
    gens = []
    for k, a in enumerate(g.dims):
        v = [0] * len(g.dims)
        v[k] = a // math.gcd(a, b)
        gens.append(g.element(v))
    return subgroup_generated(g, gens)


def _join(g: GroupSpec, *parts: Iterable[GroupElement]) -> Subgroup:
    return subgroup_generated(g, itertools.chain(*parts))


def _prime_power_base(n: int) -> int | None:
    """The prime ``p`` if ``n`` is a nontrivial power of ``p``."""
    if n < 2:
        return None
    p = next(d for d in itertools.count(2) if n % d == 0)
    while n % p == 0:
        n //= p
    return p if n == 1 else None


def quotient_generators(
    g: GroupSpec,
    support: Sequence[GroupElement],
    h: Subgroup,
    target: Subgroup | None = None,
) -> list[GroupElement]:
    """Pick elements of ``support`` generating ``target`` (default: all of ``g``) modulo ``h``.

    When the quotient is a p-group the scan keeps an element only if it is
    new modulo the Frattini subgroup, which bounds the result by the rank.
    Otherwise it falls back to plain first-fit growth modulo ``h``.
    """
    support = [g.element(x) for x in support]
    if target is None:
        target_gens = [g.unit_vector(k) for k in range(len(g.dims))]
    else:
        target_gens = list(target.generators)
    full = _join(g, target_gens, h.generators)
    p = _prime_power_base(full.order // h.order)
    if full.order == h.order:
        return []
    frattini = (
        [tuple(p * c for c in t) for t in target_gens] if p is not None else []
    )
    chosen: list[GroupElement] = []
    current = _join(g, h.generators)
    screen = _join(g, h.generators, frattini)
    for x in support:
        if x in screen:
            continue
        chosen.append(x)
        current = _join(g, h.generators, chosen)
        if current.order == full.order:
            return chosen
        screen = _join(g, h.generators, frattini, chosen)
    raise NotGeneratingError("support does not generate the group modulo the given subgroup")


def _relation_rows(g: GroupSpec, gens: Sequence[GroupElement], h: Subgroup) -> list[list[int]]:
    return [list(x) for x in gens] + [list(r) for r in h.hnf_basis]


def express_in_generators(
    g: GroupSpec, x: GroupElement, gens: Sequence[GroupElement], h: Subgroup
) -> list[int]:
    """Integers ``c`` with ``x - sum(c_j * gens[j])`` in ``h``."""
    x = g.element(x)
    z = solve_left(_relation_rows(g, gens, h), list(x))
    if z is None:
        raise NotInSpanError(f"{x} is not in the span of {list(gens)} modulo the subgroup")
    coeffs = z[: len(gens)]
    return [c % element_order(g, e) for c, e in zip(coeffs, gens)]


def kernel_basis(g: GroupSpec, gens: Sequence[GroupElement], h: Subgroup) -> list[list[int]]:
    """HNF basis of ``{c : sum(c_j * gens[j]) in h}``."""
    k = len(gens)
    if k == 0:
        return []
    rows = _relation_rows(g, gens, h)
    mat, u = hnf_with_transform(rows)
    kernel = [u[i][:k] for i, row in enumerate(mat) if not any(row)]
    return hnf(kernel)


def bezout(b: Sequence[int]) -> list[int]:
    """Coefficients ``a`` with ``sum(a_i * b_i) == gcd(b)``."""
    if not b:
        raise InvalidElementError("bezout needs at least one integer")
    coeffs = [1] + [0] * (len(b) - 1)
    g = b[0]
    for i in range(1, len(b)):
        g, s, t = xgcd(g, b[i])
        coeffs = [s * c for c in coeffs]
        coeffs[i] = t
    if g < 0:
        coeffs = [-c for c in coeffs]
    return coeffs
