"""Autocorrelations, their transforms, and the order-capped moment oracle."""

from __future__ import annotations

import itertools
import math
import random
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from . import _kernels
from .cyclotomic import CycNum, get_context
from .errors import InvalidElementError, OrderExceededError
from .groups import GroupElement, GroupSpec
from .spectral import RatFn, SpecFn, character, dft

__all__ = [
    "MomentOracle",
    "MomentTable",
    "ZeroSumSeq",
    "autocorr",
    "moment_table",
    "oracle_query",
    "prop1_identity_check",
    "transformed_moment",
    "zero_sum",
]


@dataclass(frozen=True)
class ZeroSumSeq:
    """Group elements summing to zero.

    The order is the number of nonzero entries, with the all-zero sequence
    counted as order 1 (it reveals exactly ``M_1``).
    """

    group: GroupSpec
    entries: tuple[GroupElement, ...]

    def __post_init__(self):
        g = self.group
        entries = tuple(g.element(x) for x in self.entries)
        total = g.zero
        for x in entries:
            total = tuple((p + q) % a for p, q, a in zip(total, x, g.dims))
        if any(total):
            raise InvalidElementError(f"sequence {entries} does not sum to zero")
        object.__setattr__(self, "entries", entries)

    @property
    def nonzero(self) -> tuple[GroupElement, ...]:
        return tuple(x for x in self.entries if any(x))

    @property
    def order(self) -> int:
        return max(1, len(self.nonzero))

    def key(self) -> tuple[GroupElement, ...]:
        """Canonical multiset key (zeros dropped, sorted)."""
        return tuple(sorted(self.nonzero))


def zero_sum(g: GroupSpec, entries: Iterable[Sequence[int]], close: bool = False) -> ZeroSumSeq:
    """Build a :class:`ZeroSumSeq`; with ``close=True`` the balancing entry is appended."""
    entries = [g.element(x) for x in entries]
    if close:
        total = g.zero
        for x in entries:
            total = tuple((p + q) % a for p, q, a in zip(total, x, g.dims))
        entries.append(tuple(-c % a for c, a in zip(total, g.dims)))
    return ZeroSumSeq(g, tuple(entries))


def _add(g: GroupSpec, x: GroupElement, y: GroupElement) -> GroupElement:
    return tuple((p + q) % a for p, q, a in zip(x, y, g.dims))


def autocorr(f: RatFn, shifts: Sequence[Sequence[int]]) -> Fraction:
    """``M_n(f; x_1..x_{n-1}) = sum_y f(y) f(y + x_1) ... f(y + x_{n-1})`` by brute force."""
    g = f.group
    shifts = [g.element(s) for s in shifts]
    total = Fraction(0)
    for y in g.elements():
        v = f(y)
        for s in shifts:
            if not v:
                break
            v *= f(_add(g, y, s))
        total += v
    return total


ShiftKey = tuple[GroupElement, ...]


@dataclass
class MomentTable:
    """Sparse autocorrelation tables ``M_1 .. M_K``; missing entries are zero."""

    group: GroupSpec
    max_order: int
    tables: dict[int, dict[ShiftKey, Fraction]] = field(default_factory=dict)

    def __post_init__(self):
        if self.max_order < 1:
            raise ValueError("a moment table needs max_order >= 1")
        for n in range(1, self.max_order + 1):
            self.tables.setdefault(n, {})
        self._hat_cache: dict = {}
        self._lock = threading.Lock()

    def value(self, shifts: Sequence[Sequence[int]]) -> Fraction:
        g = self.group
        key = tuple(g.element(s) for s in shifts)
        n = len(key) + 1
        if n > self.max_order:
            raise OrderExceededError(f"table holds orders up to {self.max_order}, asked for {n}")
        return self.tables[n].get(key, Fraction(0))

    def set(self, shifts: Sequence[Sequence[int]], value) -> None:
        g = self.group
        key = tuple(g.element(s) for s in shifts)
        n = len(key) + 1
        if n > self.max_order:
            raise OrderExceededError(f"table holds orders up to {self.max_order}, got order {n}")
        value = Fraction(value)
        if value:
            self.tables[n][key] = value
        else:
            self.tables[n].pop(key, None)
        self._hat_cache.clear()

    def denominator_lcm(self) -> int:
        return math.lcm(1, *(v.denominator for t in self.tables.values() for v in t.values()))

    def transformed(self, ys: Sequence[GroupElement]) -> CycNum:
        """``hat M_n(y_1..y_{n-1}) = sum_s M_n(s) prod_j conj(chi(s_j, y_j))`` with ``n = len(ys) + 1``."""
        g = self.group
        ys = tuple(g.element(y) for y in ys)
        n = len(ys) + 1
        if n > self.max_order:
            raise OrderExceededError(f"table holds orders up to {self.max_order}, asked for {n}")
        with self._lock:
            hit = self._hat_cache.get(ys)
        if hit is not None:
            return hit
        ctx = get_context(g.exponent)
        N = g.exponent
        table = self.tables[n]
        den = math.lcm(1, *(v.denominator for v in table.values()))
        lifted = [0] * N
        for shifts, v in table.items():
            t = -sum(g.pairing(s, y) for s, y in zip(shifts, ys)) % N
            lifted[t] += v.numerator * (den // v.denominator)
        out = ctx.from_lifted(lifted, den)
        with self._lock:
            self._hat_cache[ys] = out
        return out


def moment_table(f: RatFn, max_order: int) -> MomentTable:
    """Exact tables of orders ``1..max_order`` via the dense kernel."""
    g = f.group
    den = f.denominator_lcm()
    ints = np.array(f.integer_values(den), dtype=object)
    if max((abs(int(v)) for v in ints), default=0) < (1 << 31):
        ints = ints.astype(np.int64)
    elements = list(g.elements())
    add_table = np.array(
        [[g.index(_add(g, y, s)) for s in elements] for y in elements], dtype=np.int64
    )
    table = MomentTable(g, max_order)
    for n in range(1, max_order + 1):
        flat = _kernels.autocorr_table(ints, add_table, n)
        scale = den**n
        entries = table.tables[n]
        if n == 1:
            if flat[0]:
                entries[()] = Fraction(int(flat[0]), scale)
            continue
        for idx in np.nonzero(np.asarray(flat) != 0)[0]:
            rem = int(idx)
            key = []
            for _ in range(n - 1):
                rem, s = divmod(rem, g.order)
                key.append(elements[s])
            entries[tuple(reversed(key))] = Fraction(int(flat[idx]), scale)
    return table


Source = Union[RatFn, MomentTable, SpecFn]


def transformed_moment(source: Source, zs: ZeroSumSeq) -> CycNum:
    """Transformed moment of a zero-sum sequence.

    For functions this is the product of the transform over the nonzero
    entries.  For a table of order ``n = order(zs)`` it is the table's
    transform evaluated at the first ``n - 1`` nonzero entries.
    """
    nz = zs.nonzero
    if isinstance(source, MomentTable):
        if not nz:
            return get_context(source.group.exponent).rational(source.value(()))
        return source.transformed(nz[:-1])
    hat = dft(source) if isinstance(source, RatFn) else source
    if not nz:
        return hat(source.group.zero)
    out = hat(nz[0])
    for x in nz[1:]:
        out = out * hat(x)
    return out


class _QueryLog:
    """Running maximum of queried orders, safe to update from several threads."""

    def __init__(self):
        self._lock = threading.Lock()
        self.max_order = 0
        self.count = 0

    def record(self, order: int) -> None:
        with self._lock:
            self.count += 1
            if order > self.max_order:
                self.max_order = order


class MomentOracle:
    """Order-capped access to transformed moments of a hidden function.

    ``source`` may be a rational function (hidden-data mode), a moment table,
    or a transform given directly (used for non-rational test witnesses).
    ``cap=None`` means unlimited.  Views produced by :meth:`with_scale` share
    the query log with their parent.
    """

    def __init__(self, source: Source, cap: int | None = None, *, _log=None, _scale=1, _parent=None):
        self.source = source
        self.group: GroupSpec = source.group
        self.cap = cap
        self._log = _log or _QueryLog()
        self._scale = Fraction(_scale)
        self._parent = _parent
        self._cache: dict = {}
        self._cache_lock = threading.Lock()
        self._hat: SpecFn | None = None
        if _parent is None:
            if isinstance(source, RatFn):
                self._hat = dft(source)
            elif isinstance(source, SpecFn):
                self._hat = source

    @property
    def log(self) -> int:
        """Highest order queried so far (0 before any query)."""
        return self._log.max_order

    @property
    def query_count(self) -> int:
        return self._log.count

    @property
    def context(self):
        return get_context(self.group.exponent)

    def integer_scale(self) -> int:
        """A positive integer ``c`` such that ``c * f`` is integer-valued.

        Exact for rational sources.  For moment tables the lcm of all table
        denominators is used, which clears denominators in every case met in
        practice but is not a proof.
        """
        root = self._parent or self
        src = root.source
        if isinstance(src, RatFn):
            return src.denominator_lcm()
        if isinstance(src, MomentTable):
            return src.denominator_lcm()
        return 1

    def with_scale(self, c) -> MomentOracle:
        """A view answering for ``c * f`` and sharing this oracle's log and cap."""
        root = self._parent or self
        view = MomentOracle(self.source, self.cap, _log=self._log, _scale=self._scale * Fraction(c), _parent=root)
        return view

    def _raw(self, zs: ZeroSumSeq) -> CycNum:
        root = self._parent or self
        key = zs.key()
        with root._cache_lock:
            hit = root._cache.get(key)
        if hit is not None:
            return hit
        if root._hat is not None:
            hat = root._hat
            if not key:
                val = hat(self.group.zero)
            else:
                val = hat(key[0])
                for x in key[1:]:
                    val = val * hat(x)
        else:
            val = transformed_moment(root.source, ZeroSumSeq(self.group, key or (self.group.zero,)))
        with root._cache_lock:
            root._cache[key] = val
        return val

    def query(self, zs: ZeroSumSeq | Sequence[Sequence[int]]) -> CycNum:
        if not isinstance(zs, ZeroSumSeq):
            zs = ZeroSumSeq(self.group, tuple(zs))
        order = zs.order
        if self.cap is not None and order > self.cap:
            raise OrderExceededError(f"query of order {order} exceeds the cap {self.cap}")
        if isinstance(self.source, MomentTable) and order > self.source.max_order:
            raise OrderExceededError(
                f"query of order {order} exceeds the available table order {self.source.max_order}"
            )
        self._log.record(order)
        val = self._raw(zs)
        if self._scale != 1:
            val = val * self._scale**order
        return val


def oracle_query(o: MomentOracle, zs: ZeroSumSeq) -> CycNum:
    return o.query(zs)


def _convolve(g: GroupSpec, a: Sequence[CycNum], b: Sequence[CycNum], zero: CycNum) -> list[CycNum]:
    out = [zero] * g.order
    elements = list(g.elements())
    nz_b = [(j, v) for j, v in enumerate(b) if v]
    for i, u in enumerate(a):
        if not u:
            continue
        x = elements[i]
        for j, v in nz_b:
            k = g.index(_add(g, x, elements[j]))
            out[k] = out[k] + u * v
    return out


def prop1_identity_check(f: RatFn, n: int, trials: int, rng: random.Random | None = None) -> bool:
    """Check ``M_n`` against the zero-sum transform formula on random shift tuples.

    The right-hand side is ``|G|^-(n-1) * sum prod_j hat f(y_j) * prod_{j<n} chi(x_j, y_j)``
    over ``y_1 + ... + y_n = 0``, evaluated through iterated convolution.
    """
    if n < 2:
        raise ValueError("the identity is stated for n >= 2")
    rng = rng or random.Random(0)
    g = f.group
    hat = dft(f)
    ctx = hat.context
    elements = list(g.elements())
    for _ in range(trials):
        shifts = [rng.choice(elements) for _ in range(n - 1)]
        direct = autocorr(f, shifts)
        parts = [[hat.values[i] * character(g, s, y) for i, y in enumerate(elements)] for s in shifts]
        acc = parts[0]
        for p in parts[1:]:
            acc = _convolve(g, acc, p, ctx.zero)
        total = ctx.zero
        for i, z in enumerate(elements):
            if acc[i]:
                total = total + acc[i] * hat(tuple(-c for c in z))
        rhs = total * Fraction(1, g.order ** (n - 1))
        if rhs != direct:
            return False
    return True
