"""Reconstruction of rational data, up to translation, from transformed moments.

Pipeline: support detection (order 2) -> power recovery -> root extraction ->
per-prime generator selection -> kernel relations -> remodulation ->
assembly -> inverse transform.  The hidden function is only ever seen
through a :class:`~gridrecon.moments.MomentOracle`.
"""

from __future__ import annotations

import logging
import math
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath
from sympy.ntheory import factorint, n_order
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from ._intmat import solve_left
from .cyclotomic import CycNum, as_root_of_unity, cyclotomic_poly, get_context, numeric_embedding
from .errors import (
    ContradictionError,
    InternalInconsistencyError,
    InvalidParameterError,
    RootRecoveryError,
)
from .groups import (
    GroupElement,
    GroupSpec,
    Subgroup,
    bezout,
    express_in_generators,
    kernel_basis,
    quotient_generators,
    subgroup_generated,
    torsion_subgroup,
)
from .moments import MomentOracle, ZeroSumSeq
from .spectral import RatFn, SpecFn, idft_rational

log = logging.getLogger(__name__)

__all__ = [
    "AlignmentData",
    "PowerDatum",
    "ReconConfig",
    "ReconReport",
    "UnitalDecomposition",
    "assemble",
    "extract_root",
    "kernel_relation_value",
    "moment_budget",
    "power_even",
    "power_odd",
    "power_odd_partials",
    "reconstruct",
    "reconstruct_with_report",
    "solve_remodulation",
    "unital_decomposition",
    "verify_translation",
]

PRECISION_ENV = "GRIDRECON_PRECISION"


# ----------------------------------------------------------------- data types
@dataclass(frozen=True)
class UnitalDecomposition:
    c: int
    u: int
    v: int
    w: int
    N: int

    def terms(self) -> list[int]:
        """Nonzero summands (``w`` is omitted when it is zero)."""
        return [t for t in (self.u, self.v, self.w) if t]


@dataclass(frozen=True)
class PowerDatum:
    x: GroupElement
    M: int
    gamma: CycNum


@dataclass(frozen=True)
class ReconConfig:
    """Knobs for root recovery.

    ``precision_schedule`` lists embedding precisions in bits, tried in order.
    ``height_bound`` overrides the coefficient bound derived from the data.
    ``max_candidates`` caps the number of root-of-unity corrections tried.
    """

    precision_schedule: tuple[int, ...] = (256, 512, 1024, 2048)
    height_bound: int | None = None
    max_candidates: int = 200_000

    def __post_init__(self):
        if not self.precision_schedule or any(p < 64 for p in self.precision_schedule):
            raise InvalidParameterError("precisions must be at least 64 bits")
        if self.max_candidates < 1:
            raise InvalidParameterError("max_candidates must be positive")
        if self.height_bound is not None and self.height_bound < 1:
            raise InvalidParameterError("height_bound must be positive")

    @classmethod
    def from_env(cls) -> ReconConfig:
        raw = os.environ.get(PRECISION_ENV, "").strip()
        if not raw:
            return cls()
        try:
            schedule = tuple(int(p) for p in raw.replace(",", " ").split())
        except ValueError as exc:
            raise InvalidParameterError(f"{PRECISION_ENV} must list integers, got {raw!r}") from exc
        return cls(precision_schedule=schedule)


@dataclass
class AlignmentData:
    """Everything the assembly step needs, grouped per prime ``p_k`` of ``exp(S)``."""

    group: GroupSpec
    subgroup: Subgroup
    exponent: int
    primes: list[int]
    multiplicities: list[int]
    b: list[int]
    a: list[int]
    torsion: list[Subgroup]
    generators: list[list[GroupElement]]
    kernels: list[list[list[int]]]
    betas: dict[GroupElement, CycNum]
    powers: dict[GroupElement, PowerDatum]
    phases: list[list[int]] = field(default_factory=list)
    alphas: list[list[CycNum]] = field(default_factory=list)


@dataclass
class ReconReport:
    max_order: int
    budget: int
    cap: int | None
    queries: int
    rank: int
    exponent: int
    support_size: int
    scale: int
    generators: list[list[GroupElement]]
    exponents: dict[GroupElement, int]
    seconds: float

    def as_dict(self) -> dict:
        return {
            "max_order_queried": self.max_order,
            "budget": self.budget,
            "cap": self.cap,
            "queries": self.queries,
            "support_rank": self.rank,
            "support_exponent": self.exponent,
            "support_size": self.support_size,
            "integer_scale": self.scale,
            "generators": [[list(x) for x in gens] for gens in self.generators],
            "power_exponents": [{"x": list(x), "M": m} for x, m in sorted(self.exponents.items())],
            "seconds": round(self.seconds, 3),
        }


# ------------------------------------------------------------------- helpers
def _units(n: int) -> list[int]:
    return [a for a in range(n) if math.gcd(a, n) == 1]


def unital_decomposition(c: int, N: int) -> UnitalDecomposition:
    """Write ``c`` as a sum of two units (three for even ``N`` and odd ``c``)."""
    if N < 1:
        raise InvalidParameterError("modulus must be positive")
    c %= N
    if N == 1:
        return UnitalDecomposition(0, 0, 0, 0, 1)
    units = _units(N)
    unit_set = set(units)
    if N % 2 or c % 2 == 0:
        for u in units:
            v = (c - u) % N
            if v in unit_set:
                return UnitalDecomposition(c, u, v, 0, N)
    else:
        for u in units:
            for v in units:
                w = (c - u - v) % N
                if w in unit_set:
                    return UnitalDecomposition(c, u, v, w, N)
    raise InternalInconsistencyError(f"no unital decomposition of {c} modulo {N}")  # pragma: no cover


def _lift_unit(a: int, ns: int, n: int) -> int:
    """A unit modulo ``n`` congruent to the unit ``a`` modulo ``ns`` (``ns | n``)."""
    a %= ns
    for k in range(n // ns):
        cand = a + k * ns
        if math.gcd(cand, n) == 1:
            return cand
    raise InternalInconsistencyError(f"{a} has no unit lift from Z/{ns} to Z/{n}")  # pragma: no cover


def _scale(g: GroupSpec, c: int, x: GroupElement) -> GroupElement:
    return tuple(c * p % a for p, a in zip(x, g.dims))


def _two_adic(n: int) -> tuple[int, int]:
    m = (n & -n).bit_length() - 1
    return m, n >> m


def _order_of_two(q: int) -> int:
    return 1 if q == 1 else int(n_order(2, q))


def moment_budget(N: int, r: int) -> int:
    """Highest order the reconstruction may query: ``2r+2`` (odd N) or ``3r+3`` (even N)."""
    return 2 * r + 2 if N % 2 else 3 * r + 3


def _query(o: MomentOracle, entries) -> CycNum:
    return o.query(ZeroSumSeq(o.group, tuple(entries)))


# ------------------------------------------------------------- power recovery
def power_odd_partials(o: MomentOracle, x: GroupElement, n: int | None = None) -> list[CycNum]:
    """Successive products ``hat f(x)^(2^(k+1)) / hat f(2^(k+1) x)`` for ``k = 0..l-1``."""
    g = o.group
    n = n or g.exponent
    if n % 2 == 0:
        raise InvalidParameterError("odd-exponent power recovery needs an odd exponent")
    x = g.element(x)
    ell = _order_of_two(n)
    partials = []
    acc = None
    for k in range(ell):
        y = _scale(g, 2**k, x)
        y2 = _scale(g, 2 ** (k + 1), x)
        neg2 = _scale(g, -1, y2)
        num = _query(o, (y, y, neg2))
        den = _query(o, (y2, neg2))
        if den.is_zero():
            raise ContradictionError(f"transformed moment vanished at {y2}; {x} is not in the support")
        ratio = num / den
        acc = ratio if acc is None else acc * acc * ratio
        partials.append(acc)
    return partials


def power_odd(o: MomentOracle, x: GroupElement, n: int | None = None) -> PowerDatum:
    """``hat f(x)^(2^l - 1)`` with ``l`` the order of 2 modulo the (odd) exponent."""
    g = o.group
    n = n or g.exponent
    if n % 2 == 0:
        raise InvalidParameterError("odd-exponent power recovery needs an odd exponent")
    x = g.element(x)
    M = 2 ** _order_of_two(n) - 1
    if not any(x):
        return PowerDatum(x, M, _query(o, (x,)) ** M)
    return PowerDatum(x, M, power_odd_partials(o, x, n)[-1])


def power_even(o: MomentOracle, x: GroupElement, n: int | None = None) -> PowerDatum:
    """``hat f(x)^(2^m (2^l - 1))`` for even exponent ``2^m * q`` and ``l`` the order of 2 mod ``q``."""
    g = o.group
    n = n or g.exponent
    if n % 2:
        raise InvalidParameterError("even-exponent power recovery needs an even exponent")
    x = g.element(x)
    m, q = _two_adic(n)
    ell = _order_of_two(q)
    M = 2**m * (2**ell - 1)
    if not any(x):
        return PowerDatum(x, M, _query(o, (x,)) ** M)
    top = ell + m
    dec = {k: unital_decomposition(2**k, n) for k in range(1, top + 1)}

    def pair(k):
        d = dec[k]
        return _scale(g, d.u, x), _scale(g, d.v, x)

    def a_term(k):
        ux, vx = pair(k)
        return _query(o, (ux, vx, _scale(g, -1, ux), _scale(g, -1, vx)))

    def ratio(k):
        ux, vx = pair(k)
        ux1, vx1 = pair(k + 1)
        num = _query(o, (ux, vx, ux, vx, _scale(g, -1, ux1), _scale(g, -1, vx1)))
        den = a_term(k + 1)
        if den.is_zero():
            raise ContradictionError(f"transformed moment vanished near {x}; not in the support")
        return num / den

    ratios = {k: ratio(k) for k in range(1, top)}

    def telescope(upper):
        acc = get_context(g.exponent).one
        for k in range(1, upper):
            acc = acc * acc * ratios[k]
        return acc

    gamma = telescope(top) / telescope(m)
    return PowerDatum(x, M, gamma)


def _power(o: MomentOracle, x: GroupElement, n: int) -> PowerDatum:
    return power_odd(o, x, n) if n % 2 else power_even(o, x, n)


# ------------------------------------------------------------ root extraction
def _subfield_reduction_max(ns: int) -> int:
    """Largest coefficient of ``x^j mod Phi_ns`` over ``j < ns``."""
    return max((abs(c) for row in get_context(ns).red for c in row), default=1)


class _RootLattice:
    """LLL-reduced lattice for rounding complex numbers into ``Z[xi_ns]``."""

    def __init__(self, ns: int, bits: int):
        self.ns = ns
        self.d = len(cyclotomic_poly(ns)) - 1
        self.bits = bits
        self.prec = bits + 64
        d = self.d
        scale = 2 ** max(bits - 64, 16)
        self.scale = scale
        with mpmath.workprec(self.prec):
            omegas = [mpmath.expjpi(mpmath.mpf(2 * i) / ns) for i in range(d)]
            rows = []
            for i, w in enumerate(omegas):
                rows.append(
                    [int(i == j) for j in range(d)]
                    + [int(mpmath.nint(w.real * scale)), int(mpmath.nint(w.imag * scale))]
                )
        reduced = DomainMatrix([[ZZ(v) for v in r] for r in rows], (d, d + 2), ZZ).lll()
        self.basis = [[int(v) for v in r] for r in reduced.to_list()]
        with mpmath.workprec(self.prec):
            self.omegas = omegas
            gs = []
            norms = []
            for row in self.basis:
                v = [mpmath.mpf(c) for c in row]
                for b, nb in zip(gs, norms):
                    mu = mpmath.fdot(v, b) / nb
                    v = [p - mu * q for p, q in zip(v, b)]
                gs.append(v)
                norms.append(mpmath.fdot(v, v))
            self.gs = gs
            self.gs_norms = norms

    def nearest(self, z) -> list[int]:
        """Coefficients ``c`` with ``sum c_i xi_ns^i`` close to ``z`` (Babai nearest plane)."""
        d = self.d
        with mpmath.workprec(self.prec):
            t = [mpmath.mpf(0)] * d + [z.real * self.scale, z.imag * self.scale]
            coeffs = [0] * (d + 2)
            for i in range(d - 1, -1, -1):
                k = int(mpmath.nint(mpmath.fdot(t, self.gs[i]) / self.gs_norms[i]))
                if k:
                    row = self.basis[i]
                    t = [p - k * q for p, q in zip(t, row)]
                    coeffs = [p + k * q for p, q in zip(coeffs, row)]
        return coeffs[:d]

    def evaluate(self, coeffs: Sequence[int]):
        with mpmath.workprec(self.prec):
            return mpmath.fsum(c * w for c, w in zip(coeffs, self.omegas) if c)


@lru_cache(maxsize=32)
def _root_lattice(ns: int, bits: int) -> _RootLattice:
    return _RootLattice(ns, bits)


def _embed_in_subfield(ctx_n: int, ns: int, coeffs: Sequence[int]) -> CycNum:
    ctx = get_context(ctx_n)
    step = ctx_n // ns
    lifted = [0] * ctx_n
    for i, c in enumerate(coeffs):
        lifted[(i * step) % ctx_n] += c
    return ctx.from_lifted(lifted)


def extract_root(
    pd: PowerDatum,
    cfg: ReconConfig | None = None,
    *,
    subfield: int | None = None,
    height_bound: int | None = None,
) -> CycNum:
    """An exact ``beta`` in ``Z[xi]`` with ``beta**M == gamma``.

    ``subfield`` is the conductor ``n_s | N`` of a subfield known to contain
    the root (defaults to ``N``).  Candidates are the principal numeric root
    times each ``M``-th root of unity modulo the ``n_s``-th roots; each one is
    rounded into the ring of integers with Babai's algorithm and the survivor
    is checked exactly.
    """
    cfg = cfg or ReconConfig()
    gamma = pd.gamma
    ctx = gamma.ctx
    N = ctx.N
    ns = subfield or N
    M = pd.M
    if gamma.is_zero():
        raise ContradictionError(f"power datum at {pd.x} vanishes")
    if gamma == 1:
        return ctx.one
    if M % ns:
        raise InvalidParameterError(f"exponent {M} is not a multiple of {ns}")
    count = M // ns
    if count > cfg.max_candidates:
        raise RootRecoveryError(f"{count} root candidates exceed the configured maximum")
    bound = cfg.height_bound or height_bound
    for bits in cfg.precision_schedule:
        lattice = _root_lattice(ns, bits)
        work = bits + 32
        value = numeric_embedding(gamma, work)
        with mpmath.workprec(work + 32):
            if value == 0:
                raise ContradictionError("power datum embeds to zero")
            principal = mpmath.exp(mpmath.log(value) / M)
            tol = mpmath.mpf(2) ** (-(bits // 2)) * max(abs(principal), 1)
            twist = mpmath.expjpi(mpmath.mpf(2) / M)
            cand = principal
            for _ in range(count):
                coeffs = lattice.nearest(cand)
                if bound is None or max(abs(c) for c in coeffs) <= bound:
                    if abs(lattice.evaluate(coeffs) - cand) < tol:
                        beta = _embed_in_subfield(N, ns, coeffs)
                        if beta**M == gamma:
                            return beta
                cand *= twist
        log.debug("root extraction at %s failed with %d bits, escalating", pd.x, bits)
    raise RootRecoveryError(
        f"no exact {M}-th root found at {pd.x} within precisions {cfg.precision_schedule}"
    )


# ------------------------------------------------------------- phase alignment
def _root_exponent(z: CycNum, ns: int) -> int:
    t = as_root_of_unity(z)
    step = z.ctx.N // ns
    if t is None or t % step:
        raise InternalInconsistencyError(f"expected an {ns}-th root of unity, got {z}")
    return (t // step) % ns


def _generator_terms(
    g: GroupSpec, ns: int, coeff: int, x: GroupElement
) -> list[tuple[int, GroupElement]]:
    """Multiples ``(e, e x)`` whose exponents are units summing to ``coeff`` mod ``ns``."""
    e = coeff % ns
    if e == 0:
        return []
    if math.gcd(e, ns) == 1:
        parts = [e]
    else:
        parts = unital_decomposition(e, ns).terms()
    return [(p, _scale(g, p, x)) for p in parts]


def _sigma_product(terms: Sequence[tuple[int, CycNum]], ns: int, n: int, one: CycNum) -> CycNum:
    acc = one
    for e, z in terms:
        acc = acc * z.sigma(_lift_unit(e, ns, n))
    return acc


def kernel_relation_value(
    o: MomentOracle,
    gens: Sequence[GroupElement],
    betas: Sequence[CycNum],
    b: int,
    c: Sequence[int],
    ns: int | None = None,
) -> CycNum:
    """``prod_j (hat f(x_j) / beta_j)^(b c_j)`` for a kernel vector ``c``, from one moment query.

    The result is a root of unity of order dividing ``ns``.
    """
    g = o.group
    N = g.exponent
    ns = ns or N
    ctx = get_context(N)
    seq: list[GroupElement] = []
    divisors: list[tuple[int, CycNum]] = []
    for x, beta, cj in zip(gens, betas, c):
        inv = None
        for e, ex in _generator_terms(g, ns, b * cj, x):
            seq.append(ex)
            inv = inv or beta.inverse()
            divisors.append((e, inv))
    if not seq:
        return ctx.one
    value = _query(o, seq) * _sigma_product(divisors, ns, N, ctx.one)
    _root_exponent(value, ns)
    return value


def solve_remodulation(
    kernel: Sequence[Sequence[int]],
    exponents: Sequence[int],
    b: int,
    N: int,
) -> list[int]:
    """Smallest-residue solution ``t`` of ``sum_j b c_j t_j = s_i (mod N)`` for every kernel row."""
    if not kernel:
        return []
    r = len(kernel[0])
    neq = len(kernel)
    # unknowns (t_1..t_r, y_1..y_neq) with sum_j (b c_ij) t_j + N y_i = s_i
    rows = [[b * kernel[i][j] for i in range(neq)] for j in range(r)]
    rows += [[N if i == k else 0 for i in range(neq)] for k in range(neq)]
    z = solve_left(rows, [s % N for s in exponents])
    if z is None:
        raise InternalInconsistencyError("remodulation system has no solution")
    return [t % N for t in z[:r]]


# ------------------------------------------------------------------- assembly
def _beta_for(align: AlignmentData, x: GroupElement) -> CycNum:
    beta = align.betas.get(x)
    if beta is None:
        raise InternalInconsistencyError(f"no recovered root for {x}")
    return beta


def assemble(
    o: MomentOracle,
    align: AlignmentData,
    expansions: dict | None = None,
    points: Sequence[GroupElement] | None = None,
) -> SpecFn:
    """Build a transform ``hat g`` that equals ``hat f`` times a character.

    ``expansions`` optionally maps ``(k, x)`` to coefficient vectors to use in
    place of :func:`~gridrecon.groups.express_in_generators`, which lets tests
    confirm the result does not depend on the chosen expansion.
    """
    g = o.group
    N = g.exponent
    ns = align.exponent
    ctx = get_context(N)
    m1 = _query(o, (g.zero,))
    values = {g.zero: m1} if not m1.is_zero() else {}
    single = len(align.primes) == 1
    inv_alpha = [[a.inverse() for a in row] for row in align.alphas]
    if points is None:
        points = _support_from_oracle(o)
    for x in points:
        if not any(x):
            continue
        expansion = [
            (expansions or {}).get((k, x))
            or express_in_generators(g, x, align.generators[k], align.torsion[k])
            for k in range(len(align.primes))
        ]
        if single:
            gens = align.generators[0]
            seq = [_scale(g, -1, x)]
            divisors = []
            for j, (xj, cj) in enumerate(zip(gens, expansion[0])):
                for e, ex in _generator_terms(g, ns, cj, xj):
                    seq.append(ex)
                    divisors.append((e, inv_alpha[0][j]))
            raw = _query(o, seq) * _sigma_product(divisors, ns, N, ctx.one)
            if raw.is_zero():
                raise ContradictionError(f"assembly moment vanished at {x}")
            values[x] = raw.conj()
            continue
        beta = _beta_for(align, x)
        inv_beta = beta.inverse()
        shift = 0
        for k in range(len(align.primes)):
            dec = unital_decomposition(align.b[k], ns)
            seq = [_scale(g, -t, x) for t in dec.terms()]
            divisors = []
            for j, (xj, cj) in enumerate(zip(align.generators[k], expansion[k])):
                for e, ex in _generator_terms(g, ns, align.b[k] * cj, xj):
                    seq.append(ex)
                    divisors.append((e, inv_alpha[k][j]))
            raw = _query(o, seq) * _sigma_product(divisors, ns, N, ctx.one)
            if raw.is_zero():
                raise ContradictionError(f"assembly moment vanished at {x}")
            rho = raw.conj() * _sigma_product([(t, inv_beta) for t in dec.terms()], ns, N, ctx.one)
            shift += align.a[k] * _root_exponent(rho, ns)
        values[x] = beta.mul_root((shift % ns) * (N // ns))
    return SpecFn.from_mapping(g, values)


# -------------------------------------------------------------------- driver
def _support_from_oracle(o: MomentOracle) -> list[GroupElement]:
    g = o.group
    out = []
    for x in g.elements():
        if any(x) and not _query(o, (x, _scale(g, -1, x))).is_zero():
            out.append(x)
    return out


def _unit_orbit_reps(g: GroupSpec, points: Sequence[GroupElement], ns: int) -> dict:
    """Map each point to ``(representative, a)`` with ``point = a * representative``."""
    out: dict[GroupElement, tuple[GroupElement, int]] = {}
    units = _units(ns)
    for x in points:
        if x in out:
            continue
        for a in units:
            out.setdefault(_scale(g, a, x), (x, a))
    return out


def _align(o: MomentOracle, support: list[GroupElement], cfg: ReconConfig, sum_sq: Fraction) -> AlignmentData:
    g = o.group
    N = g.exponent
    S = subgroup_generated(g, support)
    ns = S.exponent
    fac = sorted(factorint(ns).items())
    primes = [p for p, _ in fac]
    mults = [m for _, m in fac]
    b = [ns // p**m for p, m in fac]
    a = bezout(b)
    torsion = [torsion_subgroup(g, bk) for bk in b]
    gens = [quotient_generators(g, support, h, target=S) for h in torsion]
    kernels = [kernel_basis(g, gk, h) for gk, h in zip(gens, torsion)]
    # integer coefficients of hat f in Z[xi_ns] are at most sum |f| <= sqrt(|G| sum f^2)
    l1 = math.isqrt(math.ceil(sum_sq * g.order)) + 1
    height = l1 * _subfield_reduction_max(ns)

    powers: dict[GroupElement, PowerDatum] = {}
    betas: dict[GroupElement, CycNum] = {}

    def recover(x):
        if x not in betas:
            pd = _power(o, x, ns)
            powers[x] = pd
            betas[x] = extract_root(pd, cfg, subfield=ns, height_bound=height)
        return betas[x]

    for gk in gens:
        for x in gk:
            recover(x)
    if len(primes) > 1:
        for x, (rep, unit) in _unit_orbit_reps(g, support, ns).items():
            if x not in betas:
                betas[x] = recover(rep).sigma(_lift_unit(unit, ns, N))

    align = AlignmentData(g, S, ns, primes, mults, b, a, torsion, gens, kernels, betas, powers)
    for k in range(len(primes)):
        bs = [betas[x] for x in gens[k]]
        rel = [
            _root_exponent(kernel_relation_value(o, gens[k], bs, b[k], c, ns), ns)
            for c in kernels[k]
        ]
        t = solve_remodulation(kernels[k], rel, b[k], ns) if kernels[k] else [0] * len(gens[k])
        align.phases.append(t)
        align.alphas.append([beta.mul_root(tj * (N // ns)) for beta, tj in zip(bs, t)])
    return align


def reconstruct_with_report(o: MomentOracle, cfg: ReconConfig | None = None) -> tuple[RatFn, ReconReport]:
    cfg = cfg or ReconConfig.from_env()
    start = time.perf_counter()
    g = o.group
    scale = o.integer_scale()
    q = o.with_scale(scale) if scale != 1 else o
    m1 = _query(q, (g.zero,))
    support = []
    sq_total = m1 * m1
    for x in g.elements():
        if not any(x):
            continue
        v = _query(q, (x, _scale(g, -1, x)))
        if not v.is_zero():
            support.append(x)
            sq_total = sq_total + v
    if not support:
        hat = SpecFn.from_mapping(g, {g.zero: m1} if m1 else {})
        align = None
    else:
        sum_sq = sq_total.rational_value() / g.order
        align = _align(q, support, cfg, sum_sq)
        hat = assemble(q, align, points=support)
    result = idft_rational(hat)
    if scale != 1:
        result = result.scaled(Fraction(1, scale))
    rank = align.subgroup.rank if align else 0
    report = ReconReport(
        max_order=o.log,
        budget=moment_budget(g.exponent, rank),
        cap=o.cap,
        queries=o.query_count,
        rank=rank,
        exponent=align.exponent if align else 1,
        support_size=len(support),
        scale=scale,
        generators=align.generators if align else [],
        exponents={x: pd.M for x, pd in align.powers.items()} if align else {},
        seconds=time.perf_counter() - start,
    )
    return result, report


def reconstruct(o: MomentOracle, cfg: ReconConfig | None = None) -> RatFn:
    """A rational function with the same autocorrelations as the hidden one, up to translation."""
    return reconstruct_with_report(o, cfg)[0]


def verify_translation(f: RatFn, g: RatFn) -> GroupElement | None:
    """Some ``y`` with ``g(x) == f(x + y)`` for all ``x``, else ``None``."""
    if f.group.dims != g.group.dims:
        return None
    grp = f.group
    target = g.values
    for y in grp.elements():
        if f.shifted(y).values == target:
            return y
    return None
