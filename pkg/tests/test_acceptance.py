"""Acceptance gate: ten end-to-end criteria, each printing one PASS/FAIL line.

Run under pytest, or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import load_crab, z7_table  # noqa: E402

from gridrecon import (  # noqa: E402
    MomentOracle,
    RatFn,
    SpecFn,
    agreement_order,
    dft,
    family_delta,
    family_divisor,
    family_sharp,
    family_threer,
    family_z6,
    get_context,
    make_group,
    reconstruct,
    verify_translation,
)
from gridrecon.moments import prop1_identity_check  # noqa: E402
from gridrecon.recon import moment_budget, power_even, power_odd  # noqa: E402
from gridrecon.spectral import rationality_check, support  # noqa: E402

GROUPS = [[5], [7], [9], [15], [3, 9], [6], [12], [2, 4], [6, 6], [30]]


class _Printer:
    def __init__(self, capsys=None):
        self.capsys = capsys

    def __call__(self, line: str) -> None:
        if self.capsys is None:
            print(line, flush=True)
        else:
            with self.capsys.disabled():
                print("\n" + line, flush=True)


@pytest.fixture
def report(capsys):
    return _Printer(capsys)


@contextmanager
def criterion(report, number: int, title: str):
    """Time the body, print one line, and re-raise on failure."""
    notes: list[str] = []
    start = time.perf_counter()
    try:
        yield notes
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        report(f"criterion {number:2d} FAIL  {title} [{elapsed:.2f}s] {type(exc).__name__}: {exc}")
        raise
    elapsed = time.perf_counter() - start
    extra = f" ({'; '.join(notes)})" if notes else ""
    report(f"criterion {number:2d} PASS  {title} [{elapsed:.2f}s]{extra}")


def _random_function(g, rng, lo=-3, hi=3):
    return RatFn.from_callable(g, lambda x: rng.randint(lo, hi))


# ---------------------------------------------------------------------------
def test_c01_z7_golden(report):
    with criterion(report, 1, "Z/7 from order <= 3 tables") as notes:
        t0 = time.perf_counter()
        o = MomentOracle(z7_table(), cap=3)
        g = reconstruct(o)
        elapsed = time.perf_counter() - t0
        target = RatFn(make_group([7]), tuple(Fraction(v) for v in (0, 0, 0, 1, 0, 1, 1)))
        y = verify_translation(target, g)
        notes.append(f"shift {y}, log {o.log}")
        assert y is not None
        assert o.log <= 3
        assert elapsed < 1.0, f"took {elapsed:.2f}s"


def test_c02_crab_golden(report):
    with criterion(report, 2, "13x13 crab, hidden oracle") as notes:
        crab = load_crab()
        t0 = time.perf_counter()
        o = MomentOracle(crab, cap=6)
        g = reconstruct(o)
        elapsed = time.perf_counter() - t0
        y = verify_translation(crab, g)
        notes.append(f"shift {y}, log {o.log}")
        assert y is not None
        assert o.log <= 6
        assert elapsed < 60.0


def test_c03_z6_conic_family(report):
    with criterion(report, 3, "Z/6 conic pair (7,0) vs (1,4)") as notes:
        t0 = time.perf_counter()
        f, g = family_z6(7, 0), family_z6(1, 4)
        res = agreement_order(f, g, 6)
        notes.append(f"agree through {res.agree_through}")
        assert res.agree_through == 5 and res.witness is not None and len(res.witness) == 6
        assert verify_translation(f, g) is None
        assert time.perf_counter() - t0 < 5.0


def test_c04_sharp_family(report):
    with criterion(report, 4, "sharpness pair (3,5,1) on Z/30") as notes:
        t0 = time.perf_counter()
        f, g = family_sharp(3, 5, 1)
        res = agreement_order(f, g, 6, budget=10**7)
        notes.append(f"agree through {res.agree_through}")
        assert res.agree_through == 5 and res.witness is not None
        assert verify_translation(f, g) is None
        assert time.perf_counter() - t0 < 120.0


def test_c05_threer_family(report):
    with criterion(report, 5, "order-3r pairs r=1,2") as notes:
        t0 = time.perf_counter()
        for r in (1, 2):
            f, g = family_threer(r)
            res = agreement_order(f, g, 3 * r)
            notes.append(f"r={r} agree through {res.agree_through}")
            assert res.agree_through == 3 * r
            assert verify_translation(f, g) is None
        assert time.perf_counter() - t0 < 120.0


def test_c06_roundtrip_within_budget(report):
    with criterion(report, 6, "random round trips within the order budget") as notes:
        t0 = time.perf_counter()
        rng = random.Random(20261016)
        count, worst = 0, 0
        for rep in range(20):
            for dims in GROUPS:
                g = make_group(dims)
                f = _random_function(g, rng)
                o = MomentOracle(f)
                h = reconstruct(o)
                budget = moment_budget(g.exponent, g.rank)
                assert verify_translation(f, h) is not None, f"{dims}: {f.values}"
                assert o.log <= budget, f"{dims}: log {o.log} > {budget}"
                worst = max(worst, o.log - budget)
                count += 1
        notes.append(f"{count} functions, max log - budget = {worst}")
        assert count >= 200
        assert time.perf_counter() - t0 < 600.0


def test_c07_power_identities(report):
    with criterion(report, 7, "power recovery equals direct exponentiation") as notes:
        rng = random.Random(7)
        checked = 0
        for dims in GROUPS:
            g = make_group(dims)
            f = _random_function(g, rng)
            hat = dft(f)
            o = MomentOracle(f)
            power = power_odd if g.exponent % 2 else power_even
            for x in support(hat):
                pd = power(o, x)
                assert pd.gamma == hat(x) ** pd.M, f"{dims} at {x}"
                checked += 1
        notes.append(f"{checked} support points")


def test_c08_galois_symmetry(report):
    with criterion(report, 8, "Galois symmetry of rational transforms") as notes:
        rng = random.Random(8)
        for i in range(100):
            g = make_group(GROUPS[i % len(GROUPS)])
            f = RatFn.from_callable(g, lambda x: Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
            assert rationality_check(dft(f))
        ctx = get_context(6)
        witness = SpecFn.from_mapping(make_group([6]), {(1,): ctx.root(1), (5,): ctx.root(1)})
        assert not rationality_check(witness)
        notes.append("100 rational transforms accepted, witness rejected")


def test_c09_moment_formula_equivalence(report):
    with criterion(report, 9, "direct moments equal the transform formula") as notes:
        rng = random.Random(9)
        small = [[5], [7], [9], [6], [12], [2, 4], [6, 6], [3, 9], [2, 3, 3]]
        trials = 0
        while trials < 100:
            dims = rng.choice(small)
            g = make_group(dims)
            assert g.order <= 36
            n = rng.randint(2, 4)
            f = RatFn.from_callable(g, lambda x: Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
            assert prop1_identity_check(f, n, 1, rng), f"{dims} n={n}"
            trials += 1
        notes.append(f"{trials} trials")


def test_c10_lower_bound_examples(report):
    with criterion(report, 10, "lower-bound examples") as notes:
        f, zero = family_delta(make_group([5]))
        res = agreement_order(f, zero, 4)
        assert res.agree_through == 4
        a, b = family_divisor(make_group([6, 6]), 3)
        res2 = agreement_order(a, b, 4)
        assert res2.agree_through == 4
        notes.append("delta(Z/5) vanishes through 4, divisor([6,6],3) agrees through 4")


if __name__ == "__main__":
    printer = _Printer()
    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_c"):
            try:
                fn(printer)
            except BaseException:
                failed += 1
    sys.exit(1 if failed else 0)
