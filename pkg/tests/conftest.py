from fractions import Fraction
from pathlib import Path

import pytest

from gridrecon import MomentTable, RatFn, make_group

DATA = Path(__file__).parent / "data"

Z7_PAIRS = ({1, 5}, {2, 3}, {4, 6})


def z7_m3(x: int, y: int) -> int:
    if x == y == 0:
        return 3
    if (x == 0) != (y == 0):
        return 1
    if x == y or {x, y} in Z7_PAIRS:
        return 1
    return 0


def z7_table() -> MomentTable:
    """The order <= 3 tables of the indicator of {3, 5, 6} on Z/7, written out by hand."""
    g = make_group([7])
    t = MomentTable(g, 3)
    t.set([], 3)
    for x in range(7):
        t.set([(x,)], 3 if x == 0 else 1)
        for y in range(7):
            t.set([(x,), (y,)], z7_m3(x, y))
    return t


def load_crab() -> RatFn:
    rows = [[int(v) for v in line.split()] for line in (DATA / "crab.txt").read_text().splitlines() if line.strip()]
    g = make_group([len(rows), len(rows[0])])
    return RatFn(g, tuple(Fraction(v) for row in rows for v in row))


@pytest.fixture
def z7_tables():
    return z7_table()


@pytest.fixture
def z7_f():
    g = make_group([7])
    return RatFn.from_mapping(g, {(3,): 1, (5,): 1, (6,): 1})


@pytest.fixture(scope="session")
def crab():
    return load_crab()
