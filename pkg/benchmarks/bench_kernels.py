"""Compare the numba and numpy implementations of the integer kernels.

Run with ``python3 benchmarks/bench_kernels.py``.  Both backends are checked
for identical output before timing.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from gridrecon import _kernels
from gridrecon.groups import make_group
from gridrecon.spectral import _grid_arrays


def _best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _add_table(g):
    elements = list(g.elements())
    return np.array(
        [[g.index(tuple((p + q) % a for p, q, a in zip(y, s, g.dims))) for s in elements] for y in elements],
        dtype=np.int64,
    )


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba backend unavailable (unset GRIDRECON_NO_NUMBA to compare)")
    rng = np.random.default_rng(0)
    print(f"backend check: numba={_kernels.HAVE_NUMBA}")
    print(f"{'kernel':<14}{'grid':<12}{'numpy s':>10}{'numba s':>10}{'speedup':>9}")
    for dims in ([30], [13, 13], [6, 6, 6], [31, 31]):
        g = make_group(dims)
        coords, weights = _grid_arrays(g)
        f = rng.integers(-3, 4, size=g.order).astype(np.int64)
        n = g.exponent
        ref = _kernels._char_sums_numpy(f, coords, weights, n, -1)
        _kernels._char_sums_numba(f, coords, weights, n, -1)  # compile
        assert np.array_equal(ref, _kernels._char_sums_numba(f, coords, weights, n, -1))
        t_np = _best_of(lambda: _kernels._char_sums_numpy(f, coords, weights, n, -1), args.repeat)
        t_nb = _best_of(lambda: _kernels._char_sums_numba(f, coords, weights, n, -1), args.repeat)
        print(f"{'char_sums':<14}{str(dims):<12}{t_np:>10.4f}{t_nb:>10.4f}{t_np / t_nb:>8.1f}x")
    for dims, order, density in (([13, 13], 3, 1.0), ([13, 13], 3, 0.25), ([6, 6], 4, 1.0),
                                 ([6, 6], 4, 0.25), ([30], 4, 1.0)):
        g = make_group(dims)
        f = rng.integers(-3, 4, size=g.order).astype(np.int64)
        f[rng.random(g.order) >= density] = 0
        table = _add_table(g)
        ref = _kernels._autocorr_numpy(f, table, order)
        assert np.array_equal(ref, _kernels._autocorr_numba(f, table, order))
        t_np = _best_of(lambda: _kernels._autocorr_numpy(f, table, order), args.repeat)
        t_nb = _best_of(lambda: _kernels._autocorr_numba(f, table, order), args.repeat)
        label = f"M{order} d={density:g}"
        print(f"{label:<14}{str(dims):<12}{t_np:>10.4f}{t_nb:>10.4f}{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
