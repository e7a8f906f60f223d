"""Integer hot loops: character sums for the DFT and dense autocorrelation tables.

Both kernels have a numba implementation and a pure numpy one.  Set
``GRIDRECON_NO_NUMBA=1`` to force the numpy path.  Small inputs also take the
numpy path, since there the one-off JIT compile would dominate.  Inputs whose
sums could overflow int64 are routed to an exact object-dtype path regardless.
"""

from __future__ import annotations

import os

import numpy as np

_INT64_SAFE = 1 << 62
# below this many inner-loop steps numpy beats numba's first-call compile
SMALL_WORK = 1 << 18

try:  # pragma: no cover - exercised implicitly when numba is present
    if os.environ.get("GRIDRECON_NO_NUMBA", "").strip() not in ("", "0"):
        raise ImportError("numba disabled by GRIDRECON_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------- character sums
def _char_sums_numpy(fvals, coords, weights, n, sign):
    size = len(fvals)
    dtype = fvals.dtype
    out = np.zeros((size, n), dtype=dtype)
    scaled = coords * weights
    nz = np.nonzero(fvals)[0]
    if len(nz) == 0:
        return out
    fnz = fvals[nz]
    cnz = coords[nz]
    chunk = max(1, 4_000_000 // max(len(nz), 1))
    for start in range(0, size, chunk):
        stop = min(size, start + chunk)
        pair = (scaled[start:stop] @ cnz.T) % n
        idx = (sign * pair) % n
        rows = np.broadcast_to(np.arange(stop - start)[:, None], idx.shape)
        block = np.zeros((stop - start, n), dtype=dtype)
        np.add.at(block, (rows, idx), np.broadcast_to(fnz, idx.shape))
        out[start:stop] = block
    return out


if HAVE_NUMBA:

    @njit(cache=True)
    def _char_sums_numba(fvals, coords, weights, n, sign):  # pragma: no cover
        size = fvals.shape[0]
        r = coords.shape[1]
        out = np.zeros((size, n), dtype=np.int64)
        for j in range(size):
            fj = fvals[j]
            if fj == 0:
                continue
            for i in range(size):
                t = 0
                for k in range(r):
                    t += weights[k] * coords[i, k] * coords[j, k]
                t = (sign * (t % n)) % n
                out[i, t] += fj
        return out


def character_sums(fvals, coords, weights, n: int, sign: int = -1) -> np.ndarray:
    """Lifted coefficient vectors of ``sum_y f(y) xi^(sign * <x, y>)`` for every ``x``.

    Row ``i`` holds the integer coefficients of ``xi^0 .. xi^(n-1)`` for the
    ``i``-th element in row-major order.
    """
    fvals = np.asarray(fvals)
    coords = np.asarray(coords, dtype=np.int64)
    weights = np.asarray(weights, dtype=np.int64)
    total = sum(abs(int(v)) for v in fvals)
    if total >= _INT64_SAFE or fvals.dtype == object:
        return _char_sums_numpy(np.asarray(fvals, dtype=object), coords, weights, n, sign)
    fvals = fvals.astype(np.int64)
    if HAVE_NUMBA and len(fvals) * np.count_nonzero(fvals) >= SMALL_WORK:
        return _char_sums_numba(fvals, coords, weights, n, sign)
    return _char_sums_numpy(fvals, coords, weights, n, sign)


# ------------------------------------------------------------ autocorrelations
def _autocorr_numpy(fvals, add_table, order):
    size = len(fvals)
    if order == 1:
        return np.array([fvals.sum()], dtype=fvals.dtype)
    shifted = fvals[add_table.T]  # shifted[s, y] = f(y + s)
    acc = fvals[None, :]
    for _ in range(order - 2):
        acc = (acc[:, None, :] * shifted[None, :, :]).reshape(-1, size)
    return (acc @ shifted.T).reshape(-1)


if HAVE_NUMBA:

    @njit(cache=True)
    def _autocorr_numba(fvals, add_table, order):  # pragma: no cover
        size = fvals.shape[0]
        if order == 1:
            out1 = np.zeros(1, dtype=np.int64)
            for y in range(size):
                out1[0] += fvals[y]
            return out1
        m = order - 1
        out = np.zeros(size**m, dtype=np.int64)
        prefixes = size ** (m - 1)
        shifts = np.zeros(max(m - 1, 1), dtype=np.int64)
        prod = np.empty(size, dtype=np.int64)
        nz = np.empty(size, dtype=np.int64)
        for pre in range(prefixes):
            rem = pre
            for k in range(m - 2, -1, -1):
                shifts[k] = rem % size
                rem //= size
            count = 0
            for y in range(size):
                v = fvals[y]
                for k in range(m - 1):
                    if v == 0:
                        break
                    v *= fvals[add_table[y, shifts[k]]]
                if v != 0:
                    prod[count] = v
                    nz[count] = y
                    count += 1
            base = pre * size
            for s in range(size):
                acc = 0
                for i in range(count):
                    acc += prod[i] * fvals[add_table[nz[i], s]]
                out[base + s] = acc
        return out


def autocorr_table(fvals, add_table, order: int) -> np.ndarray:
    """Dense ``M_order`` over all shift tuples, flattened in row-major tuple order.

    ``add_table[y, s]`` is the row-major index of ``y + s``.
    """
    fvals = np.asarray(fvals)
    add_table = np.asarray(add_table, dtype=np.int64)
    size = len(fvals)
    peak = max((abs(int(v)) for v in fvals), default=0)
    if fvals.dtype == object or peak**order * size >= _INT64_SAFE:
        return _autocorr_numpy(np.asarray(fvals, dtype=object), add_table, order)
    fvals = fvals.astype(np.int64)
    if HAVE_NUMBA and size ** max(order - 1, 1) * np.count_nonzero(fvals) >= SMALL_WORK:
        return _autocorr_numba(fvals, add_table, order)
    return _autocorr_numpy(fvals, add_table, order)
