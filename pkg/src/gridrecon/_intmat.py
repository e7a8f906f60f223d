"""Exact integer matrix reductions (Hermite and Smith normal forms).

Matrices are lists of row lists of Python ints.  Everything here is
small (a handful of rows), so clarity wins over asymptotics.
"""

from __future__ import annotations

from dataclasses import dataclass

Matrix = list[list[int]]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(len(b))) for j in range(cols)] for row in a]


def hnf_with_transform(a: Matrix) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U @ a == H``, ``U`` unimodular, ``H`` in row
    echelon form with positive pivots, entries above each pivot reduced into
    ``[0, pivot)``, and all zero rows at the bottom.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    h = [list(r) for r in a]
    u = identity(m)
    row = 0
    for col in range(n):
        if row >= m:
            break
        for i in range(row + 1, m):
            b = h[i][col]
            if b == 0:
                continue
            p = h[row][col]
            g, s, t = xgcd(p, b)
            pg, bg = p // g, b // g
            hr, hi = h[row], h[i]
            h[row] = [s * x + t * y for x, y in zip(hr, hi)]
            h[i] = [-bg * x + pg * y for x, y in zip(hr, hi)]
            ur, ui = u[row], u[i]
            u[row] = [s * x + t * y for x, y in zip(ur, ui)]
            u[i] = [-bg * x + pg * y for x, y in zip(ur, ui)]
        piv = h[row][col]
        if piv == 0:
            continue
        if piv < 0:
            h[row] = [-x for x in h[row]]
            u[row] = [-x for x in u[row]]
            piv = -piv
        for i in range(row):
            q = h[i][col] // piv
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[row])]
                u[i] = [x - q * y for x, y in zip(u[i], u[row])]
        row += 1
    return h, u


def hnf(a: Matrix) -> Matrix:
    """Nonzero rows of the Hermite normal form of ``a``."""
    h, _ = hnf_with_transform(a)
    return [r for r in h if any(r)]


@dataclass(frozen=True)
class SnfDecomposition:
    """``U @ A @ V == D`` with ``D`` diagonal and ``d_i | d_{i+1}``."""

    U: tuple[tuple[int, ...], ...]
    D: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]


def smith_normal_form(a: Matrix) -> SnfDecomposition:
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(r) for r in a]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    for t in range(min(m, n)):
        while True:
            # smallest nonzero entry of the trailing block becomes the pivot
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = d[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return _pack(u, d, v)
            _, bi, bj = best
            if bi != t:
                swap_rows(t, bi)
            if bj != t:
                swap_cols(t, bj)
            p = d[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = d[i][t] // p
                if q:
                    d[i] = [x - q * y for x, y in zip(d[i], d[t])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                if d[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = d[t][j] // p
                if q:
                    for r in d:
                        r[j] -= q * r[t]
                    for r in v:
                        r[j] -= q * r[t]
                if d[t][j]:
                    dirty = True
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p),
                None,
            )
            if bad is not None:
                d[t] = [x + y for x, y in zip(d[t], d[bad])]
                u[t] = [x + y for x, y in zip(u[t], u[bad])]
                continue
            break
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return _pack(u, d, v)


def _pack(u, d, v) -> SnfDecomposition:
    return SnfDecomposition(
        tuple(map(tuple, u)), tuple(map(tuple, d)), tuple(map(tuple, v))
    )


def det(a: Matrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def solve_left(rows: Matrix, target: list[int]) -> list[int] | None:
    """Integer ``z`` with ``z @ rows == target``, or ``None`` if none exists."""
    if not rows:
        return None if any(target) else []
    mat, u = hnf_with_transform(rows)
    rest = list(target)
    y = [0] * len(rows)
    col = 0
    ncols = len(rows[0])
    for i, row in enumerate(mat):
        while col < ncols and row[col] == 0:
            if rest[col]:
                return None
            col += 1
        if col == ncols:
            break
        q, rem = divmod(rest[col], row[col])
        if rem:
            return None
        y[i] = q
        if q:
            rest = [p - q * s for p, s in zip(rest, row)]
    if any(rest):
        return None
    return [sum(y[i] * u[i][j] for i in range(len(rows)) if y[i]) for j in range(len(rows))]
