"""Exact linear algebra over Z and Q.

Matrices are lists of rows.  Ranks and determinants use fraction-free
(Bareiss) elimination; lattice operations use a row Hermite normal form.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = Sequence[Sequence[int]]


def _integral_rows(rows) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def bareiss_rank(rows) -> int:
    """Rank over Q of a matrix with integer or rational entries.

    Rational rows are scaled to integers first (rank is unchanged).
    """
    a = _integral_rows(rows)
    if not a:
        return 0
    m, n = len(a), len(a[0])
    prev = 1
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        for i in range(r + 1, m):
            ai = a[i]
            factor = ai[col]
            a[i] = [(pr[col] * ai[j] - factor * pr[j]) // prev for j in range(n)]
        prev = pr[col]
        r += 1
        if r == m:
            break
    return r


def bareiss_det(rows) -> int:
    """Determinant of a square integer matrix."""
    a = [list(map(int, row)) for row in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def hnf(rows: Matrix, ncols: int | None = None) -> list[tuple[int, ...]]:
    """Row Hermite normal form; zero rows are dropped.

    Pivots are positive and entries above each pivot lie in [0, pivot).
    Two integer matrices span the same lattice iff their HNFs coincide.
    """
    a = [list(map(int, r)) for r in rows]
    if not a:
        return []
    m = len(a)
    n = len(a[0]) if ncols is None else ncols
    r = 0
    for col in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(a[i][col]), i))
            a[r], a[piv] = a[piv], a[r]
            pr = a[r]
            clean = True
            for i in range(r + 1, m):
                if a[i][col]:
                    q = a[i][col] // pr[col]
                    a[i] = [x - q * y for x, y in zip(a[i], pr)]
                    if a[i][col]:
                        clean = False
            if clean:
                break
        if a[r][col] == 0:
            continue
        if a[r][col] < 0:
            a[r] = [-x for x in a[r]]
        pr = a[r]
        for i in range(r):
            q = a[i][col] // pr[col]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], pr)]
        r += 1
    return [tuple(row) for row in a[:r]]


def integer_kernel(rows: Matrix, n: int) -> list[tuple[int, ...]]:
    """HNF basis of {x in Z^n : A x = 0}; this lattice is always saturated."""
    rows = [list(map(int, r)) for r in rows if any(r)]
    if not rows:
        return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    m = len(rows)
    # rows of [A^T | I]; reduce on the first m columns
    aug = [[rows[i][j] for i in range(m)] + [1 if k == j else 0 for k in range(n)] for j in range(n)]
    r = 0
    for col in range(m):
        while True:
            nz = [i for i in range(r, n) if aug[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(aug[i][col]), i))
            aug[r], aug[piv] = aug[piv], aug[r]
            pr = aug[r]
            clean = True
            for i in range(r + 1, n):
                if aug[i][col]:
                    q = aug[i][col] // pr[col]
                    aug[i] = [x - q * y for x, y in zip(aug[i], pr)]
                    if aug[i][col]:
                        clean = False
            if clean:
                break
        if r < n and aug[r][col] != 0:
            r += 1
        if r == n:
            break
    basis = [row[m:] for row in aug[r:]]
    return hnf(basis, n)


def saturate(rows: Matrix, n: int) -> list[tuple[int, ...]]:
    """HNF basis of (span_Q rows) intersected with Z^n."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return []
    return integer_kernel(integer_kernel(rows, n), n)


def is_saturated(rows: Matrix, n: int) -> bool:
    return hnf(rows, n) == saturate(rows, n)
