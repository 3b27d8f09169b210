"""Independent reference computations for the test-suite.

Nothing here imports padic_closure: these are deliberately naive
re-derivations used to check the library.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd


def vp(n: int, p: int) -> int:
    if n == 0:
        return 10 ** 9
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def rational_mod(q: Fraction, p: int, N: int) -> int:
    """q mod p^N for a p-integral rational q."""
    q = Fraction(q)
    return q.numerator * pow(q.denominator, -1, p ** N) % p ** N


def fraction_rank(rows) -> int:
    """Rank over Q by plain Gaussian elimination on Fractions."""
    a = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][c] != 0:
                f = a[i][c] / a[rank][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def fraction_det(rows) -> Fraction:
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


# -- integer polynomial arithmetic mod (p^R, f) --------------------------------

def polymulmod(a: list[int], b: list[int], f: list[int], mod: int) -> list[int]:
    """(a*b) mod (f, mod) for monic f given by ascending coefficients."""
    n = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] += x * y
    for d in range(len(prod) - 1, n - 1, -1):
        c = prod[d]
        if c:
            for j in range(n + 1):
                prod[d - n + j] -= c * f[j]
    out = [x % mod for x in prod[:n]]
    return out + [0] * (n - len(out))


def polypowmod(a, e, f, mod):
    n = len(f) - 1
    result = [1] + [0] * (n - 1)
    base = list(a) + [0] * (n - len(a))
    while e:
        if e & 1:
            result = polymulmod(result, base, f, mod)
        base = polymulmod(base, base, f, mod)
        e >>= 1
    return result


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def algebra_log_oracle(u: list[int], f: list[int], p: int, N: int) -> list[int]:
    """Coefficients of log(u) in Z_p[x]/(f) modulo p^N (p odd, p unramified).

    Uses the crude exponent M = lcm_{d <= n}(p^d - 1), which kills every
    residue-field unit regardless of how f factors mod p, and sums the
    log(1+t) series with enough guard digits for the divisions by k.
    """
    n = len(f) - 1
    M = 1
    for d in range(1, n + 1):
        M = lcm(M, p ** d - 1)
    guard = 12
    R = N + guard
    mod = p ** R
    t = polypowmod(u, M, f, mod)
    t[0] = (t[0] - 1) % mod
    assert all(c % p == 0 for c in t), "u^M is not 1 mod p"
    total = [0] * n
    power = [1] + [0] * (n - 1)
    k = 0
    while True:
        k += 1
        power = polymulmod(power, t, f, mod)
        a = vp(k, p)
        if k - a >= R:  # v(t^k / k) >= k - v_p(k)
            break
        kk = k // p ** a
        inv = pow(kk, -1, mod)
        sign = 1 if k % 2 else -1
        for i, c in enumerate(power):
            assert c % p ** a == 0
            total[i] = (total[i] + sign * (c // p ** a) * inv) % mod
    # dividing by p^a loses a digits; guard covers max a over the series
    inv_m = pow(M, -1, p ** N)
    return [c * inv_m % p ** N for c in total]


def minor_valuation_rank(rows: list[list[int]], p: int, N: int) -> int:
    """Largest r with an r x r minor nonzero modulo p^N (rows are residues)."""
    from itertools import combinations
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    for r in range(min(m, ncols), 0, -1):
        for R in combinations(range(m), r):
            for C in combinations(range(ncols), r):
                det = fraction_det([[rows[i][j] for j in C] for i in R])
                if det.numerator % p ** N != 0:
                    return r
    return 0


# -- elliptic curves -----------------------------------------------------------

def count_points_brute(a: int, b: int, p: int) -> int:
    """#E(F_p) by checking every (x, y) pair."""
    return 1 + sum(1 for x in range(p) for y in range(p) if (y * y - x ** 3 - a * x - b) % p == 0)


def series_mul(a, b, deg):
    out = [Fraction(0)] * (deg + 1)
    for i, x in enumerate(a[: deg + 1]):
        for j, y in enumerate(b[: deg + 1 - i]):
            out[i + j] += x * y
    return out


def series_inv(a, deg):
    out = [Fraction(0)] * (deg + 1)
    out[0] = 1 / Fraction(a[0])
    for k in range(1, deg + 1):
        out[k] = -sum(a[i] * out[k - i] for i in range(1, min(k, len(a) - 1) + 1)) / a[0]
    return out


def formal_log_via_dy(a, b, T):
    """Formal log coefficients from omega = dy / (3x^2 + a).

    w(z) = z^3 + a z w^2 + b w^3 is solved by fixed-point iteration;
    x = z / w, y = -1 / w as Laurent series.  A different route from the
    dx / (2y) form used by the library.
    """
    a, b = Fraction(a), Fraction(b)
    deg = T + 8
    w = [Fraction(0)] * (deg + 1)
    w[3] = Fraction(1)
    for _ in range(deg):
        w2 = series_mul(w, w, deg)
        w3 = series_mul(w2, w, deg)
        new = [Fraction(0)] * (deg + 1)
        new[3] = Fraction(1)
        for i in range(deg):
            new[i + 1] += a * w2[i]
        for i in range(deg + 1):
            new[i] += b * w3[i]
        w = new
    # W = w / z^3, so x = z^-2 / W and y = -z^-3 / W
    W = w[3:] + [Fraction(0)] * 3
    Winv = series_inv(W, deg)
    # y = -sum Winv_i z^(i-3); dy/dz = -sum (i-3) Winv_i z^(i-4)
    # 3x^2 + a = 3 z^-4 (Winv^2) + a
    Winv2 = series_mul(Winv, Winv, deg)
    denom = [3 * c for c in Winv2]
    denom[4] += a  # a = a z^4 * z^-4
    num = [-(i - 3) * Winv[i] for i in range(deg + 1)]
    omega = series_mul(num, series_inv(denom, deg), deg)
    return [omega[k - 1] / k for k in range(1, T + 1)]
