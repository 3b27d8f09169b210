"""Univariate polynomial helpers.

Polynomials are coefficient lists in ascending degree order.  Functions
prefixed ``fp_`` work over F_p with coefficients in [0, p); the rest work
over Q with ``Fraction`` or ``int`` coefficients.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm

from .intlinalg import bareiss_det
from .primes import next_prime


def trim(a: list) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a) -> int:
    return len(trim(a)) - 1


# -- F_p[x] ---------------------------------------------------------------

def fp_trim(a, p) -> list[int]:
    return trim([x % p for x in a])


def fp_sub(a, b, p) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return fp_trim([x - y for x, y in zip(a, b)], p)


def fp_mul(a, b, p) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return fp_trim(out, p)


def fp_divmod(a, b, p) -> tuple[list[int], list[int]]:
    a = fp_trim(a, p)
    b = fp_trim(b, p)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        a = fp_trim(a, p)
    return fp_trim(q, p), a


def fp_gcd(a, b, p) -> list[int]:
    a, b = fp_trim(a, p), fp_trim(b, p)
    while b:
        a, b = b, fp_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def fp_xgcd(a, b, p):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = fp_trim(a, p), fp_trim(b, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = fp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, fp_sub(s0, fp_mul(q, s1, p), p)
        t0, t1 = t1, fp_sub(t0, fp_mul(q, t1, p), p)
    if not r0:
        return [], s0, t0
    inv = pow(r0[-1], -1, p)
    return ([x * inv % p for x in r0], [x * inv % p for x in s0], [x * inv % p for x in t0])


def fp_powmod(base, e: int, mod, p) -> list[int]:
    result = [1]
    base = fp_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = fp_divmod(fp_mul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = fp_divmod(fp_mul(base, base, p), mod, p)[1]
    return result


def fp_factor_degrees(f, p) -> list[int]:
    """Degrees of the irreducible factors of a squarefree f over F_p.

    Distinct-degree splitting: gcd(x^(p^d) - x, f) collects the factors
    of degree d.
    """
    rest = fp_trim(f, p)
    if len(rest) < 2:
        return []
    inv = pow(rest[-1], -1, p)
    rest = [c * inv % p for c in rest]
    degrees: list[int] = []
    h = [0, 1]
    d = 0
    while degree(rest) > 0:
        d += 1
        if 2 * d > degree(rest):
            degrees.append(degree(rest))
            break
        h = fp_powmod(h, p, rest, p)
        g = fp_gcd(fp_sub(h, [0, 1], p), rest, p)
        if degree(g) > 0:
            degrees.extend([d] * (degree(g) // d))
            rest = fp_divmod(rest, g, p)[0]
            h = fp_divmod(h, rest, p)[1]
    return degrees


def fp_is_squarefree(f, p) -> bool:
    f = fp_trim(f, p)
    df = fp_trim([i * c for i, c in enumerate(f)][1:], p)
    if not df:
        return False
    return degree(fp_gcd(f, df, p)) == 0


# -- Q[x] -----------------------------------------------------------------

def poly_mul(a, b) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def poly_divmod(a, b):
    a = [Fraction(x) for x in trim(a)]
    b = [Fraction(x) for x in trim(b)]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] -= c * y
        a = trim(a)
    return trim(q), a


def poly_rem(a, b):
    return poly_divmod(a, b)[1]


def poly_gcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, poly_rem(a, b)
    if a:
        lc = Fraction(a[-1])
        a = [Fraction(x) / lc for x in a]
    return a


def derivative(a) -> list:
    return trim([i * c for i, c in enumerate(a)][1:])


def poly_eval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def resultant(f, g) -> int:
    """Resultant of two integer polynomials via the Sylvester determinant."""
    f, g = trim(f), trim(g)
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    if size == 0:
        return 1
    fd, gd = list(reversed(f)), list(reversed(g))
    rows = []
    for i in range(n):
        rows.append([0] * i + fd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gd + [0] * (size - n - 1 - i))
    return bareiss_det(rows)


def discriminant(f) -> int:
    """Discriminant of a monic integer polynomial."""
    f = trim(f)
    n = len(f) - 1
    if n < 1:
        raise ValueError("discriminant of a constant")
    if n == 1:
        return 1
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, derivative(f)) // f[-1]


def _subset_sums(degrees: list[int]) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


@lru_cache(maxsize=256)
def is_irreducible(f: tuple[int, ...]) -> bool:
    """Irreducibility of a monic integer polynomial over Q.

    Factor-degree patterns modulo good primes constrain the degrees of any
    rational factor; if no proper degree survives every pattern, f is
    irreducible.  Patterns that never rule everything out (x^4 + 1 is the
    classic case) fall back to a full factorization by sympy.
    """
    f = trim(list(f))
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    disc = discriminant(f)
    if disc == 0:
        return False
    possible = set(range(1, n))
    p = 2
    tried = 0
    while possible and tried < 60:
        if disc % p:
            tried += 1
            possible &= _subset_sums(fp_factor_degrees(f, p))
        p = next_prime(p)
    if not possible:
        return True
    import sympy

    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed(f)), x).is_irreducible


def sturm_real_roots(f) -> int:
    """Number of distinct real roots of a squarefree rational polynomial."""
    f = [Fraction(c) for c in trim(f)]
    if len(f) < 2:
        return 0
    chain = [f, derivative(f)]
    while len(chain[-1]) > 1:
        r = poly_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])

    def variations(signs):
        signs = [s for s in signs if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    at_pos = [1 if q[-1] > 0 else -1 for q in chain]
    at_neg = [(1 if q[-1] > 0 else -1) * (-1) ** (len(q) - 1) for q in chain]
    return variations(at_neg) - variations(at_pos)


def residue_exponent_for(f: tuple[int, ...], p: int) -> int:
    """lcm of p^d - 1 over the degrees d of the irreducible factors of f mod p."""
    return lcm(*[p ** d - 1 for d in fp_factor_degrees(list(f), p)])

