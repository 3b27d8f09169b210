"""Primality testing and factorization of rationals."""
from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError

# Miller-Rabin with these bases is deterministic below this bound.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MR_DETERMINISTIC_LIMIT = 3317044064679887385961981

DEFAULT_TRIAL_BOUND = 10_000


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24; larger n raise DomainError."""
    if n >= MR_DETERMINISTIC_LIMIT:
        raise DomainError(f"cannot certify primality of {n}: beyond the deterministic Miller-Rabin range")
    return _strong_probable_prime(n)


def _strong_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    n += 1
    while not is_prime(n):
        n += 1
    return n


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 200):
        x = y = 2
        d = 1
        f = lambda v: (v * v + c) % n  # noqa: E731
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise DomainError(f"incomplete factorization: Pollard rho failed on {n}")


def _factor_int(n: int, bound: int) -> dict[int, int]:
    out: dict[int, int] = {}
    q = 2
    while q <= bound and q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1 if q == 2 else 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        # a probable prime beyond the certified range raises inside is_prime
        if _strong_probable_prime(m) and is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.extend([d, m // d])
    return out


def factor_rational(q: int | Fraction, bound: int = DEFAULT_TRIAL_BOUND) -> tuple[int, dict[int, int]]:
    """Return (sign, {prime: exponent}) for a nonzero rational.

    Raises DomainError when a cofactor cannot be completely factored.
    """
    q = Fraction(q)
    if q == 0:
        raise DomainError("cannot factor zero")
    sign = -1 if q < 0 else 1
    exps = dict(_factor_int(abs(q.numerator), bound))
    for prime, e in _factor_int(q.denominator, bound).items():
        exps[prime] = exps.get(prime, 0) - e
    return sign, {k: exps[k] for k in sorted(exps) if exps[k]}
