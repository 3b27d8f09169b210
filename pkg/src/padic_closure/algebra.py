"""Arithmetic and logarithm in A = Q_p[x]/(f) for unramified p.

For a number field K = Q[x]/(f) this is K tensor Q_p, the group of
Q_p-points of the torus Res_{K/Q} G_m.  f is never factored over Q_p;
the log coordinates live in the power basis 1, x, ..., x^(n-1).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from .padic import PadicScalar, scalar_from_rational, series_terms
from .polyutil import (
    discriminant,
    fp_trim,
    fp_xgcd,
    degree,
    is_irreducible,
    residue_exponent_for,
)


@dataclass(frozen=True)
class AlgebraModulus:
    """Monic integer f (ascending coefficients), prime p, working precision N."""

    f: tuple[int, ...]
    p: int
    N: int

    def __post_init__(self):
        f = tuple(int(c) for c in self.f)
        object.__setattr__(self, "f", f)
        if len(f) < 2 or f[-1] != 1:
            raise DomainError(f"modulus must be monic of degree >= 1, got {list(f)}")
        if self.N < 1:
            raise DomainError("precision must be >= 1")
        if not is_irreducible(f):
            raise DomainError(f"{list(f)} is reducible over Q")
        if _disc(f) % self.p == 0:
            raise DomainError(
                f"p={self.p} divides disc(f)={_disc(f)}: ramified (or index-divisor) primes are unsupported"
            )

    @property
    def n(self) -> int:
        return len(self.f) - 1

    def at_precision(self, N: int) -> AlgebraModulus:
        return AlgebraModulus(self.f, self.p, N)


@lru_cache(maxsize=256)
def _disc(f: tuple[int, ...]) -> int:
    return discriminant(list(f))


@dataclass(frozen=True)
class AlgebraElement:
    coeffs: tuple[PadicScalar, ...]

    @classmethod
    def from_rationals(cls, coeffs, m: AlgebraModulus, prec: int | None = None) -> AlgebraElement:
        if len(coeffs) > m.n:
            raise DomainError(f"element has {len(coeffs)} coefficients, modulus degree is {m.n}")
        prec = m.N if prec is None else prec
        padded = list(coeffs) + [0] * (m.n - len(coeffs))
        return cls(tuple(
            scalar_from_rational(c, m.p, prec) if Fraction(c) != 0 else PadicScalar.exact_zero(m.p)
            for c in padded
        ))

    @classmethod
    def constant(cls, c, m: AlgebraModulus, prec: int | None = None) -> AlgebraElement:
        return cls.from_rationals([c], m, prec)

    @classmethod
    def zero(cls, m: AlgebraModulus) -> AlgebraElement:
        return cls(tuple(PadicScalar.exact_zero(m.p) for _ in range(m.n)))

    @property
    def prec(self):
        return min(c.prec for c in self.coeffs)

    @property
    def val(self):
        """Minimum coefficient valuation (None when every coefficient is exact zero)."""
        vals = [c.val for c in self.coeffs if c.val is not None]
        return min(vals) if vals else None

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> AlgebraElement:
        return AlgebraElement(tuple(x.scale(c) for x in self.coeffs))

    def truncate(self, prec: int) -> AlgebraElement:
        return AlgebraElement(tuple(x.truncate(prec) for x in self.coeffs))

    def agrees_with(self, other: AlgebraElement, prec: int | None = None) -> bool:
        return all(a.agrees_with(b, prec) for a, b in zip(self.coeffs, other.coeffs))


def algebra_mul(a: AlgebraElement, b: AlgebraElement, m: AlgebraModulus) -> AlgebraElement:
    """Schoolbook product reduced modulo f (f has exact integer coefficients)."""
    n = m.n
    p = m.p
    prod = [PadicScalar.exact_zero(p) for _ in range(2 * n - 1)]
    for i, x in enumerate(a.coeffs):
        if x.is_exact_zero:
            continue
        for j, y in enumerate(b.coeffs):
            if not y.is_exact_zero:
                prod[i + j] = prod[i + j] + x * y
    for top in range(2 * n - 2, n - 1, -1):
        c = prod[top]
        if c.is_exact_zero:
            continue
        # x^top = -sum f_j x^(top-n+j)
        for j in range(n):
            if m.f[j]:
                prod[top - n + j] = prod[top - n + j] - c.scale(m.f[j])
    return AlgebraElement(tuple(prod[:n]))


def algebra_pow(a: AlgebraElement, e: int, m: AlgebraModulus) -> AlgebraElement:
    if e < 1:
        raise ValueError("exponent must be positive")
    result = None
    base = a
    while e:
        if e & 1:
            result = base if result is None else algebra_mul(result, base, m)
        e >>= 1
        if e:
            base = algebra_mul(base, base, m)
    return result


def _integral_residue(a: AlgebraElement, m: AlgebraModulus) -> list[int]:
    """Coefficients of a mod p, requiring a to be p-integral."""
    out = []
    for c in a.coeffs:
        if c.is_zero:
            if not c.is_exact_zero and c.val < 1:
                raise DomainError("coefficient not known modulo p")
            out.append(0)
        elif c.val < 0:
            raise DomainError("element is not p-integral")
        else:
            out.append(c.unit % m.p if c.val == 0 else 0)
    return out


def is_residue_unit(a: AlgebraElement, m: AlgebraModulus) -> bool:
    """True when a is p-integral with invertible image in F_p[x]/(f mod p)."""
    try:
        r = _integral_residue(a, m)
    except DomainError:
        return False
    g, _, _ = fp_xgcd(r, list(m.f), m.p)
    return degree(g) == 0


def _int_mulmod(a: list[int], b: list[int], f: tuple[int, ...], mod: int) -> list[int]:
    n = len(f) - 1
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for top in range(2 * n - 2, n - 1, -1):
        c = prod[top]
        if c:
            for j in range(n):
                prod[top - n + j] -= c * f[j]
    return [x % mod for x in prod[:n]]


def algebra_invert(a: AlgebraElement, m: AlgebraModulus) -> AlgebraElement:
    """Inverse via extended Euclid over F_p, then Newton lifting b <- b(2 - ab)."""
    if not is_residue_unit(a, m):
        raise DomainError("not a p-adic unit in A")
    p, n = m.p, m.n
    prec = a.prec
    if prec == float("inf"):
        prec = m.N
    mod = p ** prec
    ai = [0 if c.is_zero else int(c.lift()) % mod for c in a.coeffs]
    _, s, _ = fp_xgcd(fp_trim(ai, p), list(m.f), p)
    b = list(s) + [0] * (n - len(s))
    k = 1
    while k < prec:
        k = min(2 * k, prec)
        mk = p ** k
        ab = _int_mulmod(ai, b, m.f, mk)
        two_minus = [(-x) % mk for x in ab]
        two_minus[0] = (two_minus[0] + 2) % mk
        b = _int_mulmod(b, two_minus, m.f, mk)
    return AlgebraElement(tuple(PadicScalar.from_int_parts(p, 0, x, prec) for x in b))


@lru_cache(maxsize=1024)
def _residue_exponent(f: tuple[int, ...], p: int) -> int:
    return residue_exponent_for(f, p)


def residue_exponent(m: AlgebraModulus) -> int:
    """Exponent M with u^M = 1 mod p for every unit u of Z_p[x]/(f)."""
    return _residue_exponent(m.f, m.p)


def algebra_unit_log(u: AlgebraElement, m: AlgebraModulus) -> AlgebraElement:
    """Coordinates of log u in the power basis.

    u is pushed into 1 + pA by the residue exponent M (and one extra
    squaring when p = 2), then log(1+t) is summed in A and divided by the
    total exponent.  For p = 2 the division by 2 costs one digit.
    """
    if not is_residue_unit(u, m):
        raise DomainError("algebra_unit_log needs a unit of Z_p[x]/(f)")
    p = m.p
    e = residue_exponent(m)
    w = algebra_pow(u, e, m)
    if p == 2:
        w = algebra_mul(w, w, m)
        e *= 2
    one = AlgebraElement.constant(1, m, prec=w.prec if w.prec != float("inf") else m.N)
    t = w - one
    target = t.prec
    need = 2 if p == 2 else 1
    v = t.val
    if all(c.is_zero for c in t.coeffs):
        if v is not None and v < need:
            raise DomainError("cannot verify convergence of log: too little precision")
        return AlgebraElement(tuple(c if c.is_exact_zero else PadicScalar.zero(p, c.prec)
                                    for c in t.coeffs)).scale(Fraction(1, e))
    v = t.val
    if v < need:
        raise DomainError("u^M - 1 is not divisible by p; residue exponent mismatch")
    terms = series_terms(v, p, target)
    total = AlgebraElement.zero(m)
    power = t
    for k in range(1, terms + 1):
        total = total + power.scale(Fraction(1 if k % 2 else -1, k))
        if k < terms:
            power = algebra_mul(power, t, m)
    return total.truncate(target).scale(Fraction(1, e))
