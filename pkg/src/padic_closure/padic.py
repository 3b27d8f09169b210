"""Fixed-precision p-adic scalars with worst-case precision tracking.

A :class:`PadicScalar` stands for every element of Q_p congruent to
``unit * p**val`` modulo ``p**(val + rel)``.  Arithmetic propagates the
interval honestly: the precision of a result is the best one that is
guaranteed for *every* choice of representatives of the inputs.

Three kinds of value exist:

* nonzero: ``rel >= 1`` and ``unit`` a p-adic unit reduced mod ``p**rel``;
* zero at precision N: ``val == N``, ``unit == 0``, ``rel == 0``;
* exact zero: ``val is None``.  Only exact zero has infinite precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, PrecisionError

DEFAULT_SLACK = 8


def valuation(n: int | Fraction, p: int) -> int:
    """p-adic valuation of a nonzero integer or rational."""
    if n == 0:
        raise ValueError("valuation of zero")
    if isinstance(n, Fraction):
        return valuation(n.numerator, p) - valuation(n.denominator, p)
    n = abs(int(n))
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def ilog(k: int, p: int) -> int:
    """Largest e with p**e <= k (k >= 1)."""
    e = 0
    q = p
    while q <= k:
        q *= p
        e += 1
    return e


def series_terms(v: int, p: int, target: int) -> int:
    """Number of terms T of a log-type series sum c_k z**k / k that suffices.

    Every term with index k > T has valuation at least
    ``k*v - ilog(k, p) >= target`` when ``v_p(z) >= v >= 1`` and c_k is
    p-integral.  ``k*v - ilog(k)`` is nondecreasing in k, so the first k
    reaching ``target`` bounds the whole tail.
    """
    k = 1
    while k * v - ilog(k, p) < target:
        k += 1
    return max(k - 1, 1)


def _split(n: int, p: int) -> tuple[int, int]:
    """Return (v, u) with n = u * p**v and p not dividing u (n != 0)."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


@dataclass(frozen=True)
class PrecisionPolicy:
    """Requested absolute precision plus internal working slack."""

    target_abs: int
    slack: int = DEFAULT_SLACK

    def __post_init__(self):
        if self.target_abs < 1:
            raise DomainError("target precision must be >= 1")
        if self.slack < 0:
            raise DomainError("slack must be >= 0")

    @property
    def working(self) -> int:
        return self.target_abs + self.slack


@dataclass(frozen=True)
class PadicScalar:
    p: int
    val: int | None
    unit: int = 0
    rel: int = 0

    # -- constructors -------------------------------------------------
    @classmethod
    def exact_zero(cls, p: int) -> PadicScalar:
        return cls(p, None, 0, 0)

    @classmethod
    def zero(cls, p: int, prec: int) -> PadicScalar:
        """Zero known modulo p**prec."""
        return cls(p, prec, 0, 0)

    @classmethod
    def from_int_parts(cls, p: int, v: int, x: int, prec: int) -> PadicScalar:
        """The value ``x * p**v`` known modulo ``p**prec``."""
        if prec <= v:
            return cls.zero(p, prec)
        x %= p ** (prec - v)
        if x == 0:
            return cls.zero(p, prec)
        e, u = _split(x, p)
        val = v + e
        rel = prec - val
        return cls(p, val, u % p ** rel, rel)

    # -- inspection ---------------------------------------------------
    @property
    def is_exact_zero(self) -> bool:
        return self.val is None

    @property
    def is_zero(self) -> bool:
        """True when the value is indistinguishable from zero."""
        return self.val is None or self.rel == 0

    @property
    def is_nonzero(self) -> bool:
        """True when the value is provably nonzero."""
        return self.val is not None and self.rel >= 1

    @property
    def prec(self) -> float | int:
        """Absolute precision (``math.inf`` for exact zero)."""
        if self.val is None:
            return math.inf
        return self.val + self.rel

    def lift(self) -> Fraction:
        """A rational representative of the value."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.val

    def truncate(self, prec: int) -> PadicScalar:
        """Forget digits beyond absolute precision ``prec``."""
        if self.val is None or prec >= self.prec:
            return self
        return PadicScalar.from_int_parts(self.p, self.val, self.unit, prec)

    def agrees_with(self, other: PadicScalar, prec: int | None = None) -> bool:
        """True when the two values are congruent to their common precision.

        ``prec`` optionally caps the comparison precision further.
        """
        diff = self - other
        if diff.is_zero:
            return True
        return prec is not None and diff.val >= prec

    def to_json(self) -> dict:
        if self.val is None:
            return {"exact_zero": True}
        return {"val": self.val, "unit": self.unit, "abs": self.prec}

    def __repr__(self):
        if self.val is None:
            return f"PadicScalar(p={self.p}, exact 0)"
        if self.rel == 0:
            return f"PadicScalar(p={self.p}, O({self.p}^{self.val}))"
        return f"PadicScalar(p={self.p}, {self.unit}*{self.p}^{self.val} + O({self.p}^{self.prec}))"

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: PadicScalar):
        if not isinstance(other, PadicScalar):
            return NotImplemented
        if other.p != self.p:
            raise DomainError(f"mixed primes {self.p} and {other.p}")
        return None

    def __neg__(self) -> PadicScalar:
        if self.is_zero:
            return self
        return PadicScalar(self.p, self.val, (-self.unit) % self.p ** self.rel, self.rel)

    def __add__(self, other: PadicScalar) -> PadicScalar:
        if self._check(other) is NotImplemented:
            return NotImplemented
        if self.val is None:
            return other
        if other.val is None:
            return self
        p = self.p
        prec = min(self.prec, other.prec)
        v = min(self.val, other.val)
        if prec <= v:
            return PadicScalar.zero(p, prec)
        x = self.unit * p ** (self.val - v) + other.unit * p ** (other.val - v)
        return PadicScalar.from_int_parts(p, v, x, prec)

    def __sub__(self, other: PadicScalar) -> PadicScalar:
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: PadicScalar) -> PadicScalar:
        if self._check(other) is NotImplemented:
            return NotImplemented
        p = self.p
        if self.val is None or other.val is None:
            return PadicScalar.exact_zero(p)
        if self.rel == 0 or other.rel == 0:
            return PadicScalar.zero(p, min(self.val + other.prec, other.val + self.prec))
        rel = min(self.rel, other.rel)
        return PadicScalar(p, self.val + other.val, self.unit * other.unit % p ** rel, rel)

    def __truediv__(self, other: PadicScalar) -> PadicScalar:
        if self._check(other) is NotImplemented:
            return NotImplemented
        if not other.is_nonzero:
            raise PrecisionError("division by a value indistinguishable from zero")
        p = self.p
        if self.val is None:
            return self
        if self.rel == 0:
            return PadicScalar.zero(p, self.val - other.val)
        rel = min(self.rel, other.rel)
        m = p ** rel
        return PadicScalar(p, self.val - other.val, self.unit * pow(other.unit, -1, m) % m, rel)

    def scale(self, c: int | Fraction) -> PadicScalar:
        """Multiply by an exact nonzero rational; relative precision is kept."""
        if c == 0:
            return PadicScalar.exact_zero(self.p)
        if self.val is None:
            return self
        c = Fraction(c)
        p = self.p
        vn, un = _split(c.numerator, p)
        vd, ud = _split(c.denominator, p)
        shift = vn - vd
        if self.rel == 0:
            return PadicScalar.zero(p, self.val + shift)
        m = p ** self.rel
        return PadicScalar(p, self.val + shift, self.unit * un * pow(ud, -1, m) % m, self.rel)

    def __pow__(self, n: int) -> PadicScalar:
        if n < 1:
            raise ValueError("only positive integer powers are supported")
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result


def scalar_from_rational(q: int | Fraction | str, p: int, prec: int) -> PadicScalar:
    """Image of a rational in Q_p, known to absolute precision ``prec``.

    Zero maps to zero-at-precision; use :meth:`PadicScalar.exact_zero` for
    the exact sentinel.
    """
    q = Fraction(q)
    if q == 0:
        return PadicScalar.zero(p, prec)
    vn, un = _split(q.numerator, p)
    vd, ud = _split(q.denominator, p)
    val = vn - vd
    if prec <= val:
        return PadicScalar.zero(p, prec)
    rel = prec - val
    m = p ** rel
    return PadicScalar(p, val, un * pow(ud, -1, m) % m, rel)


def _one_like(x: PadicScalar, prec) -> PadicScalar:
    return scalar_from_rational(1, x.p, prec)


def log_one_plus(x: PadicScalar, prec: int | None = None) -> PadicScalar:
    """log(1 + x) by its power series, truncated soundly.

    Requires v_p(x) >= 1 (>= 2 when p = 2).  The result is known modulo
    p**target where target is ``x.prec`` (capped by ``prec`` if given).
    """
    p = x.p
    need = 2 if p == 2 else 1
    if x.val is None:
        return x
    target = x.prec if prec is None else min(prec, x.prec)
    if x.rel == 0:
        if x.val < need:
            raise DomainError("log(1+x): cannot verify x lies in the convergence domain")
        return PadicScalar.zero(p, target)
    if x.val < need:
        raise DomainError(f"log(1+x) needs v_p(x) >= {need}, got {x.val}")
    terms = series_terms(x.val, p, target)
    total = PadicScalar.exact_zero(p)
    power = x
    for k in range(1, terms + 1):
        total = total + power.scale(Fraction(1 if k % 2 else -1, k))
        if k < terms:
            power = power * x
    return total.truncate(target)


def unit_log(u: PadicScalar, prec: int | None = None) -> PadicScalar:
    """Logarithm of a p-adic unit, with kernel the roots of unity.

    Torsion is killed by raising to the power p-1 (p odd) or 2 (p = 2)
    before the series; for p = 2 the final halving costs one digit.
    """
    if not u.is_nonzero or u.val != 0:
        raise DomainError("unit_log needs a p-adic unit (valuation 0)")
    p = u.p
    e = 2 if p == 2 else p - 1
    w = u ** e
    t = w - _one_like(u, w.prec)
    return log_one_plus(t, prec).scale(Fraction(1, e))
