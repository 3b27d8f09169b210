"""Short Weierstrass curves over Q and their p-adic elliptic logarithm.

The logarithm is the formal-group integral of the invariant differential
in the parameter z = -x/y.  A point is first pushed into the kernel of
reduction by multiplying with #E(F_p), so only p >= 5 of good reduction
is supported.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from .padic import PadicScalar, scalar_from_rational, series_terms, valuation, DEFAULT_SLACK

# Largest order of a rational torsion point (Mazur).
MAX_TORSION_ORDER = 12


@dataclass(frozen=True)
class CurveSpec:
    """y^2 = x^3 + a x + b."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.delta == 0:
            raise DomainError(f"singular curve: 4a^3 + 27b^2 = 0 for a={self.a}, b={self.b}")

    @property
    def delta(self) -> Fraction:
        return 4 * self.a ** 3 + 27 * self.b ** 2

    @property
    def discriminant(self) -> Fraction:
        return -16 * self.delta

    def contains(self, P: RationalPoint) -> bool:
        if P.is_infinity:
            return True
        return P.y ** 2 == P.x ** 3 + self.a * P.x + self.b

    def check_good_reduction(self, p: int):
        if p < 5:
            raise DomainError(f"elliptic logarithm needs p >= 5, got {p}")
        for c in (self.a, self.b):
            if c != 0 and valuation(c, p) < 0:
                raise DomainError(f"p={p} divides a denominator of the curve coefficients")
        if valuation(self.delta, p) > 0:
            raise DomainError(f"bad reduction at p={p}")


@dataclass(frozen=True)
class RationalPoint:
    x: Fraction | None = None
    y: Fraction | None = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @classmethod
    def affine(cls, x, y) -> RationalPoint:
        return cls(Fraction(x), Fraction(y))

    def to_json(self):
        if self.is_infinity:
            return "O"
        return [_fmt(self.x), _fmt(self.y)]


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


INFINITY = RationalPoint()


def point_neg(curve: CurveSpec, P: RationalPoint) -> RationalPoint:
    if P.is_infinity:
        return P
    return RationalPoint(P.x, -P.y)


def point_add(curve: CurveSpec, P: RationalPoint, Q: RationalPoint) -> RationalPoint:
    """Chord-tangent group law over Q."""
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y == -Q.y:
            return INFINITY
        lam = (3 * P.x ** 2 + curve.a) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam ** 2 - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return RationalPoint(x3, y3)


def point_mul(curve: CurveSpec, P: RationalPoint, n: int) -> RationalPoint:
    if n < 0:
        return point_mul(curve, point_neg(curve, P), -n)
    result = INFINITY
    addend = P
    while n:
        if n & 1:
            result = point_add(curve, result, addend)
        n >>= 1
        if n:
            addend = point_add(curve, addend, addend)
    return result


def point_arith(P: RationalPoint, Q: RationalPoint | int | None, op: str, curve: CurveSpec) -> RationalPoint:
    """Dispatch for ``add``, ``neg`` and ``mul_by_n`` (Q is then the integer n)."""
    if op == "add":
        return point_add(curve, P, Q)
    if op == "neg":
        return point_neg(curve, P)
    if op == "mul_by_n":
        return point_mul(curve, P, Q)
    raise ValueError(f"unknown point operation {op!r}")


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _mod_p(q: Fraction, p: int) -> int:
    return q.numerator * pow(q.denominator, -1, p) % p


def count_points_mod_p(curve: CurveSpec, p: int) -> int:
    """#E(F_p) by direct enumeration, checked against the Hasse bound."""
    curve.check_good_reduction(p)
    a, b = _mod_p(curve.a, p), _mod_p(curve.b, p)
    count = 1 + sum(1 + _legendre(x ** 3 + a * x + b, p) for x in range(p))
    if (count - p - 1) ** 2 > 4 * p:
        raise AssertionError(f"Hasse bound violated: #E(F_{p}) = {count}")
    return count


def _series_mul(a: list[Fraction], b: list[Fraction], deg: int) -> list[Fraction]:
    out = [Fraction(0)] * (deg + 1)
    for i, x in enumerate(a[: deg + 1]):
        if x:
            for j, y in enumerate(b[: deg + 1 - i]):
                out[i + j] += x * y
    return out


def _series_inv(a: list[Fraction], deg: int) -> list[Fraction]:
    out = [Fraction(0)] * (deg + 1)
    out[0] = 1 / a[0]
    for k in range(1, deg + 1):
        s = sum(a[i] * out[k - i] for i in range(1, min(k, len(a) - 1) + 1))
        out[k] = -s / a[0]
    return out


def w_series(curve: CurveSpec, deg: int) -> list[Fraction]:
    """Coefficients of W(z) = w(z)/z^3 to degree ``deg``, where w = -1/y.

    W solves W = 1 + a z^4 W^2 + b z^6 W^3.
    """
    W = [Fraction(0)] * (deg + 1)
    W[0] = Fraction(1)
    while True:
        W2 = _series_mul(W, W, deg)
        W3 = _series_mul(W2, W, deg)
        new = [Fraction(0)] * (deg + 1)
        new[0] = Fraction(1)
        for i in range(deg + 1):
            if i + 4 <= deg:
                new[i + 4] += curve.a * W2[i]
            if i + 6 <= deg:
                new[i + 6] += curve.b * W3[i]
        if new == W:
            return W
        W = new


def invariant_differential(curve: CurveSpec, deg: int) -> list[Fraction]:
    """omega / dz = dx / (2y) as a power series in z, to degree ``deg``."""
    W = w_series(curve, deg)
    Winv = _series_inv(W, deg)
    # x = sum e_i z^(i-2) with e_i = Winv_i; omega/dz = -(W/2) * sum (i-2) e_i z^i
    dx = [(i - 2) * Winv[i] for i in range(deg + 1)]
    prod = _series_mul(W, dx, deg)
    return [-c / 2 for c in prod]


@lru_cache(maxsize=128)
def _formal_log(a: Fraction, b: Fraction, T: int) -> tuple[Fraction, ...]:
    omega = invariant_differential(CurveSpec(a, b), T - 1)
    return tuple(omega[k - 1] / k for k in range(1, T + 1))


def formal_log_series(curve: CurveSpec, T: int) -> list[Fraction]:
    """[c_1, ..., c_T] with lambda(z) = sum c_k z^k, c_1 = 1."""
    if T < 1:
        raise DomainError("need at least one term")
    return list(_formal_log(curve.a, curve.b, T))


def torsion_test(curve: CurveSpec, P: RationalPoint) -> bool:
    """True iff n*P = O for some n <= 12."""
    Q = P
    for _ in range(MAX_TORSION_ORDER):
        if Q.is_infinity:
            return True
        Q = point_add(curve, Q, P)
    return False


def reduce_to_formal_group(curve: CurveSpec, P: RationalPoint, p: int) -> tuple[RationalPoint, int]:
    """Return (Q, m) with Q = m*P in the kernel of reduction (v_p(-x/y) >= 1)."""
    n = count_points_mod_p(curve, p)
    Q = point_mul(curve, P, n)
    m = n
    while not Q.is_infinity and (Q.y == 0 or valuation(Q.x / Q.y, p) < 1):
        Q = point_mul(curve, Q, p)
        m *= p
    return Q, m


def elliptic_log(curve: CurveSpec, P: RationalPoint, p: int, N: int,
                 slack: int = DEFAULT_SLACK, self_check: bool = False) -> PadicScalar:
    """p-adic elliptic logarithm of a rational point, to absolute precision N.

    Torsion points (detected exactly) give the exact zero.
    """
    if not curve.contains(P):
        raise DomainError(f"point {P.to_json()} is not on the curve")
    curve.check_good_reduction(p)
    if P.is_infinity or torsion_test(curve, P):
        return PadicScalar.exact_zero(p)
    Q, m = reduce_to_formal_group(curve, P, p)
    if Q.is_infinity:
        return PadicScalar.exact_zero(p)
    value = _log_in_formal_group(curve, Q, p, N + slack + valuation(m, p)).scale(Fraction(1, m))
    if self_check:
        doubled = _log_in_formal_group(curve, point_add(curve, Q, Q), p, N + slack + valuation(m, p))
        if not doubled.scale(Fraction(1, m)).agrees_with(value.scale(2)):
            raise AssertionError("elliptic log failed the doubling self-check")
    return value.truncate(N)


def _log_in_formal_group(curve: CurveSpec, Q: RationalPoint, p: int, target: int) -> PadicScalar:
    z = -Q.x / Q.y
    e = valuation(z, p)
    T = series_terms(e, p, target)
    coeffs = formal_log_series(curve, T)
    zp = scalar_from_rational(z, p, target + e)
    total = PadicScalar.exact_zero(p)
    power = zp
    for k, c in enumerate(coeffs, start=1):
        if c:
            total = total + power.scale(c)
        if k < T:
            power = power * zp
    return total.truncate(target)

