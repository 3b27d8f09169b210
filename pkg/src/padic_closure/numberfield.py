"""Leopoldt verification for units of an equation order Z[x]/(f).

Units are inputs.  For a full-rank system of units the p-adic log matrix
is computed in Q_p[x]/(f) and its Z_p-rank certified from below; reaching
the unit rank r1 + r2 - 1 proves dim(closure) = rk = d for that (K, p).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraElement, AlgebraModulus, algebra_unit_log
from .errors import DomainError
from .intlinalg import bareiss_det
from .padic import PadicScalar, DEFAULT_SLACK
from .polyutil import degree, is_irreducible, poly_gcd, derivative, poly_mul, poly_rem, sturm_real_roots, trim
from .primes import factor_rational
from .zprank import RankReport, zp_rank_lower

CERTIFIED = "CERTIFIED"
INCONCLUSIVE = "INCONCLUSIVE"


def real_root_count(f) -> tuple[int, int]:
    """(r1, r2) by Sturm sequences; f must be squarefree."""
    f = trim(list(f))
    if degree(poly_gcd(f, derivative(f))) > 0:
        raise DomainError(f"{f} is not squarefree")
    r1 = sturm_real_roots(f)
    return r1, (len(f) - 1 - r1) // 2


@dataclass(frozen=True)
class FieldSpec:
    f: tuple[int, ...]
    r1: int
    r2: int

    @classmethod
    def from_poly(cls, f) -> FieldSpec:
        f = tuple(int(c) for c in trim(list(f)))
        if len(f) < 2 or f[-1] != 1:
            raise DomainError(f"defining polynomial must be monic of degree >= 1, got {list(f)}")
        if not is_irreducible(f):
            raise DomainError(f"{list(f)} is reducible over Q")
        r1, r2 = real_root_count(f)
        return cls(f, r1, r2)

    def __post_init__(self):
        if self.r1 + 2 * self.r2 != self.degree:
            raise DomainError("r1 + 2 r2 must equal deg f")

    @property
    def degree(self) -> int:
        return len(self.f) - 1

    @property
    def unit_rank(self) -> int:
        return self.r1 + self.r2 - 1


@dataclass(frozen=True)
class UnitCheck:
    ok: bool
    det: int


def multiplication_matrix(u, f) -> list[list[int]]:
    """Matrix of multiplication by u on the power basis of Z[x]/(f)."""
    n = len(f) - 1
    cols = []
    for i in range(n):
        prod = poly_rem(poly_mul(list(u), [0] * i + [1]), list(f))
        prod = [Fraction(c) for c in prod] + [Fraction(0)] * (n - len(prod))
        cols.append(prod)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def unit_check(u, f) -> UnitCheck:
    """u is a unit of Z[x]/(f) iff its multiplication matrix has det +-1."""
    u = list(u)
    if len(trim(u)) > len(f) - 1:
        raise DomainError("unit polynomial must have degree < deg f")
    if any(Fraction(c).denominator != 1 for c in u):
        raise DomainError("unit polynomial must have integer coefficients")
    det = bareiss_det([[int(x) for x in row] for row in multiplication_matrix(u, f)])
    return UnitCheck(abs(det) == 1, det)


def _phi(m: int) -> int:
    out = m
    for q in factor_rational(m)[1]:
        out = out // q * (q - 1)
    return out


def is_torsion_element(u, f) -> bool:
    """Exact test for u being a root of unity in Q[x]/(f)."""
    u = [Fraction(c) for c in trim(list(u))]
    if not u:
        return False
    n = len(f) - 1
    orders = {m for m in range(1, 2 * n * n + 3) if n % _phi(m) == 0}
    power = [Fraction(1)]
    for m in range(1, max(orders) + 1):
        power = poly_rem(poly_mul(power, u), list(f))
        if m in orders and trim(power) == [1]:
            return True
    return False


@dataclass(frozen=True)
class LeopoldtVerdict:
    p: int
    status: str
    rank_lo: int
    unit_rank: int
    precision: int
    report: RankReport
    log_rows: tuple[tuple[PadicScalar, ...], ...]

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED

    def to_json(self) -> dict:
        out = {
            "p": self.p,
            "status": self.status,
            "rank_lo": self.rank_lo,
            "unit_rank": self.unit_rank,
            "precision": self.precision,
            "rank_report": self.report.to_json(),
            "log_rows": [[c.to_json() for c in row] for row in self.log_rows],
        }
        if not self.certified:
            out["guidance"] = f"raise the precision above N={self.precision}"
        return out


def unit_log_row(u, m: AlgebraModulus, N: int) -> tuple[PadicScalar, ...]:
    if is_torsion_element(u, m.f):
        return tuple(PadicScalar.exact_zero(m.p) for _ in range(m.n))
    log = algebra_unit_log(AlgebraElement.from_rationals(list(u), m), m)
    return log.truncate(N).coeffs


def leopoldt_check(field: FieldSpec, units, p: int, N: int, slack: int = DEFAULT_SLACK) -> LeopoldtVerdict:
    """Certify that the unit log matrix has Z_p-rank r1 + r2 - 1.

    Independence of the units is not assumed: a torsion or dependent system
    simply fails to certify and yields INCONCLUSIVE.
    """
    if field.unit_rank > field.degree:
        raise AssertionError("unit rank exceeds the torus dimension")
    m = AlgebraModulus(field.f, p, N + slack)
    units = [list(u) for u in units]
    if len(units) != field.unit_rank:
        raise DomainError(f"expected {field.unit_rank} units (r1 + r2 - 1), got {len(units)}")
    for idx, u in enumerate(units):
        chk = unit_check(u, field.f)
        if not chk.ok:
            raise DomainError(f"unit {idx} = {u} is not a unit of Z[x]/(f): |det| = {abs(chk.det)}")
    rows = tuple(unit_log_row(u, m, N) for u in units)
    report = zp_rank_lower([list(r) for r in rows], precision_used=N)
    status = CERTIFIED if report.rank_lo == field.unit_rank else INCONCLUSIVE
    return LeopoldtVerdict(p, status, report.rank_lo, field.unit_rank, N, report, rows)
