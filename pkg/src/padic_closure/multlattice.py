"""Exact multiplicative linear algebra for subgroups of G_m^n(Q).

A generator (g_1, ..., g_n) of Gamma is recorded by its exponent matrix
E[i][l] = v_l(g_i) over the primes l in the support.  Signs are torsion
and never enter a rank.

Subtori H <= G_m^n correspond to saturated sublattices V of Z^n (their
cocharacter lattices).  A point lies in H_V up to torsion exactly when
every prime column of its exponent matrix lies in V tensor Q.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .errors import DomainError
from .intlinalg import bareiss_rank, integer_kernel, saturate
from .primes import DEFAULT_TRIAL_BOUND, factor_rational as _factor


@dataclass(frozen=True)
class SupportVector:
    """Sign and prime exponents of a nonzero rational."""

    sign: int
    exps: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_rational(cls, q, bound: int = DEFAULT_TRIAL_BOUND) -> SupportVector:
        sign, exps = _factor(q, bound)
        return cls(sign, tuple(exps.items()))

    def exponent(self, prime: int) -> int:
        return dict(self.exps).get(prime, 0)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.exps)

    def value(self) -> Fraction:
        out = Fraction(self.sign)
        for q, e in self.exps:
            out *= Fraction(q) ** e
        return out


def factor_rational(q, bound: int = DEFAULT_TRIAL_BOUND) -> SupportVector:
    """Complete factorization of a nonzero rational as a SupportVector."""
    return SupportVector.from_rational(q, bound)


@dataclass(frozen=True)
class ExponentMatrix:
    n: int
    gens: tuple[tuple[SupportVector, ...], ...]
    support: tuple[int, ...] = field(default=())

    def __post_init__(self):
        for j, g in enumerate(self.gens):
            if len(g) != self.n:
                raise DomainError(f"generator {j} has {len(g)} coordinates, expected {self.n}")
        primes = sorted({q for g in self.gens for sv in g for q in sv.primes})
        object.__setattr__(self, "support", tuple(primes))

    @classmethod
    def from_rationals(cls, gens, n: int | None = None) -> ExponentMatrix:
        gens = [tuple(g) for g in gens]
        if n is None:
            n = len(gens[0]) if gens else 0
        return cls(n, tuple(tuple(SupportVector.from_rational(q) for q in g) for g in gens))

    @property
    def k(self) -> int:
        return len(self.gens)

    def gen_matrix(self, j: int) -> list[list[int]]:
        """n x |support| exponent matrix of generator j."""
        return [[sv.exponent(q) for q in self.support] for sv in self.gens[j]]

    def flat_rows(self) -> list[list[int]]:
        return [[e for row in self.gen_matrix(j) for e in row] for j in range(self.k)]

    def subset(self, gens: list[int]) -> ExponentMatrix:
        return ExponentMatrix(self.n, tuple(self.gens[j] for j in gens))

    def project(self, coords: list[int]) -> ExponentMatrix:
        return ExponentMatrix(len(coords), tuple(tuple(g[i] for i in coords) for g in self.gens))


@dataclass(frozen=True, order=True)
class SubspaceCandidate:
    """Saturated sublattice of Z^n in HNF: the cocharacters of a subtorus."""

    dim: int
    basis: tuple[tuple[int, ...], ...]
    n: int = field(compare=False)

    @classmethod
    def from_rows(cls, rows, n: int) -> SubspaceCandidate:
        basis = tuple(saturate(rows, n))
        return cls(len(basis), basis, n)

    @classmethod
    def zero(cls, n: int) -> SubspaceCandidate:
        return cls(0, (), n)

    @classmethod
    def full(cls, n: int) -> SubspaceCandidate:
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    def annihilator(self) -> list[tuple[int, ...]]:
        """Integer basis of the characters vanishing on this lattice."""
        return integer_kernel(self.basis, self.n) if self.basis else \
            [tuple(1 if i == j else 0 for j in range(self.n)) for i in range(self.n)]

    def join(self, other: SubspaceCandidate) -> SubspaceCandidate:
        return SubspaceCandidate.from_rows(list(self.basis) + list(other.basis), self.n)

    def contains(self, other: SubspaceCandidate) -> bool:
        return self.join(other) == self

    def to_json(self) -> dict:
        return {"type": "subtorus", "dim": self.dim, "basis": [list(r) for r in self.basis]}


def gamma_rank(M: ExponentMatrix) -> int:
    """rk Gamma: rank over Q of the flattened exponent data."""
    if M.k == 0 or not M.support:
        return 0
    return bareiss_rank(M.flat_rows())


def image_rank(M: ExponentMatrix, V: SubspaceCandidate) -> int:
    """Rank of the image of Gamma in G/H_V = rk Gamma - rk(Gamma cap H_V)."""
    if V.n != M.n:
        raise DomainError(f"candidate lives in Z^{V.n}, torus has dimension {M.n}")
    if M.k == 0 or not M.support:
        return 0
    ann = V.annihilator() if V.dim < V.n else []
    if not ann:
        return 0
    mats = [M.gen_matrix(j) for j in range(M.k)]
    rows = []
    for a in ann:
        for col in range(len(M.support)):
            rows.append([sum(a[i] * E[i][col] for i in range(M.n)) for E in mats])
    return bareiss_rank(rows)


def intersect_rank(M: ExponentMatrix, V: SubspaceCandidate) -> int:
    """rk(Gamma cap H_V).

    The solution space {c : sum c_j E_j has columns in V} also contains the
    relations among the generators; subtracting them leaves the rank of the
    intersection itself.
    """
    return gamma_rank(M) - image_rank(M, V)


def candidate_term(M: ExponentMatrix, V: SubspaceCandidate) -> int:
    """dim H + rk Gamma - rk(Gamma cap H) for H = H_V."""
    return V.dim + image_rank(M, V)


def _box_vectors(k: int, B: int):
    """c in [-B, B]^k, nonzero, first nonzero entry positive, with max |c_j|."""
    for c in product(range(-B, B + 1), repeat=k):
        nz = next((x for x in c if x), 0)
        if nz > 0:
            yield c, max(abs(x) for x in c)


def candidate_levels(M: ExponentMatrix, B: int, include_joins: bool = True,
                     max_candidates: int = 100_000) -> dict[SubspaceCandidate, int]:
    """Candidates mapped to the least box size at which each appears.

    Forced candidates (zero, full, coordinate sublattices) have level 1.
    """
    if B < 1:
        raise DomainError("box bound B must be >= 1")
    n = M.n
    levels: dict[SubspaceCandidate, int] = {}

    def add(V: SubspaceCandidate, level: int):
        old = levels.get(V)
        if old is None:
            if len(levels) >= max_candidates:
                raise DomainError(f"candidate cap {max_candidates} exceeded")
            levels[V] = level
        elif level < old:
            levels[V] = level

    add(SubspaceCandidate.zero(n), 1)
    add(SubspaceCandidate.full(n), 1)
    for r in range(1, n):
        for coords in combinations(range(n), r):
            add(SubspaceCandidate.from_rows([[1 if i == c else 0 for i in range(n)] for c in coords], n), 1)
    if M.k and M.support:
        mats = [M.gen_matrix(j) for j in range(M.k)]
        ncols = len(M.support)
        for c, level in _box_vectors(M.k, B):
            cols = [[sum(c[j] * mats[j][i][col] for j in range(M.k)) for i in range(n)]
                    for col in range(ncols)]
            add(SubspaceCandidate.from_rows(cols, n), level)
    if include_joins:
        base = sorted(levels.items())
        for (V1, l1), (V2, l2) in combinations(base, 2):
            if V1.dim == 0 or V2.dim == 0 or V1.dim == n or V2.dim == n:
                continue
            add(V1.join(V2), max(l1, l2))
    return levels


def enumerate_candidates(M: ExponentMatrix, B: int, include_joins: bool = True,
                         max_candidates: int = 100_000) -> list[SubspaceCandidate]:
    """Deterministic duplicate-free candidate list, ordered by (dim, HNF)."""
    return sorted(candidate_levels(M, B, include_joins, max_candidates))


def d_upper(M: ExponentMatrix, B: int = 2) -> tuple[int, SubspaceCandidate]:
    """Least term dim V + rk Gamma - rk(Gamma cap H_V) over the candidates.

    Every candidate is a genuine subtorus, so the result is an upper bound
    for d(Gamma).  The witness is the first achiever in canonical order.
    """
    best = None
    for V in enumerate_candidates(M, B):
        t = candidate_term(M, V)
        if best is None or t < best[0]:
            best = (t, V)
    return best

