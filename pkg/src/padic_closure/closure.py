"""Closure dimension and d-brackets for subgroups of products of simple groups.

A group is an ordered product of components: G_a, G_m, Res_{K/Q} G_m (given
by a monic f) and elliptic curves.  The log of a generator is assembled
componentwise; its Z_p-rank is certified from below (``lo``), while an
algebraic search bounds d(Gamma) from above (``hi``).  Since
lo <= dim(closure) <= d(Gamma) <= hi, lo == hi settles both.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraElement, AlgebraModulus, algebra_unit_log
from .dsearch import SearchPolicy, search_d_upper
from .elliptic import CurveSpec, RationalPoint, elliptic_log, torsion_test
from .errors import DomainError
from .intlinalg import bareiss_rank
from .multlattice import ExponentMatrix, gamma_rank
from .numberfield import FieldSpec, is_torsion_element, unit_check
from .padic import DEFAULT_SLACK, PadicScalar, scalar_from_rational, unit_log, valuation
from .polyutil import degree, fp_xgcd, trim
from .zprank import RankReport, zp_rank_lower

PRODUCT_ONLY = "product-candidates-only"


@dataclass(frozen=True)
class AdditiveLine:
    kind = "additive"
    dim = 1

    def to_json(self):
        return {"type": self.kind}


@dataclass(frozen=True)
class MultiplicativeLine:
    kind = "multiplicative"
    dim = 1

    def to_json(self):
        return {"type": self.kind}


@dataclass(frozen=True)
class NumberFieldTorus:
    f: tuple[int, ...]
    kind = "number_field_torus"

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(int(c) for c in self.f))
        FieldSpec.from_poly(self.f)

    @property
    def dim(self) -> int:
        return len(self.f) - 1

    def to_json(self):
        return {"type": self.kind, "f": list(self.f)}


@dataclass(frozen=True)
class EllipticCurve:
    a: Fraction
    b: Fraction
    kind = "elliptic_curve"
    dim = 1

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        CurveSpec(self.a, self.b)

    @property
    def curve(self) -> CurveSpec:
        return CurveSpec(self.a, self.b)

    def to_json(self):
        return {"type": self.kind, "a": _fmt(self.a), "b": _fmt(self.b)}


Component = AdditiveLine | MultiplicativeLine | NumberFieldTorus | EllipticCurve


def _fmt(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class GroupSpec:
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise DomainError("a group needs at least one component")

    @property
    def dim(self) -> int:
        return sum(c.dim for c in self.components)

    def to_json(self):
        return [c.to_json() for c in self.components]


def identity(comp):
    """Identity element of a component, in generator format."""
    if isinstance(comp, AdditiveLine):
        return Fraction(0)
    if isinstance(comp, MultiplicativeLine):
        return Fraction(1)
    if isinstance(comp, NumberFieldTorus):
        return (Fraction(1),)
    return RationalPoint()


def coordinate_to_json(comp, x):
    if isinstance(comp, (AdditiveLine, MultiplicativeLine)):
        return _fmt(x)
    if isinstance(comp, NumberFieldTorus):
        return [_fmt(c) for c in x]
    return x.to_json()


def is_torsion_coordinate(comp, x) -> bool:
    """Exact torsion test for one coordinate."""
    if isinstance(comp, AdditiveLine):
        return x == 0
    if isinstance(comp, MultiplicativeLine):
        return abs(x) == 1
    if isinstance(comp, NumberFieldTorus):
        return is_torsion_element(x, comp.f)
    return x.is_infinity or torsion_test(comp.curve, x)


def is_torsion_generator(spec: GroupSpec, g) -> bool:
    return all(is_torsion_coordinate(c, x) for c, x in zip(spec.components, g))


# -- membership -------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    generator: int
    component: int
    reason: str

    def to_json(self):
        return {"generator": self.generator, "component": self.component, "reason": self.reason}


@dataclass(frozen=True)
class MembershipResult:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self):
        return {"ok": self.ok, "violations": [v.to_json() for v in self.violations]}


def _nf_residue_unit(x, f, p) -> str | None:
    coeffs = [Fraction(c) for c in x]
    if any(c != 0 and valuation(c, p) < 0 for c in coeffs):
        return "coefficients are not p-integral"
    res = [c.numerator * pow(c.denominator, -1, p) % p for c in coeffs]
    g, _, _ = fp_xgcd(res, list(f), p)
    if degree(g) != 0:
        return "residue is not invertible in F_p[x]/(f)"
    return None


def membership_check(spec: GroupSpec, generators, p: int) -> MembershipResult:
    """Check that every generator lies in G(Q_p)_f, the domain of log."""
    violations = []
    for j, g in enumerate(generators):
        if len(g) != len(spec.components):
            raise DomainError(f"generator {j} has {len(g)} coordinates, group has {len(spec.components)}")
        for i, (comp, x) in enumerate(zip(spec.components, g)):
            reason = None
            if isinstance(comp, MultiplicativeLine):
                if x == 0:
                    reason = "zero is not in G_m"
                elif valuation(x, p) != 0:
                    reason = f"valuation {valuation(x, p)} (G_m needs a p-adic unit)"
            elif isinstance(comp, NumberFieldTorus):
                if not trim(list(x)):
                    reason = "zero is not in the torus"
                elif len(trim(list(x))) > comp.dim:
                    reason = f"element has more than {comp.dim} coefficients"
                else:
                    reason = _nf_residue_unit(x, comp.f, p)
            elif isinstance(comp, EllipticCurve):
                if not comp.curve.contains(x):
                    reason = "point is not on the curve"
            if reason:
                violations.append(Violation(j, i, reason))
    return MembershipResult(tuple(violations))


# -- log matrix -------------------------------------------------------------

def _component_log(comp, x, p: int, N: int, slack: int) -> list[PadicScalar]:
    if is_torsion_coordinate(comp, x):
        return [PadicScalar.exact_zero(p) for _ in range(comp.dim)]
    if isinstance(comp, AdditiveLine):
        return [scalar_from_rational(x, p, N)]
    if isinstance(comp, MultiplicativeLine):
        return [unit_log(scalar_from_rational(x, p, N + slack)).truncate(N)]
    if isinstance(comp, NumberFieldTorus):
        m = AlgebraModulus(comp.f, p, N + slack)
        log = algebra_unit_log(AlgebraElement.from_rationals(list(x), m), m)
        return list(log.truncate(N).coeffs)
    return [elliptic_log(comp.curve, x, p, N, slack)]


def log_matrix(spec: GroupSpec, generators, p: int, N: int, slack: int = DEFAULT_SLACK,
               threads: int = 1) -> list[list[PadicScalar]]:
    """Rows of log(generator) in Lie G, componentwise, to absolute precision N."""
    check = membership_check(spec, generators, p)
    if not check.ok:
        v = check.violations[0]
        raise DomainError(f"generator {v.generator}, component {v.component}: {v.reason}")

    def row(g):
        out = []
        for comp, x in zip(spec.components, g):
            out.extend(_component_log(comp, x, p, N, slack))
        return out

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(row, generators))
    return [row(g) for g in generators]


# -- brackets ---------------------------------------------------------------

@dataclass(frozen=True)
class DBracket:
    lo: int
    hi: int
    witness: dict
    certified: bool
    rank_report: RankReport
    rank_upper: int
    flags: tuple[str, ...] = ()
    audit: dict | None = None

    def to_json(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "certified": self.certified,
            "witness": self.witness,
            "rank_upper": self.rank_upper,
            "flags": list(self.flags),
            "audit": self.audit,
        }


def _blocks(spec: GroupSpec, idx: list[int] | None = None) -> list[tuple[str, list[int]]]:
    """Group component indices: all G_m together, all G_a together, others alone."""
    idx = list(range(len(spec.components))) if idx is None else idx
    comps = spec.components
    blocks = []
    gm = [i for i in idx if isinstance(comps[i], MultiplicativeLine)]
    ga = [i for i in idx if isinstance(comps[i], AdditiveLine)]
    if gm:
        blocks.append(("multiplicative", gm))
    if ga:
        blocks.append(("additive", ga))
    for i in idx:
        if isinstance(comps[i], NumberFieldTorus):
            blocks.append(("number_field_torus", [i]))
        elif isinstance(comps[i], EllipticCurve):
            blocks.append(("elliptic_curve", [i]))
    return blocks


def component_parts(spec: GroupSpec, generators) -> list[list[int]]:
    """Connected components of the graph linking two components whenever
    some generator is non-torsion in both.  Gamma is commensurable with the
    product of its projections onto these parts."""
    n = len(spec.components)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g in generators:
        live = [i for i, (c, x) in enumerate(zip(spec.components, g)) if not is_torsion_coordinate(c, x)]
        for a, b in zip(live, live[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    parts: dict[int, list[int]] = {}
    for i in range(n):
        parts.setdefault(find(i), []).append(i)
    return [parts[r] for r in sorted(parts)]


def _project(generators, idx):
    return [tuple(g[i] for i in idx) for g in generators]


def exact_rank(spec: GroupSpec, generators) -> int | None:
    """rk Gamma when it is exactly computable (pure G_m or pure G_a), else None."""
    kinds = {c.kind for c in spec.components}
    if kinds == {"multiplicative"}:
        return gamma_rank(ExponentMatrix.from_rationals(generators, n=len(spec.components))) if generators else 0
    if kinds == {"additive"}:
        return bareiss_rank([[Fraction(x) for x in g] for g in generators]) if generators else 0
    return None


def rank_upper_bound(spec: GroupSpec, generators) -> int:
    """Exact rk Gamma where available, otherwise the non-torsion generator count."""
    rk = exact_rank(spec, generators)
    if rk is not None:
        return rk
    return sum(1 for g in generators if not is_torsion_generator(spec, g))


def _block_hi(kind, comps, gens, policy: SearchPolicy):
    """(upper bound for d of the projected subgroup, witness, audit)."""
    nontorsion = [g for g in gens if not all(is_torsion_coordinate(c, x) for c, x in zip(comps, g))]
    if kind == "multiplicative":
        M = ExponentMatrix.from_rationals(gens, n=len(comps))
        bound, witness, audit = search_d_upper(M, policy)
        return bound, witness.to_json(), audit.to_json()
    if kind == "additive":
        r = bareiss_rank([[Fraction(x) for x in g] for g in gens]) if gens else 0
        return r, {"type": "vector_group", "H": "0"}, None
    comp = comps[0]
    if kind == "number_field_torus":
        k = len(nontorsion)
        field = FieldSpec.from_poly(comp.f)
        integral_units = all(
            all(Fraction(c).denominator == 1 for c in g[0]) and unit_check([int(c) for c in g[0]], comp.f).ok
            for g in nontorsion
        )
        if integral_units and field.unit_rank < min(k, comp.dim):
            return field.unit_rank, {"type": "torus", "H": "0", "reason": "rk Gamma <= unit rank"}, None
        if comp.dim < k:
            return comp.dim, {"type": "torus", "H": "T"}, None
        return k, {"type": "torus", "H": "0"}, None
    # elliptic curve: the only positive-dimensional subgroup scheme is E itself
    if nontorsion:
        return 1, {"type": "elliptic", "H": "E"}, None
    return 0, {"type": "elliptic", "H": "0"}, None


_TRIVIAL = {"type": "trivial", "H": "0", "reason": "d <= rk Gamma"}


def _part_hi(spec: GroupSpec, generators, idx: list[int], policy: SearchPolicy):
    comps = [spec.components[i] for i in idx]
    gens = _project(generators, idx)
    sub = GroupSpec(tuple(comps))
    cap = rank_upper_bound(sub, gens)
    blocks = _blocks(spec, idx)
    if len(blocks) == 1:
        hi, witness, audit = _block_hi(blocks[0][0], comps, gens, policy)
    else:
        hi, factors, audit = 0, [], None
        for kind, bidx in blocks:
            h, w, _ = _block_hi(kind, [spec.components[i] for i in bidx], _project(generators, bidx), policy)
            hi += h
            factors.append({"components": bidx, "hi": h, "witness": w})
        witness = {"type": "product", "factors": factors}
    if cap < hi:
        hi, witness = cap, dict(_TRIVIAL)
    return hi, witness, audit, cap


def d_bracket(spec: GroupSpec, generators, p: int, N: int, B: int = 2,
              slack: int = DEFAULT_SLACK, policy: SearchPolicy | None = None,
              threads: int = 1) -> DBracket:
    """Certified lower bound and algebraic upper bound for dim(closure) and d.

    Mixed groups are split into parts on which Gamma is (up to finite
    index) a product; within a part only product subgroups are tried.
    """
    policy = policy or SearchPolicy(box=B, threads=threads)
    rows = log_matrix(spec, generators, p, N, slack, threads)
    report = zp_rank_lower(rows, precision_used=N)
    lo = report.rank_lo

    flags: tuple[str, ...] = ()
    if len(_blocks(spec)) == 1:
        hi, witness, audit, rank_upper = _part_hi(spec, generators, list(range(len(spec.components))), policy)
    else:
        flags = (PRODUCT_ONLY,)
        hi, rank_upper, factors, audit = 0, 0, [], None
        for idx in component_parts(spec, generators):
            h, w, _, cap = _part_hi(spec, generators, idx, policy)
            hi += h
            rank_upper += cap
            factors.append({"components": idx, "hi": h, "witness": w})
        witness = factors[0]["witness"] if len(factors) == 1 else {"type": "product", "factors": factors}
    if lo > hi:
        raise AssertionError(f"soundness violation: certified lower bound {lo} exceeds upper bound {hi}")
    return DBracket(lo, hi, witness, lo == hi, report, rank_upper, flags, audit)
