"""Invariants of dimension functions, checked on a concrete problem.

Every check compares brackets computed by :func:`closure.d_bracket` on
derived problems (powers, products, projections, sub-lists) against the
bracket of the original problem.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .closure import (
    AdditiveLine,
    DBracket,
    GroupSpec,
    MultiplicativeLine,
    NumberFieldTorus,
    component_parts,
    coordinate_to_json,
    d_bracket,
    exact_rank,
    identity,
)
from .elliptic import point_mul
from .padic import DEFAULT_SLACK
from .polyutil import poly_mul, poly_rem

PASS, FAIL, SKIP = "pass", "fail", "skip"
POWERS = (2, 3)
MAX_SUBSETS = 64
MAX_DROPS = 8


@dataclass(frozen=True)
class Context:
    p: int
    N: int
    B: int
    slack: int = DEFAULT_SLACK
    threads: int = 1

    def bracket(self, spec: GroupSpec, gens, N: int | None = None, B: int | None = None) -> DBracket:
        return d_bracket(spec, list(gens), self.p, N or self.N, B or self.B, self.slack, threads=self.threads)


@dataclass
class PropertyResult:
    name: str
    status: str
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


def power_coordinate(comp, x, m: int):
    if isinstance(comp, AdditiveLine):
        return m * x
    if isinstance(comp, MultiplicativeLine):
        return x ** m
    if isinstance(comp, NumberFieldTorus):
        out = [Fraction(1)]
        for _ in range(m):
            out = poly_rem(poly_mul(out, list(x)), list(comp.f))
        return tuple(out) or (Fraction(0),)
    return point_mul(comp.curve, x, m)


def power_map(spec: GroupSpec, gens, m: int) -> list[tuple]:
    """Image of Gamma under x -> x^m (an isogeny with finite kernel)."""
    return [tuple(power_coordinate(c, x, m) for c, x in zip(spec.components, g)) for g in gens]


def self_product(spec: GroupSpec, gens) -> tuple[GroupSpec, list[tuple]]:
    """Gamma x Gamma inside G x G."""
    ids = tuple(identity(c) for c in spec.components)
    prod = GroupSpec(spec.components + spec.components)
    return prod, [tuple(g) + ids for g in gens] + [ids + tuple(g) for g in gens]


def _triple(b: DBracket) -> list:
    return [b.lo, b.hi, b.certified]


def _gens_json(spec, gens):
    return [[coordinate_to_json(c, x) for c, x in zip(spec.components, g)] for g in gens]


def check_rank_axiom(spec, gens, ctx, base) -> PropertyResult:
    detail = {"lo": base.lo, "hi": base.hi, "rank_upper": base.rank_upper}
    ok = 0 <= base.lo <= base.hi <= base.rank_upper
    rk = exact_rank(spec, gens)
    if rk is not None:
        detail["rank"] = rk
        ok = ok and base.rank_upper == rk
    return PropertyResult("rank_axiom", PASS if ok else FAIL, detail)


def check_power_invariance(spec, gens, ctx, base) -> PropertyResult:
    for m in POWERS:
        powered = power_map(spec, gens, m)
        other = ctx.bracket(spec, powered)
        if _triple(other) != _triple(base):
            return PropertyResult("power_invariance", FAIL, {
                "m": m, "expected": _triple(base), "got": _triple(other),
                "generators": _gens_json(spec, powered)})
    return PropertyResult("power_invariance", PASS, {"powers": list(POWERS)})


def check_product_additivity(spec, gens, ctx, base) -> PropertyResult:
    prod_spec, prod_gens = self_product(spec, gens)
    doubled = ctx.bracket(prod_spec, prod_gens)
    if [doubled.lo, doubled.hi] != [2 * base.lo, 2 * base.hi]:
        return PropertyResult("product_additivity", FAIL, {
            "case": "self-product", "expected": [2 * base.lo, 2 * base.hi], "got": [doubled.lo, doubled.hi]})
    detail = {"self_product": [doubled.lo, doubled.hi]}
    parts = component_parts(spec, gens)
    if len(parts) > 1:
        lo = hi = 0
        for idx in parts:
            sub = GroupSpec(tuple(spec.components[i] for i in idx))
            b = ctx.bracket(sub, [tuple(g[i] for i in idx) for g in gens])
            lo, hi = lo + b.lo, hi + b.hi
        detail["blocks"] = {"parts": parts, "sum": [lo, hi]}
        if [lo, hi] != [base.lo, base.hi]:
            return PropertyResult("product_additivity", FAIL, {
                "case": "blocks", "parts": parts, "expected": [base.lo, base.hi], "got": [lo, hi]})
    return PropertyResult("product_additivity", PASS, detail)


def _subsets(n: int):
    count = 0
    for size in range(1, n):
        for S in combinations(range(n), size):
            if count == MAX_SUBSETS:
                return
            count += 1
            yield S


def check_projection(spec, gens, ctx, base) -> PropertyResult:
    """dim Gamma <= dim H + dim(image in G/H) for H a product of components."""
    n = len(spec.components)
    if n < 2:
        return PropertyResult("projection_inequality", SKIP, {"reason": "single component"})
    tried = 0
    for S in _subsets(n):
        rest = [i for i in range(n) if i not in S]
        quotient = GroupSpec(tuple(spec.components[i] for i in rest))
        image = ctx.bracket(quotient, [tuple(g[i] for i in rest) for g in gens])
        dim_h = sum(spec.components[i].dim for i in S)
        tried += 1
        if base.lo > dim_h + image.hi:
            return PropertyResult("projection_inequality", FAIL, {
                "H": list(S), "dim_H": dim_h, "lo": base.lo, "quotient_hi": image.hi})
    return PropertyResult("projection_inequality", PASS, {"subgroups": tried})


def check_monotonicity(spec, gens, ctx, base) -> PropertyResult:
    """Dropping a generator cannot raise the dimension."""
    if not gens:
        return PropertyResult("monotonicity", SKIP, {"reason": "no generators"})
    for j in range(min(len(gens), MAX_DROPS)):
        sub = ctx.bracket(spec, gens[:j] + gens[j + 1:])
        if sub.lo > base.hi or (sub.certified and base.certified and sub.lo > base.lo):
            return PropertyResult("monotonicity", FAIL, {
                "dropped": j, "sub": [sub.lo, sub.hi], "full": [base.lo, base.hi]})
    return PropertyResult("monotonicity", PASS, {"sublists": min(len(gens), MAX_DROPS)})


def check_additive_exactness(spec, gens, ctx, base) -> PropertyResult:
    if any(not isinstance(c, AdditiveLine) for c in spec.components):
        return PropertyResult("additive_exactness", SKIP, {"reason": "not a vector group"})
    rk = exact_rank(spec, gens)
    ok = base.lo == base.hi == rk
    return PropertyResult("additive_exactness", PASS if ok else FAIL, {"rank": rk, "lo": base.lo, "hi": base.hi})


def check_precision_monotonicity(spec, gens, ctx, base) -> PropertyResult:
    finer = ctx.bracket(spec, gens, N=2 * ctx.N)
    ok = finer.lo >= base.lo and finer.hi == base.hi
    return PropertyResult("precision_monotonicity", PASS if ok else FAIL, {
        "N": ctx.N, "lo": base.lo, "lo_at_2N": finer.lo})


def check_box_monotonicity(spec, gens, ctx, base) -> PropertyResult:
    if any(not isinstance(c, MultiplicativeLine) for c in spec.components):
        return PropertyResult("box_monotonicity", SKIP, {"reason": "box search applies to split tori"})
    wider = ctx.bracket(spec, gens, B=ctx.B + 1)
    ok = wider.hi <= base.hi
    return PropertyResult("box_monotonicity", PASS if ok else FAIL, {
        "B": ctx.B, "hi": base.hi, "hi_at_B+1": wider.hi})


CHECKS = (
    check_rank_axiom,
    check_power_invariance,
    check_product_additivity,
    check_projection,
    check_monotonicity,
    check_additive_exactness,
    check_precision_monotonicity,
    check_box_monotonicity,
)


def run_properties(spec: GroupSpec, gens, ctx: Context) -> tuple[DBracket, list[PropertyResult]]:
    gens = list(gens)
    base = ctx.bracket(spec, gens)
    return base, [check(spec, gens, ctx, base) for check in CHECKS]
