from fractions import Fraction

import pytest

from padic_closure import properties
from padic_closure.cli import fixture_paths
from padic_closure.closure import DBracket, GroupSpec, MultiplicativeLine, NumberFieldTorus
from padic_closure.problem import ClosureProblem, load_problem
from padic_closure.properties import FAIL, Context, power_map, run_properties, self_product
from padic_closure.zprank import RankReport

CLOSURE = [p for p in fixture_paths() if isinstance(load_problem(p), ClosureProblem)]


def test_power_map():
    T = NumberFieldTorus((-2, 0, 1))
    G = GroupSpec((MultiplicativeLine(), T))
    [(q, u)] = power_map(G, [(Fraction(2, 3), (Fraction(1), Fraction(1)))], 2)
    assert q == Fraction(4, 9) and list(u) == [3, 2]


def test_self_product_shape():
    G = GroupSpec((MultiplicativeLine(),))
    spec, gens = self_product(G, [(Fraction(2),)])
    assert len(spec.components) == 2 and gens == [(2, 1), (1, 2)]


@pytest.mark.parametrize("path", CLOSURE, ids=lambda p: p.stem)
def test_fixture_properties(path):
    prob = load_problem(path)
    ctx = Context(prob.p, prob.precision or 20, prob.box or 2)
    _, results = run_properties(prob.spec, prob.generators, ctx)
    assert [r.name for r in results if not r.passed] == []
    assert {r.name for r in results} >= {"rank_axiom", "power_invariance", "product_additivity",
                                         "projection_inequality", "additive_exactness"}


def test_failures_are_reported(monkeypatch):
    """A bracket that breaks additivity must be caught, with the numbers echoed."""
    G = GroupSpec((MultiplicativeLine(),))
    gens = [(Fraction(2),)]
    ctx = Context(5, 20, 2)
    base = ctx.bracket(G, gens)
    fake = DBracket(1, 1, {}, True, RankReport(1), 1)
    monkeypatch.setattr(properties.Context, "bracket", lambda self, *a, **k: fake)
    result = properties.check_product_additivity(G, gens, ctx, base)
    assert result.status == FAIL and result.detail["expected"] == [2, 2]
