from fractions import Fraction

import pytest

from padic_closure.closure import (
    PRODUCT_ONLY,
    AdditiveLine,
    EllipticCurve,
    GroupSpec,
    MultiplicativeLine,
    NumberFieldTorus,
    component_parts,
    d_bracket,
    log_matrix,
    membership_check,
)
from padic_closure.elliptic import RationalPoint
from padic_closure.errors import DomainError
from padic_closure.padic import scalar_from_rational, unit_log

F = Fraction
GM, GA = MultiplicativeLine(), AdditiveLine()
E = EllipticCurve(0, -2)
P = RationalPoint.affine(3, 5)
SQRT2 = NumberFieldTorus((-2, 0, 1))


def test_group_spec():
    assert GroupSpec([GM, GA, SQRT2, E]).dim == 5
    with pytest.raises(DomainError):
        GroupSpec([])
    with pytest.raises(DomainError):
        EllipticCurve(-3, 2)
    with pytest.raises(DomainError):
        NumberFieldTorus((-1, 0, 1))


def test_membership_examples():
    assert membership_check(GroupSpec([GM]), [(F(2),)], 5).ok
    bad = membership_check(GroupSpec([GM]), [(F(5),)], 5)
    assert not bad.ok and "valuation 1" in bad.violations[0].reason
    assert membership_check(GroupSpec([SQRT2]), [((F(0), F(1)),)], 3).ok
    bad = membership_check(GroupSpec([SQRT2]), [((F(3), F(3)),)], 3)
    assert bad.violations[0].to_json() == {"generator": 0, "component": 0, "reason": bad.violations[0].reason}
    assert not membership_check(GroupSpec([E]), [(RationalPoint.affine(1, 1),)], 5).ok
    assert membership_check(GroupSpec([GA, E]), [(F(5), P)], 5).ok


def test_log_matrix_examples():
    [[x]] = log_matrix(GroupSpec([GA]), [(F(1),)], 5, 10)
    assert x.lift() == 1
    [[z]] = log_matrix(GroupSpec([GM]), [(F(-1),)], 5, 10)
    assert z.is_exact_zero
    rows = log_matrix(GroupSpec([GM, GM]), [(F(2), F(1)), (F(3), F(1)), (F(6), F(5))], 7, 10)
    assert rows[0][1].is_exact_zero and rows[1][1].is_exact_zero
    assert rows[2][0].agrees_with(rows[0][0] + rows[1][0])
    assert rows[2][1].agrees_with(unit_log(scalar_from_rational(5, 7, 18)).truncate(10))


def test_log_matrix_rejects_nonmembers():
    with pytest.raises(DomainError, match="valuation"):
        log_matrix(GroupSpec([GM]), [(F(7),)], 7, 10)


def test_dbracket_examples():
    G = GroupSpec([GM, GM])
    b = d_bracket(G, [(F(2), F(3))], 5, 20)
    assert (b.lo, b.hi, b.certified) == (1, 1, True)
    b = d_bracket(G, [(F(2), F(1)), (F(3), F(1)), (F(6), F(5))], 7, 20, B=1)
    assert (b.lo, b.hi, b.certified) == (2, 2, True)
    assert b.witness == {"type": "subtorus", "dim": 1, "basis": [[1, 0]]}
    b = d_bracket(G, [(F(-1), F(1))], 5, 20)
    assert (b.lo, b.hi) == (0, 0)


def test_number_field_upper_bound_uses_unit_rank():
    # x^3 - x - 1 has unit rank 1; two integral units give rk <= 1
    T = NumberFieldTorus((-1, -1, 0, 1))
    gens = [((F(0), F(1)),), ((F(1), F(1)),)]  # x and 1 + x = x^3 are both units
    b = d_bracket(GroupSpec([T]), gens, 5, 20)
    assert b.hi == 1 and b.lo == 1
    # a non-unit (p-adic unit only) drops the unit-rank bound
    b = d_bracket(GroupSpec([T]), [((F(2),),), ((F(0), F(1)),)], 5, 20)
    assert b.hi == 2


def test_elliptic_bracket():
    b = d_bracket(GroupSpec([E]), [(P,), (RationalPoint(),)], 5, 10)
    assert (b.lo, b.hi) == (1, 1)
    b = d_bracket(GroupSpec([E]), [(P,), (RationalPoint.affine(Fraction(129, 100), Fraction(-383, 1000)),)], 11, 10)
    assert (b.lo, b.hi, b.rank_upper) == (1, 1, 2)


def test_mixed_is_flagged():
    b = d_bracket(GroupSpec([GM, E]), [(F(2), P), (F(3), RationalPoint())], 5, 20)
    assert PRODUCT_ONLY in b.flags and (b.lo, b.hi) == (2, 2)


def test_component_parts():
    G = GroupSpec([GM, GA, GM])
    assert component_parts(G, [(F(2), F(0), F(-1)), (F(1), F(1), F(3))]) == [[0], [1, 2]]


@pytest.mark.parametrize("threads", [1, 4])
def test_threads_identical(threads):
    G = GroupSpec([GM, GM, E])
    gens = [(F(2), F(3), P), (F(3), F(2), RationalPoint())]
    assert d_bracket(G, gens, 5, 20, threads=threads).to_json() == d_bracket(G, gens, 5, 20).to_json()
