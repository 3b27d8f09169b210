import pytest

from padic_closure.errors import DomainError
from padic_closure.numberfield import (
    CERTIFIED,
    INCONCLUSIVE,
    FieldSpec,
    is_torsion_element,
    leopoldt_check,
    unit_check,
)

SQRT2 = (-2, 0, 1)
GOLDEN = (-1, -1, 1)


@pytest.mark.parametrize("f, r1, r2", [
    (SQRT2, 2, 0), ((2, 0, 1), 0, 1), ((-1, -1, 0, 1), 1, 1), ((1, -3, 0, 1), 3, 0), ((1, 0, 0, 0, 1), 0, 2)])
def test_signature(f, r1, r2):
    F = FieldSpec.from_poly(f)
    assert (F.r1, F.r2) == (r1, r2)
    assert F.unit_rank <= F.degree


def test_field_rejects_bad_polys():
    with pytest.raises(DomainError):
        FieldSpec.from_poly((-1, 0, 1))
    with pytest.raises(DomainError):
        FieldSpec.from_poly((1, 2))


def test_unit_check_examples():
    assert unit_check([1], SQRT2).ok
    chk = unit_check([0, 1], GOLDEN)
    assert chk.ok and chk.det == -1
    chk = unit_check([2], (-1, -1, 0, 1))
    assert not chk.ok and chk.det == 2 ** 3


def test_torsion_elements():
    assert is_torsion_element([-1], SQRT2)
    assert is_torsion_element([0, 1], (1, 0, 0, 0, 1))  # x is a primitive 8th root of unity
    assert not is_torsion_element([1, 1], SQRT2)


@pytest.mark.parametrize("f, units, p", [(SQRT2, [[1, 1]], 3), (GOLDEN, [[0, 1]], 7)])
def test_leopoldt_examples(f, units, p):
    v = leopoldt_check(FieldSpec.from_poly(f), units, p, 20)
    assert v.status == CERTIFIED and v.rank_lo == 1


def test_torsion_unit_is_inconclusive():
    v = leopoldt_check(FieldSpec.from_poly(SQRT2), [[-1]], 3, 20)
    assert v.status == INCONCLUSIVE and v.rank_lo == 0
    assert "guidance" in v.to_json()


def test_leopoldt_errors():
    F = FieldSpec.from_poly(SQRT2)
    with pytest.raises(DomainError, match="ramified"):
        leopoldt_check(F, [[1, 1]], 2, 20)
    with pytest.raises(DomainError, match="expected 1 units"):
        leopoldt_check(F, [[1, 1], [3, 2]], 3, 20)
    with pytest.raises(DomainError, match="not a unit"):
        leopoldt_check(F, [[2]], 3, 20)


@pytest.mark.parametrize("m", [2, 3])
def test_certified_stable_under_powers_and_sign(m):
    F = FieldSpec.from_poly(SQRT2)
    # (1 + x)^2 = 3 + 2x, (1 + x)^3 = 7 + 5x; the minus sign multiplies by torsion
    powered = {2: [3, 2], 3: [7, 5]}[m]
    for u in (powered, [-c for c in powered]):
        assert leopoldt_check(F, [u], 5, 20).certified
    assert leopoldt_check(F, [[1, 1]], 5, 40).certified
