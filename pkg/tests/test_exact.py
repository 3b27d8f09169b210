"""Exact integer linear algebra, polynomial utilities and factoring."""
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from oracle import fraction_det, fraction_rank
from padic_closure.errors import DomainError
from padic_closure.intlinalg import bareiss_det, bareiss_rank, hnf, integer_kernel, is_saturated, saturate
from padic_closure.polyutil import (
    discriminant,
    fp_factor_degrees,
    is_irreducible,
    sturm_real_roots,
)
from padic_closure.primes import MR_DETERMINISTIC_LIMIT, factor_rational, is_prime

matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=1, max_size=5))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_bareiss_rank_matches_fraction_oracle(rows):
    assert bareiss_rank(rows) == fraction_rank(rows)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(
    st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_det_matches_fraction_oracle(rows):
    assert bareiss_det(rows) == fraction_det(rows)


def test_bareiss_rank_example():
    assert bareiss_rank([[2, 3], [3, 2], [4, 9]]) == 2
    assert bareiss_rank([[Fraction(1, 2), 1], [1, 2]]) == 1


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_hnf_spans_same_lattice(rows):
    n = len(rows[0])
    H = hnf(rows, n)
    assert len(H) == fraction_rank(rows)
    # every original row is an integer combination of H: check via rank and pivots
    assert fraction_rank(list(H) + rows) == len(H)
    pivots = [next(j for j, x in enumerate(r) if x) for r in H]
    assert pivots == sorted(set(pivots))
    for i, r in enumerate(H):
        assert r[pivots[i]] > 0
        for above in H[:i]:
            assert 0 <= above[pivots[i]] < r[pivots[i]]


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_kernel_and_saturation(rows):
    n = len(rows[0])
    K = integer_kernel(rows, n)
    assert len(K) == n - fraction_rank(rows)
    for k in K:
        assert all(sum(a * b for a, b in zip(r, k)) == 0 for r in rows)
    S = saturate(rows, n)
    assert is_saturated(S, n)
    assert fraction_rank(list(S) + rows) == len(S) == fraction_rank(rows)


def test_saturation_example():
    assert saturate([[2, 4]], 2) == [(1, 2)]
    assert not is_saturated([[2, 4]], 2)


@pytest.mark.parametrize("f, disc", [
    ([-2, 0, 1], 8), ([-1, -1, 1], 5), ([-1, -1, 0, 1], -23), ([1, -3, 0, 1], 81)])
def test_discriminant(f, disc):
    assert discriminant(f) == disc
    x = sympy.Symbol("x")
    assert sympy.discriminant(sum(c * x ** i for i, c in enumerate(f)), x) == disc


@pytest.mark.parametrize("f", [
    (-2, 0, 1), (1, 0, 0, 0, 1), (-1, 0, 0, 0, 1), (-1, -1, 0, 1), (2, 0, 0, 0, 0, 1), (1, 1, 1, 1, 1),
    (4, 0, 0, 0, 1), (-1, 0, 0, 0, 0, 0, 1)])
def test_irreducibility_matches_sympy(f):
    x = sympy.Symbol("x")
    assert is_irreducible(f) == sympy.Poly(list(reversed(f)), x).is_irreducible


@pytest.mark.parametrize("f", [(-2, 0, 1), (2, 0, 1), (-1, -1, 0, 1), (1, -3, 0, 1), (1, 0, -4, 0, 1), (-3, 1, 0, 0, 1)])
def test_sturm_matches_sympy(f):
    x = sympy.Symbol("x")
    assert sturm_real_roots(list(f)) == len(sympy.real_roots(sympy.Poly(list(reversed(f)), x)))


@pytest.mark.parametrize("f, p", [((-2, 0, 1), 3), ((-2, 0, 1), 7), ((-1, -1, 0, 1), 5), ((1, -3, 0, 1), 7),
                                  ((1, 0, 0, 0, 1), 3)])
def test_distinct_degree_matches_sympy(f, p):
    x = sympy.Symbol("x")
    _, factors = sympy.factor_list(sum(c * x ** i for i, c in enumerate(f)), modulus=p)
    expected = sorted(sympy.degree(g, x) for g, e in factors for _ in range(e))
    assert sorted(fp_factor_degrees(list(f), p)) == expected


def test_factor_rational():
    assert factor_rational(Fraction(-12, 5)) == (-1, {2: 2, 3: 1, 5: -1})
    assert factor_rational(1001)[1] == {7: 1, 11: 1, 13: 1}
    big = 1000000007 * 998244353
    assert factor_rational(big)[1] == {998244353: 1, 1000000007: 1}


def test_is_prime_range():
    assert [n for n in range(50) if is_prime(n)] == list(sympy.primerange(0, 50))
    with pytest.raises(DomainError):
        is_prime(sympy.nextprime(MR_DETERMINISTIC_LIMIT))
