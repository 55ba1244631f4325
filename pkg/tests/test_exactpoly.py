from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cspec import AlgebraError, ContractError, InputError
from cspec.exactpoly import (
    H_POLY,
    IntPolynomial,
    RationalInterval,
    cauchy_bound,
    descartes_sign_changes,
    exact_divide,
    factor_trinomial,
    iter_theta_pairs,
    min_poly_perron,
    perron_roots_equal,
    primitive_gcd,
    squarefree_part,
    sturm_count,
    theta_polynomial,
    trinomial,
    trinomial_is_reducible,
)

X = sympy.Symbol("x")


def P(*coeffs_high_first: int) -> IntPolynomial:
    return IntPolynomial(list(reversed(coeffs_high_first)))


def to_sympy(p: IntPolynomial) -> sympy.Poly:
    return sympy.Poly(list(reversed([p[i] for i in range(p.degree + 1)])) or [0], X)


polys = st.lists(st.integers(-6, 6), min_size=1, max_size=8).map(IntPolynomial)


def test_arithmetic_examples():
    f31 = P(1, 0, -1, -1)
    assert H_POLY * f31 == P(1, -1, 0, 0, 0, -1)
    assert exact_divide(P(1, -1, 0, 0, 0, -1), H_POLY) == f31
    assert f31.compose_power(2) == P(1, 0, 0, 0, -1, 0, -1)


def test_exact_divide_errors():
    with pytest.raises(AlgebraError):
        exact_divide(P(1, 0, -2), P(1, -1))
    with pytest.raises(InputError):
        exact_divide(P(1, 0, -2), IntPolynomial())


def test_gcd_examples():
    f54, f31 = trinomial(5, 4), trinomial(3, 1)
    assert primitive_gcd(f54, f31) == f31
    p = P(2, 0, -4)
    assert primitive_gcd(p, p) == P(1, 0, -2)
    assert primitive_gcd(P(1, 0, -2), H_POLY) == P(1)


def test_descartes_examples():
    assert descartes_sign_changes(P(1, 0, 0, -1, 0, -1, 0, 0)) == 1
    assert descartes_sign_changes(H_POLY) == 2
    assert descartes_sign_changes(IntPolynomial.monomial(5)) == 0


def test_sturm_examples():
    assert sturm_count(P(1, 0, -2), RationalInterval(1, 2)) == 1
    assert sturm_count(P(1, 0, -1, -1), RationalInterval(1, 2)) == 1
    assert sturm_count(H_POLY, RationalInterval(-10, 10)) == 0


def test_factor_trinomial_examples():
    f = factor_trinomial(5, 4)
    assert not f.irreducible and f.cofactor == P(1, 0, -1, -1)
    assert factor_trinomial(3, 1).irreducible
    g = factor_trinomial(10, 8)
    assert g.d == 2 and g.cofactor == P(1, 0, 0, 0, -1, 0, -1)
    assert factor_trinomial(2, 1).irreducible
    with pytest.raises(InputError):
        factor_trinomial(3, 3)
    with pytest.raises(InputError):
        factor_trinomial(3, 0)


def test_min_poly_examples():
    assert min_poly_perron(7, 2, 2) == P(1, 0, 0, 0, 0, -2)
    assert min_poly_perron(7, 0, 3) == trinomial(7, 3)
    assert min_poly_perron(10, 0, 8) == P(1, 0, 0, 0, -1, 0, -1)
    with pytest.raises(InputError):
        min_poly_perron(11, 1, 9)


def test_perron_roots_equal_examples():
    p = P(1, 0, -1, 0, -1, -1)
    assert perron_roots_equal(p, p)
    assert not perron_roots_equal(trinomial(7, 3), trinomial(7, 4))
    assert not perron_roots_equal(P(1, 0, -2), P(1, 0, 0, 0, -2))
    with pytest.raises(ContractError):
        perron_roots_equal(P(1, 0, -4), P(1, -1))


def test_trinomial_criterion_matches_sympy_factoring():
    # frozen oracle: sympy factor_list over Q for every k <= 14
    for k in range(2, 15):
        for m in range(1, k):
            factors = sympy.factor_list(X**k - X**m - 1)[1]
            reducible = len(factors) > 1 or factors[0][1] > 1
            assert trinomial_is_reducible(k, m) == reducible, (k, m)


def test_trinomial_identity_up_to_60():
    for k in range(2, 61):
        for m in range(1, k):
            f = factor_trinomial(k, m)
            if not f.irreducible:
                assert f.cofactor * H_POLY.compose_power(f.d) == trinomial(k, m)


def test_min_poly_divides_and_is_irreducible():
    for n in range(3, 41):
        for a, b in iter_theta_pairs(n):
            q = min_poly_perron(n, a, b)
            exact_divide(theta_polynomial(n, a, b), q)
    # sympy irreducibility spot check over all n <= 14
    for n in range(3, 15):
        for a, b in iter_theta_pairs(n):
            assert to_sympy(min_poly_perron(n, a, b)).is_irreducible, (n, a, b)


def test_theta_pairs_constraints():
    pairs = list(iter_theta_pairs(7))
    assert (0, 3) in pairs and (1, 2) in pairs and (2, 3) in pairs and (2, 4) not in pairs
    assert all(7 > b >= a >= 0 and 7 >= a + b + 2 for a, b in pairs)


@settings(max_examples=300, deadline=None)
@given(polys, polys)
def test_gcd_matches_sympy(p, q):
    if p.is_zero() and q.is_zero():
        return
    g = primitive_gcd(p, q)
    expected = sympy.gcd(to_sympy(p), to_sympy(q))
    got = to_sympy(g)
    assert sympy.div(got, expected)[1].is_zero and sympy.div(expected, got)[1].is_zero


@settings(max_examples=300, deadline=None)
@given(polys, polys.filter(lambda q: not q.is_zero()))
def test_multiply_then_divide(p, q):
    assert exact_divide(p * q, q) == p


@settings(max_examples=1000, deadline=None)
@given(polys.filter(lambda p: p.degree >= 1))
def test_descartes_bounds_sturm(p):
    sq = squarefree_part(p)
    _, core = sq.strip_x()
    if core.degree < 1:
        return
    positive = sturm_count(core, RationalInterval(0, cauchy_bound(core)))
    v = descartes_sign_changes(core)
    assert v >= positive and (v - positive) % 2 == 0


@settings(max_examples=300, deadline=None)
@given(polys.filter(lambda p: p.degree >= 1))
def test_sturm_matches_sympy_root_count(p):
    b = cauchy_bound(p)
    iv = RationalInterval(-b, b)
    expected = len(set(to_sympy(p).real_roots()))
    assert sturm_count(p, iv) == expected


@settings(max_examples=200, deadline=None)
@given(polys)
def test_json_round_trip(p):
    assert IntPolynomial.from_json(p.to_json()) == p


def test_interval_operations():
    a = RationalInterval(Fraction(1), Fraction(3, 2))
    b = RationalInterval(Fraction(5, 4), Fraction(2))
    assert a.intersect(b) == RationalInterval(Fraction(5, 4), Fraction(3, 2))
    assert RationalInterval(0, 1).strictly_below(RationalInterval(1, 2))
    assert RationalInterval.from_json(a.to_json()) == a
    assert RationalInterval.point(1).is_point
