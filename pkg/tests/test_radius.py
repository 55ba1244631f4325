from __future__ import annotations

import json
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cspec import CapabilityError, ContractError
from cspec.digraph import (
    complete_digraph,
    directed_cycle,
    directed_path,
    from_arc_list,
    induced_subdigraph,
    strongly_connected_components,
)
from cspec.exactpoly import IntPolynomial, RationalInterval
from cspec.families import Infinity, Theta, Type1a, Type1b, build
from cspec.radius import (
    AlgebraicRadius,
    Order,
    certify_comparison,
    char_poly,
    check_comparison,
    check_isolation,
    collatz_wielandt_interval,
    compare_radii,
    perron_root,
    refine_root,
    spectral_radius,
)

import oracles


def P(*coeffs_high_first: int) -> IntPolynomial:
    return IntPolynomial(list(reversed(coeffs_high_first)))


def coeffs_high_first(p: IntPolynomial) -> tuple[int, ...]:
    return tuple(p[i] for i in range(p.degree, -1, -1))


@st.composite
def sc_digraphs(draw, max_n: int = 8):
    n = draw(st.integers(2, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    p = draw(st.floats(0.0, 0.6))
    return from_arc_list(n, oracles.random_sc_arcs(random.Random(seed), n, p))


# 1.193859111321... is the real root of x^5 - x^2 - 1, frozen from
# a Fraction bisection to 2^-60 (see test_bisection_oracle_value).
INF35 = 1.1938591113217


def test_bisection_oracle_value():
    f = lambda x: x**5 - x**2 - 1
    lo, hi = oracles.bisect_root(f, Fraction(1), Fraction(2), Fraction(1, 2**60))
    assert abs(float(lo) - INF35) < 1e-12


def test_char_poly_examples():
    assert char_poly(directed_cycle(3)) == P(1, 0, 0, -1)
    assert char_poly(build(Infinity(3, 5))) == P(1, 0, 0, -1, 0, -1, 0, 0)
    assert char_poly(build(Theta(0, 2, 1))) == P(1, 0, 0, -1, 0, -1)
    assert char_poly(complete_digraph(4)) == P(1, 0, -6, -8, -3)


def test_char_poly_limit():
    with pytest.raises(CapabilityError):
        char_poly(directed_cycle(65))
    assert char_poly(directed_cycle(65), max_n=None) == IntPolynomial.monomial(65) - 1


def test_collatz_wielandt_examples():
    assert collatz_wielandt_interval(directed_cycle(4), iterations=3) == RationalInterval.point(1)
    assert collatz_wielandt_interval(from_arc_list(1, [])) == RationalInterval.point(0)
    cw = collatz_wielandt_interval(build(Infinity(3, 5)), iterations=200)
    assert cw.width < Fraction(1, 10**9)
    assert cw.contains(Fraction(INF35).limit_denominator(10**12)) or abs(float(cw.midpoint) - INF35) < 1e-9
    with pytest.raises(ContractError):
        collatz_wielandt_interval(directed_path(3))


def test_refine_root_examples():
    iv = refine_root(P(1, 0, -2), RationalInterval(1, 2), Fraction(1, 1024))
    assert iv.width <= Fraction(1, 1024) and iv.lo ** 2 < 2 <= iv.hi ** 2
    iv = refine_root(P(1, 0, 0, -1, 0, -1), RationalInterval(1, 2), Fraction(1, 10**12))
    assert iv.width <= Fraction(1, 10**12) and float(iv.lo) <= INF35 <= float(iv.hi) + 1e-12
    assert refine_root(P(1, -1), RationalInterval.point(1), Fraction(1, 2)) == RationalInterval.point(1)
    with pytest.raises(ContractError):
        refine_root(P(1, 0, -2), RationalInterval(-2, 2), Fraction(1, 8))


def test_spectral_radius_examples():
    assert spectral_radius(from_arc_list(1, [])) == AlgebraicRadius.zero()
    assert spectral_radius(directed_cycle(7)) == AlgebraicRadius.one()
    rho = spectral_radius(build(Infinity(2, 8)))
    # numpy.roots on x^8 - x^6 - 1
    assert abs(rho.approx - 1.1748521477605665) < 1e-12
    assert rho.isolating.width <= Fraction(1, 2**40)
    assert spectral_radius(complete_digraph(4)).exact_value == 3


def test_compare_examples():
    a, b = spectral_radius(build(Infinity(5, 5))), spectral_radius(build(Infinity(4, 6)))
    assert compare_radii(a, b) is Order.LESS
    assert compare_radii(b, a) is Order.GREATER
    c, d = spectral_radius(build(Type1a(2, 4))), spectral_radius(build(Type1b(2, 4)))
    assert compare_radii(c, d) is Order.EQUAL
    assert compare_radii(AlgebraicRadius.one(), AlgebraicRadius.zero()) is Order.GREATER


def test_equal_roots_with_different_defining_polys():
    # sqrt 2 as a root of x^2 - 2 and of (x^2 - 2)(x^3 - x - 1)
    a = perron_root(P(1, 0, -2))
    b = perron_root(P(1, 0, -2) * P(1, 0, -1, -1))
    cert = certify_comparison(a, b)
    assert cert.order is Order.EQUAL and cert.common_factor == P(1, 0, -2)
    assert check_comparison(json.loads(json.dumps(cert.to_json())))


def test_comparison_certificate_tampering_detected():
    a, b = perron_root(P(1, 0, -2)), perron_root(P(1, 0, -3))
    cert = certify_comparison(a, b).to_json()
    assert cert["order"] == "Less" and check_comparison(cert)
    forged = dict(cert, order="Greater")
    assert not check_comparison(forged)


def test_radius_json_round_trip():
    rho = spectral_radius(build(Theta(0, 2, 1)))
    data = json.loads(json.dumps(rho.to_json()))
    back = AlgebraicRadius.from_json(data)
    assert back == rho
    assert check_isolation(back.defining_poly, back.isolating)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2**20))
def test_char_poly_matches_cofactor_expansion(n, bits):
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    arcs = [p for k, p in enumerate(pairs) if bits >> k & 1]
    d = from_arc_list(n, arcs)
    expected = oracles.cofactor_det_charpoly(d.adjacency_matrix().tolist())
    assert coeffs_high_first(char_poly(d)) == tuple(int(c) for c in expected.all_coeffs())


@settings(max_examples=150, deadline=None)
@given(sc_digraphs(max_n=10))
def test_char_poly_matches_numpy(d):
    assert coeffs_high_first(char_poly(d)) == oracles.charpoly_coeffs(d.adjacency_matrix())


@settings(max_examples=150, deadline=None)
@given(sc_digraphs(max_n=9))
def test_sturm_interval_contains_numeric_radius_and_meets_cw(d):
    rho = spectral_radius(d)
    numeric = max(abs(np.linalg.eigvals(d.adjacency_matrix().astype(float))))
    assert float(rho.isolating.lo) - 1e-9 <= numeric <= float(rho.isolating.hi) + 1e-9
    cw = collatz_wielandt_interval(d)
    assert cw.lo <= rho.isolating.hi and rho.isolating.lo <= cw.hi


@settings(max_examples=100, deadline=None)
@given(sc_digraphs(max_n=8), st.integers(0, 2**32 - 1))
def test_proper_sc_subdigraph_has_smaller_radius(d, seed):
    rng = random.Random(seed)
    drop = rng.randrange(d.n)
    keep = [v for v in range(d.n) if v != drop]
    sub = induced_subdigraph(d, keep)
    outer = spectral_radius(d)
    for comp in strongly_connected_components(sub):
        inner = spectral_radius(induced_subdigraph(sub, comp))
        assert compare_radii(inner, outer) is Order.LESS


@settings(max_examples=100, deadline=None)
@given(sc_digraphs(max_n=7), sc_digraphs(max_n=7))
def test_comparison_is_antisymmetric_and_checkable(d1, d2):
    a, b = spectral_radius(d1), spectral_radius(d2)
    ab, ba = certify_comparison(a, b), certify_comparison(b, a)
    flip = {Order.LESS: Order.GREATER, Order.GREATER: Order.LESS, Order.EQUAL: Order.EQUAL}
    assert ba.order is flip[ab.order]
    assert check_comparison(ab.to_json())
    fa = max(abs(np.linalg.eigvals(d1.adjacency_matrix().astype(float))))
    fb = max(abs(np.linalg.eigvals(d2.adjacency_matrix().astype(float))))
    if abs(fa - fb) > 1e-7:
        assert ab.order is (Order.LESS if fa < fb else Order.GREATER)
