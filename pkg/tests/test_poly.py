from fractions import Fraction as F

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import distinct_roots, rationals
from interlace_majorize.errors import DegreeTooLow, NoSignChange
from interlace_majorize.poly import (
    DEFAULT_TOL,
    Interval,
    IntPoly,
    Poly,
    RootList,
    as_rational,
    derivative,
    evaluate,
    format_rational,
    isolate_root_in_interval,
    poly_from_roots,
    sign,
)

X = sympy.Symbol("x")


def sympy_coeffs(roots):
    expr = sympy.expand(sympy.prod([X - sympy.Rational(r.numerator, r.denominator) for r in roots]))
    return [F(int(c.p), int(c.q)) for c in sympy.Poly(expr, X).all_coeffs()]


def substitute(p: Poly, x: F) -> F:
    n = p.degree
    return sum((c * x ** (n - i) for i, c in enumerate(p.coefficients)), F(0))


@pytest.mark.parametrize(
    "roots, coeffs",
    [
        ((2, -2), (1, 0, -4)),
        ((0,), (1, 0)),
        ((5, 1, -1, -5), (1, 0, -26, 0, 25)),
    ],
)
def test_poly_from_roots_examples(roots, coeffs):
    p = poly_from_roots(RootList.of(roots))
    assert p.coefficients == tuple(F(c) for c in coeffs)
    assert p.monic and p.degree == len(roots)


def test_poly_from_roots_matches_sympy_expansion():
    roots = [F(5), F(1), F(-1), F(-5)]
    assert list(poly_from_roots(roots).coefficients) == sympy_coeffs(roots)
    roots = [F(7, 3), F(1, 2), F(-4, 5)]
    assert list(poly_from_roots(roots).coefficients) == sympy_coeffs(roots)


def test_repeated_roots_keep_multiplicity():
    assert poly_from_roots([1, 1]).coefficients == (1, -2, 1)


@pytest.mark.parametrize(
    "coeffs, x, expected",
    [((1, 0, -4), 1, -3), ((1, 0), 0, 0), ((1, 0, -26, 0, 25), 4, -135)],
)
def test_evaluate_examples(coeffs, x, expected):
    p = Poly(coeffs)
    assert evaluate(p, x) == expected
    assert substitute(p, F(x)) == expected


@pytest.mark.parametrize(
    "coeffs, expected",
    [((1, 0, -4), (2, 0)), ((1, 0, -26, 0, 25), (4, 0, -52, 0)), ((1, 0), (1,))],
)
def test_derivative_examples(coeffs, expected):
    assert derivative(Poly(coeffs)).coefficients == tuple(F(c) for c in expected)


def test_derivative_of_constant_raises():
    with pytest.raises(DegreeTooLow):
        derivative(Poly((3,)))


def test_isolate_sqrt2():
    tol = F(1, 1024)
    iv = isolate_root_in_interval(Poly((1, 0, -2)), Interval(1, 2), tol)
    assert iv.width <= tol
    assert iv.lo ** 2 <= 2 <= iv.hi ** 2
    assert abs(float(iv.mid) - 1.41421356) < 1e-3


def test_isolate_exact_hit_short_circuits():
    iv = isolate_root_in_interval(Poly((1, 0)), Interval(-1, 1), F(1, 3))
    assert iv == Interval(0, 0)


def test_isolate_no_sign_change():
    with pytest.raises(NoSignChange):
        isolate_root_in_interval(Poly((1, 0, 1)), Interval(0, 1), F(1, 8))


def test_default_tolerance_is_two_to_minus_sixty():
    assert DEFAULT_TOL == F(1, 2**60)
    iv = isolate_root_in_interval(Poly((1, 0, -2)), Interval(1, 2))
    assert iv.width <= DEFAULT_TOL


def test_as_rational_refuses_floats():
    with pytest.raises(TypeError):
        as_rational(0.5)
    assert as_rational("3/4") == F(3, 4)
    assert format_rational(F(-3, 20)) == "-3/20"
    assert format_rational(F(4)) == "4"


def test_rootlist_order_enforced():
    with pytest.raises(ValueError):
        RootList((F(1), F(2)))
    assert RootList.of([1, 2, 2]).roots == (2, 2, 1)
    assert not RootList.of([1, 2, 2]).simple


@given(distinct_roots(1, 7))
@settings(max_examples=60, deadline=None)
def test_roots_evaluate_to_zero(roots):
    p = poly_from_roots(roots)
    assert all(evaluate(p, r) == 0 for r in roots)


@given(distinct_roots(1, 7))
@settings(max_examples=40, deadline=None)
def test_round_trip_isolation(roots):
    p = poly_from_roots(roots)
    tol = F(1, 2**40)
    # brackets halfway between neighbours contain exactly one root each
    cuts = [roots[0] + 1] + [(a + b) / 2 for a, b in zip(roots, roots[1:])] + [roots[-1] - 1]
    found = []
    for i in range(len(roots)):
        iv = isolate_root_in_interval(p, Interval(cuts[i + 1], cuts[i]), tol)
        assert iv.width <= tol
        assert roots[i] in iv
        found.append(iv)
    # seeding the bracket at the rational root itself returns it exactly
    for r in roots:
        assert isolate_root_in_interval(p, Interval(r, r + 1), tol) == Interval(r, r)


@given(distinct_roots(2, 6))
@settings(max_examples=20, deadline=None)
def test_isolation_agrees_with_companion_matrix(roots):
    p = poly_from_roots(roots)
    approx = np.sort(np.roots(p.to_float()).real)[::-1]
    np.testing.assert_allclose(approx, [float(r) for r in roots], atol=1e-6)


@given(st.lists(rationals(), min_size=1, max_size=6), st.lists(rationals(), min_size=1, max_size=6))
@settings(max_examples=60, deadline=None)
def test_derivative_is_linear(a, b):
    pa, pb = Poly(tuple(a)), Poly(tuple(b))
    if (pa + pb).degree < 1 or pa.degree < 1 or pb.degree < 1:
        return
    assert derivative(pa + pb) == derivative(pa) + derivative(pb)


@given(st.lists(rationals(), min_size=2, max_size=6), rationals(), rationals(), st.integers(1, 40))
@settings(max_examples=60, deadline=None)
def test_bisection_keeps_sign_change(coeffs, a, b, bits):
    p = Poly(tuple(coeffs))
    lo, hi = min(a, b), max(a, b)
    try:
        iv = isolate_root_in_interval(p, Interval(lo, hi), F(1, 2**bits))
    except NoSignChange:
        assert sign(evaluate(p, lo)) == sign(evaluate(p, hi)) != 0
        return
    assert sign(evaluate(p, iv.lo)) * sign(evaluate(p, iv.hi)) <= 0
    assert lo <= iv.lo <= iv.hi <= hi


@given(st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=8), rationals())
@settings(max_examples=60, deadline=None)
def test_intpoly_sign_matches_exact_evaluation(coeffs, x):
    p = Poly(tuple(F(c, 7) for c in coeffs))
    ip = IntPoly.from_poly(p)
    assert ip.sign_at(x.numerator, x.denominator) == sign(evaluate(p, x))
