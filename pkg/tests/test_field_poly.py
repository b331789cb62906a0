from __future__ import annotations

import itertools
import random

import numpy as np
import pytest
from hypothesis import given

from conftest import PRIMES, poly_tuples, polys
from mzlab.errors import FieldError, ZeroPolynomialError
from mzlab.field import FieldSpec, field_op, is_prime
from mzlab.poly import (MultiPoly, Poly, compose, degree_bounds, differentiate, enumerate_polys,
                        poly_arith, slot_decompose)


def P(p, *cs):
    return Poly(p, cs)


# -- field -------------------------------------------------------------------


def test_field_examples():
    assert field_op(FieldSpec(3), "add", 2, 2) == 1
    assert field_op(FieldSpec(5), "inv", 2) == 3
    assert field_op(FieldSpec(2), "neg", 1) == 1


@pytest.mark.parametrize("p", [0, 1, 4, 9, 100, 101])
def test_field_rejects_bad_modulus(p):
    with pytest.raises(FieldError):
        FieldSpec(p)


def test_field_rejects_bad_residues():
    F = FieldSpec(5)
    with pytest.raises(FieldError):
        F.add(5, 1)
    with pytest.raises(FieldError):
        F.inv(0)
    with pytest.raises(FieldError):
        field_op(F, "mul", 2)
    with pytest.raises(FieldError):
        field_op(F, "div", 1, 2)


def test_is_prime_matches_trial_division():
    for n in range(200):
        assert is_prime(n) == (n > 1 and all(n % d for d in range(2, n)))


@pytest.mark.parametrize("p", PRIMES + (11, 97))
def test_inverse_and_order(p):
    F = FieldSpec(p)
    for a in F.units():
        assert F.mul(a, F.inv(a)) == 1
        k = F.order(a)
        assert F.pow(a, k) == 1 and (p - 1) % k == 0


# -- arithmetic --------------------------------------------------------------


def test_poly_arith_examples():
    assert poly_arith(P(2, 1, 1), None, "pow", 2) == P(2, 1, 0, 1)
    assert poly_arith(P(3, 0, 1), P(3, 1, 1), "mul") == P(3, 0, 1, 1)
    assert poly_arith(P(5, 1, 1), None, "pow", 5) == P(5, 1, 0, 0, 0, 0, 1)
    assert poly_arith(P(5, 1, 2), None, "scale", 3) == P(5, 3, 1)
    assert poly_arith(P(5, 1, 2), P(5, 4, 3), "add") == Poly.zero(5)


def test_differentiate_examples():
    assert differentiate(Poly.monomial(3, 3)).is_zero
    assert differentiate(Poly.monomial(5, 7)) == Poly.monomial(5, 6, 2)
    assert differentiate(P(2, 0, 1, 1)) == P(2, 1)


def test_compose_examples():
    x = Poly.x(3)
    assert compose(P(3, 0, 0, 1), P(3, 1, 1)) == P(3, 1, 2, 1)
    g = P(3, 2, 0, 1, 1)
    assert compose(x, g) == g
    assert compose(P(2, 0, 1, 1), P(2, 1, 1)) == P(2, 0, 1, 1)


def test_coefficients_are_canonical_residues():
    f = Poly(5, (7, -1, 10, 0, 0))
    assert f.coeffs == (2, 4)
    with pytest.raises(FieldError):
        Poly.strict(5, [5])
    with pytest.raises(FieldError):
        Poly.strict(5, [True])


def test_zero_polynomial_has_no_degree():
    z = Poly.zero(3)
    for attr in ("degree", "ldegree", "lead"):
        with pytest.raises(ZeroPolynomialError):
            getattr(z, attr)
    with pytest.raises(ZeroPolynomialError):
        slot_decompose(z)


def test_degree_bounds_examples():
    assert degree_bounds(P(3, 0, 0, 1, 0, 1)) == (4, 2)
    assert degree_bounds(P(3, 2)) == (0, 0)
    assert degree_bounds(Poly.x(3)) == (1, 1)


@given(poly_tuples(3))
def test_ring_axioms(t):
    _, f, g, h = t
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f - f == Poly.zero(f.p)


@given(poly_tuples(2, max_degree=8))
def test_divmod_reconstructs(t):
    p, f, g = t
    if g.is_zero:
        g = Poly.const(p, 1)
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.is_zero or r.degree < g.degree


@pytest.mark.parametrize("p", (2, 3, 5, 7))
def test_frobenius_exhaustive_degree_3(p):
    if p == 7:
        rng = random.Random(7)
        pairs = [(Poly(p, [rng.randrange(p) for _ in range(4)]),
                  Poly(p, [rng.randrange(p) for _ in range(4)])) for _ in range(3000)]
    else:
        every = list(enumerate_polys(p, 3, nonzero=False))
        pairs = itertools.product(every, every) if p < 5 else (
            (f, g) for f in every for g in every[:: 7])
    for f, g in pairs:
        assert (f + g) ** p == f ** p + g ** p


@given(poly_tuples(3, max_degree=3))
def test_compose_associative(t):
    _, f, g, h = t
    assert compose(compose(f, g), h) == compose(f, compose(g, h))
    assert compose(f, Poly.x(f.p)) == f


# -- slots -------------------------------------------------------------------


def test_slot_examples():
    s = slot_decompose(P(3, 0, 0, 1, 0, 1))
    assert s.slots == ((1, P(3, 0, 1)), (2, P(3, 1)))
    s = slot_decompose(P(2, 1, 1, 1))
    assert s.slots == ((0, P(2, 1, 1)), (1, P(2, 1)))
    for p in PRIMES:
        assert slot_decompose(Poly.x(p)).slots == ((1, Poly.const(p, 1)),)


def test_slot_normalizes_high_exponents():
    s = slot_decompose(Poly.monomial(3, 4))
    assert s.slots == ((1, P(3, 0, 1)),)


@pytest.mark.parametrize("p", PRIMES)
def test_slot_round_trip(p):
    rng = random.Random(p)
    for _ in range(1000):
        f = Poly(p, [rng.randrange(p) for _ in range(rng.randint(1, 4 * p))])
        if not f.is_zero:
            assert slot_decompose(f).recompose() == f


@given(polys(nonzero=True, max_degree=20))
def test_derivative_vanishes_exactly_on_frobenius_image(f):
    only_zero_slot = slot_decompose(f).residues == (0,)
    assert differentiate(f).is_zero == only_zero_slot


@given(polys(max_degree=10))
def test_array_round_trip(f):
    assert Poly.from_array(f.p, f.array()) == f
    assert Poly.from_array(f.p, np.concatenate([f.array(), [0, 0]])) == f


# -- multivariate ------------------------------------------------------------


def test_multipoly_basics():
    x1, x2 = MultiPoly.var(2, 2, 1), MultiPoly.var(2, 2, 2)
    assert (x1 + x2) ** 2 == x1 * x1 + x2 * x2
    assert (x1 * x2).partial(1) == x2
    assert (x1 * x2 * x2).total_degree() == 3
    assert MultiPoly.from_poly(P(3, 1, 2), 2, 2).univariate_in(2) == P(3, 1, 2)
