from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import PRIMES, poly_tuples
from mzlab.errors import ShapeError
from mzlab.maps import (EDerivation, TriangularDerivation, UnivariateDerivation, apply_derivation,
                        apply_ederivation, apply_triangular, iterate_map, orbit)
from mzlab.poly import MultiPoly, Poly


def P(p, *cs):
    return Poly(p, cs)


def test_derivation_examples():
    f = P(3, 0, 0, 1)
    assert apply_derivation(f, Poly.x(3)) == f
    assert apply_derivation(f, Poly.monomial(3, 3)).is_zero
    assert apply_derivation(f, Poly.monomial(3, 2)) == Poly.monomial(3, 3, 2)


def test_ederivation_examples():
    phi = P(3, 1, 1)
    assert apply_ederivation(phi, Poly.x(3)) == P(3, 2)
    assert apply_ederivation(phi, Poly.monomial(3, 3)) == P(3, 2)
    for p in PRIMES:
        assert apply_ederivation(P(p, 1, 2), Poly.const(p, 1)).is_zero


def _tri_example():
    p, n = 2, 2
    x1, x2 = MultiPoly.var(p, n, 1), MultiPoly.var(p, n, 2)
    return (x2, MultiPoly.const(p, n, 1)), x1, x2


def test_triangular_examples():
    fs, x1, x2 = _tri_example()
    assert apply_triangular(fs, x1 * x2) == x2 * x2 + x1
    assert apply_triangular(fs, x2) == MultiPoly.const(2, 2, 1)
    assert apply_triangular(fs, x1 * x1).is_zero


def test_triangular_shape_is_enforced():
    x1 = MultiPoly.var(3, 2, 1)
    with pytest.raises(ShapeError):
        TriangularDerivation((x1, MultiPoly(3, 2)))
    with pytest.raises(ShapeError):
        TriangularDerivation((MultiPoly(3, 2), MultiPoly.var(3, 2, 2)))
    with pytest.raises(ShapeError):
        TriangularDerivation(())


def test_iterate_examples():
    D = UnivariateDerivation(P(3, 0, 0, 1))
    assert iterate_map(D, Poly.x(3), 3).is_zero
    assert not iterate_map(D, Poly.x(3), 2).is_zero
    for p in PRIMES:
        assert iterate_map(UnivariateDerivation(Poly.const(p, 1)), Poly.x(p), 2).is_zero
    assert iterate_map(EDerivation(P(2, 1, 1)), Poly.x(2), 2).is_zero
    with pytest.raises(ValueError):
        iterate_map(D, Poly.x(3), -1)


def test_orbit_lists_iterates():
    D = UnivariateDerivation(P(3, 0, 0, 1))
    assert orbit(D, Poly.x(3), 2) == [Poly.x(3), P(3, 0, 0, 1), P(3, 0, 0, 0, 2)]


def test_affine_parts():
    assert EDerivation(P(5, 3, 2)).affine_parts() == (2, 3)
    assert EDerivation(P(5, 4)).affine_parts() == (0, 4)
    assert EDerivation(P(5, 0, 0, 1)).affine_parts() is None
    assert EDerivation(Poly.x(5)).is_zero


@pytest.mark.parametrize("p", PRIMES)
def test_leibniz_rules(p):
    rng = random.Random(100 + p)

    def rand(d):
        return Poly(p, [rng.randrange(p) for _ in range(rng.randint(1, d + 1))])

    for _ in range(1000):
        f, a, b = rand(4), rand(4), rand(4)
        assert apply_derivation(f, a * b) == apply_derivation(f, a) * b + a * apply_derivation(f, b)
        phi = rand(2)
        da, db = apply_ederivation(phi, a), apply_ederivation(phi, b)
        assert apply_ederivation(phi, a * b) == da * b + a * db - da * db


@given(poly_tuples(4, max_degree=4), st.data())
def test_maps_are_linear(t, data):
    p, f, phi, a, b = t
    c = data.draw(st.integers(0, p - 1))
    for m in (UnivariateDerivation(f), EDerivation(phi)):
        assert m(a + b * c) == m(a) + m(b) * c


@given(poly_tuples(2, max_degree=4), st.integers(0, 4), st.integers(0, 4))
def test_iterate_composes(t, j, k):
    _, f, g = t
    D = UnivariateDerivation(f)
    assert iterate_map(D, g, j + k) == iterate_map(D, iterate_map(D, g, j), k)
