from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import polys
from mzlab.errors import CapExceeded, ZeroPolynomialError
from mzlab.linalg import rref
from mzlab.maps import EDerivation, TriangularDerivation, UnivariateDerivation
from mzlab.poly import MultiPoly, Poly, enumerate_polys
from mzlab.span import (IdealSpec, Membership, TruncatedSubspace, antiderivative, cartier,
                        ederivation_monomial_table, exact_member_derivation,
                        exact_member_ideal_derivation, generator_window, image_span, member,
                        multi_image_span, translation_member, translation_sum)


def P(p, *cs):
    return Poly(p, cs)


def mono(p, *ns):
    return [Poly.monomial(p, n) for n in ns]


# -- spans and membership ------------------------------------------------------


def test_image_span_examples():
    S = image_span(UnivariateDerivation(P(2, 0, 0, 1)), None, 6)
    assert S.basis == tuple(mono(2, 2, 4, 6)) and S.exact
    S = image_span(EDerivation(P(3, 1, 1)), None, 3)
    assert S.basis == tuple(mono(3, 0, 1, 3)) and S.exact
    assert image_span(UnivariateDerivation(Poly.zero(3)), None, 5).basis == ()
    assert image_span(EDerivation(Poly.x(3)), None, 5).basis == ()


def test_member_examples():
    S = image_span(UnivariateDerivation(P(2, 0, 0, 1)), None, 6)
    assert member(S, Poly.monomial(2, 4)) is Membership.IN
    assert member(S, Poly.monomial(2, 3)) is Membership.OUT
    assert member(S, Poly.zero(2)) is Membership.IN
    assert member(S, Poly.monomial(2, 7)) is Membership.OUT_OF_RANGE


def test_exact_member_examples():
    f = P(3, 0, 0, 1)
    assert exact_member_derivation(f, Poly.monomial(3, 5))
    assert not exact_member_derivation(f, Poly.monomial(3, 4))
    assert not exact_member_derivation(f, Poly.x(3))
    with pytest.raises(ZeroPolynomialError):
        exact_member_derivation(Poly.zero(3), Poly.x(3))


def test_degree_cap_is_enforced():
    with pytest.raises(CapExceeded):
        image_span(UnivariateDerivation(Poly.x(3)), None, 50, cap=40)
    with pytest.raises(ValueError):
        image_span(UnivariateDerivation(Poly.x(3)), None, -1)


def test_dump_and_to_dict_are_stable():
    S = image_span(EDerivation(P(3, 1, 1)), None, 3)
    assert S.dump() == "0: [1]\n1: [0, 1]\n3: [0, 0, 0, 1]"
    d = S.to_dict()
    assert d["exact"] and [b["pivot"] for b in d["basis"]] == [0, 1, 3]


def _random_config(rng: random.Random):
    p = rng.choice((2, 3, 5))
    if rng.random() < 0.5:
        f = Poly(p, [rng.randrange(p) for _ in range(rng.randint(1, 4))])
        m = UnivariateDerivation(f if not f.is_zero else Poly.const(p, 1))
    else:
        m = EDerivation(Poly(p, [rng.randrange(p) for _ in range(rng.randint(1, 3))]))
    u = Poly(p, [rng.randrange(p) for _ in range(rng.randint(1, 3))] + [1])
    return m, IdealSpec(u), rng.randint(0, 14)


def test_preimages_replay():
    rng = random.Random(11)
    for _ in range(300):
        m, ideal, N = _random_config(rng)
        S = image_span(m, ideal, N)
        assert len(S.preimages) == len(S.basis)
        for b, pre in zip(S.basis, S.preimages):
            assert ideal.contains(pre)
            assert m(pre) == b


def test_echelon_form():
    rng = random.Random(12)
    for _ in range(200):
        m, ideal, N = _random_config(rng)
        S = image_span(m, ideal, N)
        piv = S.pivots
        assert list(piv) == sorted(set(piv))
        for r, b in enumerate(S.basis):
            assert b.lead == 1
            for s, other in enumerate(S.basis):
                if s != r:
                    assert b[piv[s]] == 0
        again = TruncatedSubspace(S.p, S.degree_cap, S.basis, S.exact)
        for b in S.basis:
            assert again.member(b) is Membership.IN


def _wide_dimension(m, ideal: IdealSpec, N: int, extra: int) -> int:
    """dim of m(ideal) ∩ deg <= N, using many more generators than the window."""
    u = ideal.generator
    imgs = [m(u.shift(k)) for k in range(N + extra)]
    imgs = [g for g in imgs if not g.is_zero]
    if not imgs:
        return 0
    width = max(len(g) for g in imgs + [Poly.monomial(u.p, N)])
    M = np.zeros((len(imgs), width), dtype=np.int64)
    for r, g in enumerate(imgs):
        M[r, : len(g)] = g.coeffs
    _, piv = rref(M, u.p)  # highest degree first, so pivots are leading degrees
    return sum(1 for c in piv if c <= N)


def test_windows_are_exact():
    rng = random.Random(13)
    for _ in range(150):
        m, ideal, N = _random_config(rng)
        S = image_span(m, ideal, N)
        assert S.exact
        assert S.dimension == _wide_dimension(m, ideal, N, extra=4 * m.p + 12)


@pytest.mark.parametrize("p", (2, 3, 5))
def test_exact_member_agrees_with_span(p):
    rng = random.Random(p)
    N = 6 * p
    fs = list(enumerate_polys(p, 2 * p)) if p < 5 else [
        Poly(p, [rng.randrange(p) for _ in range(2 * p + 1)]) for _ in range(60)]
    if p == 3:
        fs = rng.sample(fs, 200)
    for f in fs:
        if f.is_zero:
            continue
        S = image_span(UnivariateDerivation(f), None, N)
        for _ in range(8):
            g = Poly(p, [rng.randrange(p) for _ in range(N - f.degree + 1)])
            if rng.random() < 0.5:
                g = f * g
            assert exact_member_derivation(f, g) == (S.member(g) is Membership.IN)


def test_exact_ideal_member_agrees_with_span():
    rng = random.Random(14)
    for _ in range(300):
        p = rng.choice((2, 3, 5))
        f = Poly(p, [rng.randrange(p) for _ in range(rng.randint(1, 4))])
        if f.is_zero:
            continue
        u = Poly(p, [rng.randrange(p) for _ in range(rng.randint(1, 3))] + [1])
        N = 15
        S = image_span(UnivariateDerivation(f), IdealSpec(u), N)
        for _ in range(5):
            g = Poly(p, [rng.randrange(p) for _ in range(N + 1)])
            if rng.random() < 0.6 and S.basis:
                g = sum((b * rng.randrange(p) for b in S.basis), Poly.zero(p))
            assert exact_member_ideal_derivation(f, u, g) == (S.member(g) is Membership.IN)


@given(polys(max_degree=12), st.data())
def test_cartier_kills_exactly_derivatives(h, data):
    p = h.p
    assert cartier(h.derivative()).is_zero
    g = data.draw(polys(p, max_degree=3))
    assert cartier(g ** p * h) == g * cartier(h)


@given(polys(max_degree=12))
def test_antiderivative(q):
    p = q.p
    if (p - 1) in [n % p for n in q.support()]:
        with pytest.raises(ValueError):
            antiderivative(q)
    else:
        assert antiderivative(q).derivative() == q


def test_translation_member_agrees_with_span():
    for p in (2, 3, 5):
        for c in range(1, p):
            S = image_span(EDerivation(P(p, c, 1)), None, 12)
            for g in enumerate_polys(p, 3 if p == 5 else 5):
                g = g.shift(g.degree % 3)
                assert translation_member(c, g) == (S.member(g) is Membership.IN)


def test_translation_sum_kills_images():
    rng = random.Random(15)
    for _ in range(100):
        p = rng.choice((2, 3, 5, 7))
        c = rng.randrange(1, p)
        h = Poly(p, [rng.randrange(p) for _ in range(6)])
        assert translation_sum(EDerivation(P(p, c, 1))(h), c).is_zero


# -- monomial table -------------------------------------------------------------


def test_monomial_table_examples():
    assert ederivation_monomial_table(1, 9, 3).members() == [0, 1, 3]
    assert ederivation_monomial_table(1, 6, 2).members() == [0]
    for c in range(1, 5):
        t = ederivation_monomial_table(c, 30, 5).as_dict()
        assert [i for i in range(5) if t[(3, i)]] == [0]
    with pytest.raises(ValueError):
        ederivation_monomial_table(0, 5, 3)


def test_monomial_table_agrees_below_p_squared():
    for p in (2, 3, 5, 7):
        for c in range(1, p):
            N = p * p - 1
            t = ederivation_monomial_table(c, N, p).as_dict()
            S = image_span(EDerivation(P(p, c, 1)), None, N)
            for n in range(N + 1):
                assert t[divmod(n, p)] == (S.member(Poly.monomial(p, n)) is Membership.IN)


def test_generator_window_rules():
    w = generator_window(UnivariateDerivation(P(3, 0, 0, 1)), IdealSpec.whole(3), 10)
    assert w.exact and w.k_max == 9
    w = generator_window(EDerivation(P(3, 0, 0, 1)), IdealSpec.whole(3), 10)
    assert w.k_max == 5


# -- multivariate ---------------------------------------------------------------


def test_multi_span_contains_images():
    p, n = 2, 2
    x1, x2 = MultiPoly.var(p, n, 1), MultiPoly.var(p, n, 2)
    D = TriangularDerivation((x2, MultiPoly.const(p, n, 1)))
    S = multi_image_span(D, 6)
    assert not S.exact
    assert S.member(D(x1 * x2)) is Membership.IN
    assert S.member(x1 * x2) is Membership.OUT
    assert S.member(x1 ** 7) is Membership.OUT_OF_RANGE
    assert S.to_dict()["n"] == 2
