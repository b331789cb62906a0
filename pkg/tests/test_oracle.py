from __future__ import annotations

import random

import pytest

from mzlab.classify import Decision, MembershipMode, Witness, classify_image_derivation
from mzlab.errors import CapExceeded
from mzlab.maps import UnivariateDerivation
from mzlab.oracle import (ProbeConfig, agreement_suite, radical_probe, slot_generators,
                          verify_witness)
from mzlab.poly import Poly, enumerate_polys, slot_decompose
from mzlab.span import IdealSpec, Membership, TruncatedSubspace, image_span

EXACT = MembershipMode.EXACT_DERIVATION


def P(p, *cs):
    return Poly(p, cs)


def D(f):
    return UnivariateDerivation(f)


# -- radical probe ----------------------------------------------------------------


def test_probe_examples():
    S = image_span(D(P(2, 0, 0, 1)), None, 20)
    rep = radical_probe(S, ProbeConfig(2, 20, 1))
    assert rep.candidates == (Poly.monomial(2, 2),)
    S = image_span(D(Poly.x(3)), None, 30)
    assert radical_probe(S, ProbeConfig(2, 30, 2)).empty
    Z = TruncatedSubspace(3, 30, (), True)
    assert radical_probe(Z, ProbeConfig(2, 30, 2)).empty


def test_probe_scans_every_monic_candidate():
    Z = TruncatedSubspace(3, 30, (), True)
    assert radical_probe(Z, ProbeConfig(2, 30, 2)).scanned == 1 + 3 + 9


def test_probe_candidates_reverify_on_fresh_span():
    rng = random.Random(21)
    cfg = ProbeConfig(2, 24, 2)
    for _ in range(40):
        p = rng.choice((2, 3))
        f = Poly(p, [rng.randrange(p) for _ in range(rng.randint(1, 5))])
        if f.is_zero:
            continue
        rep = radical_probe(image_span(D(f), None, cfg.N), cfg)
        fresh = image_span(D(f), None, cfg.N)
        for g in rep.candidates:
            assert g.lead == 1
            for m in cfg.powers(g.degree):
                assert fresh.member(g ** m) is Membership.IN


def test_probe_agrees_with_single_slot_theorem():
    cfg = ProbeConfig(4, 24, 2)
    for p in (2, 3):
        for f in enumerate_polys(p, 4):
            s = slot_decompose(f) if not f.is_zero else None
            if s is None or len(s) != 1:
                continue
            v = classify_image_derivation(f)
            rep = radical_probe(image_span(D(f), None, cfg.N), cfg)
            a = s.slots[0][1].inflate(p).shift(p).monic()
            if a.degree <= cfg.d:
                assert (a in rep.candidates) == (v.decision is Decision.NOT_MZ), f


def test_probe_rejects_bad_config_and_budget(monkeypatch):
    for args in ((0, 10, 2), (2, 0, 2), (2, 10, 0), (3, 5, 2)):
        with pytest.raises(ValueError):
            ProbeConfig(*args)
    S = image_span(D(Poly.x(3)), None, 10)
    with pytest.raises(ValueError):
        radical_probe(S, ProbeConfig(2, 20, 2))
    monkeypatch.setenv("MZLAB_BUDGET", "10")
    with pytest.raises(CapExceeded):
        radical_probe(S, ProbeConfig(2, 10, 2))


def test_probe_report_dict():
    S = image_span(D(P(2, 0, 0, 1)), None, 20)
    d = radical_probe(S, ProbeConfig(2, 20, 1)).to_dict()
    assert d["candidates"] == [[0, 0, 1]] and d["exact"]
    assert d["config"] == {"d": 2, "N": 20, "m0": 1, "window": "m >= m0 and m * deg g <= N"}


# -- witnesses -------------------------------------------------------------------


def test_verify_witness_examples():
    w = Witness(Poly.monomial(3, 3), Poly.monomial(3, 4), EXACT, (1, 10))
    assert verify_witness(D(P(3, 0, 0, 1)), None, w).verified
    w = Witness(Poly.monomial(2, 2), Poly.x(2), EXACT, (1, 10))
    assert verify_witness(D(P(2, 0, 0, 1)), None, w).verified
    w = Witness(Poly.x(3), Poly.const(3, 1), EXACT, (1, 3))
    res = verify_witness(D(Poly.x(3)), None, w)
    assert (res.verified, res.m, res.stage) == (False, 3, "a-membership")
    assert res.to_dict() == {"status": "Refuted", "m": 3, "stage": "a-membership"}


def test_window_mode_reports_range():
    w = Witness(Poly.monomial(3, 3), Poly.monomial(3, 4), MembershipMode.WINDOW, (1, 4))
    res = verify_witness(D(P(3, 0, 0, 1)), None, w, degree_cap=8)
    assert (res.verified, res.stage) == (False, "range")
    assert verify_witness(D(P(3, 0, 0, 1)), None, w, degree_cap=20).verified


def test_window_and_exact_modes_agree():
    rng = random.Random(22)
    for _ in range(60):
        p = rng.choice((2, 3))
        f = Poly(p, [rng.randrange(p) for _ in range(rng.randint(1, 4))])
        if f.is_zero:
            continue
        a = Poly(p, [rng.randrange(p) for _ in range(3)])
        b = Poly(p, [rng.randrange(p) for _ in range(2)])
        if a.is_zero or b.is_zero:
            continue
        r1 = verify_witness(D(f), None, Witness(a, b, EXACT, (1, 3)))
        r2 = verify_witness(D(f), None, Witness(a, b, MembershipMode.WINDOW, (1, 3)))
        assert r1 == r2


def test_verify_witness_is_deterministic():
    rng = random.Random(23)
    for _ in range(40):
        p = rng.choice((2, 3, 5))
        f = Poly(p, [rng.randrange(p) for _ in range(rng.randint(1, 4))])
        if f.is_zero:
            continue
        a = Poly(p, [rng.randrange(p) for _ in range(3)])
        if a.is_zero:
            continue
        w = Witness(a, Poly.x(p), EXACT, (1, 6))
        first = verify_witness(D(f), None, w)
        assert all(verify_witness(D(f), None, w) == first for _ in range(3))
        # a verified range verifies on every subrange, in any order of checking
        if first.verified:
            for lo, hi in ((1, 3), (4, 6), (2, 5)):
                assert verify_witness(D(f), None, w.with_range(lo, hi)).verified


# -- agreement ---------------------------------------------------------------------


def test_agreement_suite_examples():
    cfg = ProbeConfig(2, 20, 2)
    rep = agreement_suite([2], 4, 0, cfg)
    assert rep.ok and sum(rep.counts.values()) == 2 ** 5 - 1
    rep = agreement_suite([3], 3, 3, cfg, max_gen_slots=2)
    assert rep.ok, rep.violations
    rep = agreement_suite([], 3, 3, cfg)
    assert rep.counts == {} and rep.ok


def test_slot_generators():
    gens = slot_generators(3, 6, 2)
    assert all(len(slot_decompose(g)) == 2 and g.lead == 1 for g in gens)
    assert P(3, 1, 1) in gens and P(3, 0, 1, 1) in gens
    assert all(g.degree <= 6 for g in gens)


def test_ideal_probe_uses_ideal_span():
    u = P(3, 1, 1)
    S = image_span(D(Poly.x(3)), IdealSpec(u), 20)
    assert radical_probe(S, ProbeConfig(2, 20, 2)).empty
