"""Brute-force checks at desk scale.

``radical_probe`` looks for nonzero g whose powers all land in a truncated
image; ``verify_witness`` replays a NotMZ witness; ``agreement_suite`` runs
the classifier against both over a whole range of inputs.

An empty probe is a necessary condition for a zero radical, never a proof:
only the powers in the tested window are checked.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .classify import (Decision, MembershipMode, Verdict, Witness, classify_ideal_derivation,
                       classify_image_derivation)
from .errors import CapExceeded, ShapeError
from .maps import EDerivation, MapSpec, TriangularDerivation, UnivariateDerivation
from .poly import Poly, enumerate_polys, slot_decompose
from .span import (IdealSpec, Membership, TruncatedSubspace, exact_member_ideal_derivation,
                   global_degree_cap, image_span, multi_image_span, translation_member)

DEFAULT_BUDGET = 10**6


def enumeration_budget() -> int:
    return int(os.environ.get("MZLAB_BUDGET", DEFAULT_BUDGET))


@dataclass(frozen=True)
class ProbeConfig:
    """Candidates of degree <= d; powers m with m >= m0 and m * deg g <= N."""

    d: int = 2
    N: int = 30
    m0: int = 2

    def __post_init__(self) -> None:
        if self.d < 1 or self.N < 1 or self.m0 < 1:
            raise ValueError("probe parameters must be positive")
        if self.N < self.d * self.m0:
            raise ValueError(f"degree cap {self.N} < d * m0 = {self.d * self.m0}")

    def powers(self, deg: int) -> range:
        if deg == 0:
            return range(self.m0, self.m0 + 1)
        return range(self.m0, self.N // deg + 1)

    def to_dict(self) -> dict:
        return {"d": self.d, "N": self.N, "m0": self.m0,
                "window": "m >= m0 and m * deg g <= N"}


@dataclass(frozen=True)
class ProbeReport:
    p: int
    config: ProbeConfig
    candidates: tuple[Poly, ...]
    scanned: int
    exact: bool

    @property
    def empty(self) -> bool:
        return not self.candidates

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "config": self.config.to_dict(),
            "candidates": [g.to_list() for g in self.candidates],
            "scanned": self.scanned,
            "exact": self.exact,
            "claim": "necessary condition only: no candidate survives the tested powers",
        }


def _check_budget(p: int, d: int) -> None:
    need, budget = p ** (d + 1), enumeration_budget()
    if need > budget:
        raise CapExceeded(f"enumerating p^(d+1) = {need} candidates exceeds the budget {budget}")


def radical_probe(S: TruncatedSubspace, cfg: ProbeConfig) -> ProbeReport:
    p = S.p
    if cfg.N > S.degree_cap:
        raise ValueError(f"probe cap {cfg.N} exceeds the subspace cap {S.degree_cap}")
    _check_budget(p, cfg.d)
    survivors = []
    scanned = 0
    for g in enumerate_polys(p, cfg.d, monic=True):
        scanned += 1
        if _survives(S, g, cfg):
            survivors.append(g)
    survivors.sort(key=lambda g: (g.degree, g.coeffs))
    return ProbeReport(p, cfg, tuple(survivors), scanned, S.exact)


def _survives(S: TruncatedSubspace, g: Poly, cfg: ProbeConfig) -> bool:
    window = cfg.powers(g.degree)
    power = g ** window.start
    for m in window:
        if m > window.start:
            power = power * g
        if S.member(power) is not Membership.IN:
            return False
    return True


# ---------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class WitnessResult:
    verified: bool
    m: int | None = None
    stage: str | None = None  # "a-membership" | "b-membership" | "range"

    def to_dict(self) -> dict:
        if self.verified:
            return {"status": "Verified"}
        return {"status": "Refuted", "m": self.m, "stage": self.stage}


VERIFIED = WitnessResult(True)


def verify_witness(m: MapSpec, ideal: IdealSpec | None, w: Witness,
                   degree_cap: int | None = None) -> WitnessResult:
    """Check a^m ∈ m(ideal) and b a^m ∉ m(ideal) for every m in w.m_range.

    All the a-powers are checked before any b-product, so a failure reports
    the earliest stage first and then the smallest m.
    """
    lo, hi = w.m_range
    powers = list(range(lo, hi + 1))
    if isinstance(m, TriangularDerivation):
        return _verify_multi(m, w, powers, degree_cap)
    p = m.p
    if ideal is None:
        ideal = IdealSpec.whole(p)
    cap = global_degree_cap() if degree_cap is None else degree_cap
    a_pows = _powers(w.a, powers)

    def inside(g: Poly, stage: str, k: int) -> bool | WitnessResult:
        if g.is_zero:
            return True
        mode = w.membership_mode
        if mode is MembershipMode.EXACT_DERIVATION:
            if not isinstance(m, UnivariateDerivation):
                raise ShapeError("exact_derivation mode needs a derivation")
            return exact_member_ideal_derivation(m.f, ideal.generator, g)
        if mode is MembershipMode.TRANSLATION_CERTIFICATE:
            if not isinstance(m, EDerivation) or m.affine_parts() is None \
                    or m.affine_parts()[0] != 1:
                raise ShapeError("translation_certificate mode needs phi = x + c")
            c = m.affine_parts()[1]
            if stage == "b-membership" or ideal.is_whole_ring:
                # m(I) sits inside Im(I - phi), so leaving the latter is enough
                return translation_member(c, g)
        if g.degree > cap:
            return WitnessResult(False, k, "range")
        return image_span(m, ideal, max(g.degree, 0), cap=cap).member(g) is Membership.IN

    for k in powers:
        res = inside(a_pows[k], "a-membership", k)
        if isinstance(res, WitnessResult):
            return res
        if not res:
            return WitnessResult(False, k, "a-membership")
    for k in powers:
        res = inside(w.b * a_pows[k], "b-membership", k)
        if isinstance(res, WitnessResult):
            return res
        if res:
            return WitnessResult(False, k, "b-membership")
    return VERIFIED


def _powers(a, ks: list[int]) -> dict:
    out, cur, at = {}, a ** ks[0], ks[0]
    for k in ks:
        while at < k:
            cur, at = cur * a, at + 1
        out[k] = cur
    return out


def _verify_multi(D: TriangularDerivation, w: Witness, powers: list[int],
                  degree_cap: int | None) -> WitnessResult:
    if w.membership_mode is not MembershipMode.WINDOW:
        raise ShapeError("triangular witnesses are checked in window mode")
    a_pows = _powers(w.a, powers)
    cap = degree_cap
    if cap is None:
        cap = max((w.b * a_pows[k]).total_degree() for k in powers)
    S = multi_image_span(D, cap)
    for k in powers:
        st = S.member(a_pows[k])
        if st is Membership.OUT_OF_RANGE:
            return WitnessResult(False, k, "range")
        if st is not Membership.IN:
            return WitnessResult(False, k, "a-membership")
    for k in powers:
        st = S.member(w.b * a_pows[k])
        if st is Membership.OUT_OF_RANGE:
            return WitnessResult(False, k, "range")
        if st is Membership.IN:
            return WitnessResult(False, k, "b-membership")
    return VERIFIED


# ---------------------------------------------------------------------------
# agreement sweeps


@dataclass
class AgreementReport:
    counts: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    unknowns: list = field(default_factory=list)

    def bump(self, key: str) -> None:
        self.counts[key] = self.counts.get(key, 0) + 1

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"counts": dict(sorted(self.counts.items())),
                "violations": self.violations, "unknowns": self.unknowns}


def check_verdict(f: Poly, ideal: IdealSpec, verdict: Verdict, cfg: ProbeConfig,
                  m_range: tuple[int, int] | None = None) -> dict | None:
    """None when the oracle agrees with the verdict, else a violation record."""
    D = UnivariateDerivation(f)
    rec = {"p": f.p, "f": f.to_list(), "generator": ideal.generator.to_list(),
           "decision": verdict.decision.value, "citation": verdict.citation}
    if verdict.decision is Decision.NOT_MZ:
        w = verdict.witness if m_range is None else verdict.witness.with_range(*m_range)
        res = verify_witness(D, ideal, w)
        if not res.verified:
            return rec | {"witness": res.to_dict()}
    elif verdict.decision is Decision.MZ_RADICAL_ZERO:
        rep = radical_probe(image_span(D, ideal, cfg.N), cfg)
        if not rep.empty:
            return rec | {"candidates": [g.to_list() for g in rep.candidates]}
    return None


def agreement_suite(p_list, max_f_degree: int, max_gen_degree: int, cfg: ProbeConfig,
                    max_gen_slots: int | None = None) -> AgreementReport:
    """Classify every (f, (u)) in range and hold each verdict to the oracle.

    f runs over all nonzero polynomials of degree <= max_f_degree and u over
    monic generators of degree <= max_gen_degree (u = 1 is the whole ring).
    """
    report = AgreementReport()
    for p in p_list:
        _check_budget(p, cfg.d)
        gens = [u for u in enumerate_polys(p, max_gen_degree, monic=True)
                if max_gen_slots is None or len(slot_decompose(u)) <= max_gen_slots]
        for f in enumerate_polys(p, max_f_degree):
            for u in gens:
                ideal = IdealSpec(u)
                v = (classify_image_derivation(f) if ideal.is_whole_ring
                     else classify_ideal_derivation(f, ideal))
                report.bump(v.decision.value)
                if v.decision is Decision.UNKNOWN:
                    report.unknowns.append({"p": p, "f": f.to_list(), "generator": u.to_list()})
                    continue
                bad = check_verdict(f, ideal, v, cfg)
                if bad is not None:
                    report.violations.append(bad)
    return report


def slot_generators(p: int, max_degree: int, n_slots: int) -> list[Poly]:
    """Monic generators of degree <= max_degree with exactly n_slots slots."""
    from itertools import combinations, product

    out: set[Poly] = set()
    for js in combinations(range(p), n_slots):
        comps = [list(enumerate_polys(p, (max_degree - j) // p)) if j <= max_degree else []
                 for j in js]
        for parts in product(*comps):
            g = Poly.zero(p)
            for j, c in zip(js, parts):
                g = g + c.inflate(p).shift(j)
            out.add(g.monic())
    return sorted(out, key=lambda g: (g.degree, g.coeffs))
