"""Mathieu-Zhao verdicts for images of derivations and E-derivations.

Each verdict names the result it rests on. A ``NotMZ`` verdict carries a
witness pair (a, b): every power a^m lies in the image while b*a^m does not,
which the oracle module replays. ``MZ_RadicalZero`` verdicts carry no witness;
the oracle corroborates them by searching for radical elements.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ShapeError, ZeroPolynomialError
from .field import FieldSpec
from .maps import EDerivation, TriangularDerivation
from .poly import MultiPoly, Poly, slot_decompose
from .span import IdealSpec, cartier, translation_sum

DEFAULT_M_RANGE = (1, 8)


class Decision(str, enum.Enum):
    MZ = "MZ"
    MZ_RADICAL_ZERO = "MZ_RadicalZero"
    NOT_MZ = "NotMZ"
    UNKNOWN = "Unknown"


class MembershipMode(str, enum.Enum):
    EXACT_DERIVATION = "exact_derivation"
    WINDOW = "window"
    TRANSLATION_CERTIFICATE = "translation_certificate"


@dataclass(frozen=True)
class Witness:
    a: Poly | MultiPoly
    b: Poly | MultiPoly
    membership_mode: MembershipMode
    m_range: tuple[int, int] = DEFAULT_M_RANGE

    def __post_init__(self) -> None:
        lo, hi = self.m_range
        if lo < 1 or hi < lo:
            raise ValueError(f"bad power range {self.m_range}")

    def with_range(self, lo: int, hi: int) -> "Witness":
        return Witness(self.a, self.b, self.membership_mode, (lo, hi))

    def to_dict(self) -> dict:
        return {"a": self.a.to_list(), "b": self.b.to_list(),
                "membership_mode": self.membership_mode.value, "m_range": list(self.m_range)}


@dataclass(frozen=True)
class Verdict:
    decision: Decision
    citation: str
    witness: Witness | None = None
    notes: str = ""

    def __post_init__(self) -> None:
        if self.decision is Decision.NOT_MZ and self.witness is None:
            raise ValueError("a NotMZ verdict needs a witness")
        if self.decision is Decision.MZ_RADICAL_ZERO and self.witness is not None:
            raise ValueError("a radical-zero verdict carries no witness")

    def to_dict(self) -> dict:
        out: dict = {"decision": self.decision.value, "citation": self.citation,
                     "notes": self.notes}
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        return out


TRIVIAL = "trivial image"


def _trivial() -> Verdict:
    return Verdict(Decision.MZ, TRIVIAL, notes="the image is {0}")


# ---------------------------------------------------------------------------
# whole ring


def classify_image_derivation(f: Poly) -> Verdict:
    if f.is_zero:
        return _trivial()
    p = f.p
    slots = slot_decompose(f)
    if len(slots) >= 2:
        return _classify_multislot(f, slots.residues)
    r, f1 = slots.slots[0]
    if r == 1:
        return Verdict(Decision.MZ, "Theorem 2.4(1)",
                       notes="single slot with residue 1; the radical is zero")
    a = f1.inflate(p).shift(p)
    b = Poly.monomial(p, r + p - 1)
    return Verdict(Decision.NOT_MZ, "Proposition 2.3",
                   Witness(a, b, MembershipMode.EXACT_DERIVATION),
                   notes=f"single slot with residue {r}")


POWER_CRITERION = "power criterion"


def _classify_multislot(f: Poly, residues: tuple[int, ...]) -> Verdict:
    """Im(f d/dx) = f * Im(d/dx), and Im(d/dx) is the kernel of ``cartier``.

    If cartier(f^(p-1)) != 0 the radical is zero: a radical element a gives
    a^(p^s t) = f * g^p * f^(p-1) for large t, whose quotient by f has
    cartier value g * cartier(f^(p-1)) != 0. Otherwise every power of f^p
    lies in the image while x^j f^(p-1) falls outside Im(d/dx) for a suitable
    j < p, and x^j (f^p)^m then stays outside the image for every m.
    The slot count alone does not decide this: f = (x - 1)^2 at p = 3 has
    three slots but is a translate of x^2.
    """
    p = f.p
    h = f ** (p - 1)
    if not cartier(h).is_zero:
        return Verdict(Decision.MZ_RADICAL_ZERO, "Theorem 2.4(2)",
                       notes=f"slots {list(residues)}; cartier(f^(p-1)) != 0")
    j = next(j for j in range(p) if not cartier(h.shift(j)).is_zero)
    w = Witness(f ** p, Poly.monomial(p, j), MembershipMode.EXACT_DERIVATION)
    return Verdict(Decision.NOT_MZ, POWER_CRITERION, w,
                   notes=f"slots {list(residues)} but f^(p-1) lies in Im d/dx")


def classify_image_ederivation(phi: Poly) -> Verdict:
    p = phi.p
    delta = EDerivation(phi)
    if delta.is_zero:
        return _trivial()
    parts = delta.affine_parts()
    if parts is None:
        return Verdict(Decision.MZ, "Corollary 2.6", notes="deg phi >= 2")
    q, c = parts
    if q == 1:
        w = Witness(Poly.const(p, 1), Poly.monomial(p, p - 1),
                    MembershipMode.TRANSLATION_CERTIFICATE)
        return Verdict(Decision.NOT_MZ, "Theorem 2.5", w,
                       notes=f"delta(x) = {-c % p} is a unit")
    if q == 0:
        return Verdict(Decision.MZ, "Corollary 2.6", notes="phi constant; image is (x - c)")
    return Verdict(Decision.MZ, "Corollary 2.6", notes="phi affine, not a translation")


def classify_single_partial_multivariate(f: MultiPoly, i0: int) -> Verdict:
    if not 1 <= i0 <= f.n:
        raise ShapeError(f"variable index {i0} outside 1..{f.n}")
    if f.is_zero:
        raise ZeroPolynomialError("f must be nonzero")
    p = f.p
    hi, lo = f.degree_in(i0), f.ldegree_in(i0)
    if (hi - 1) % p == 0 or (lo - 1) % p == 0:
        return Verdict(Decision.MZ_RADICAL_ZERO, "Theorem 2.1",
                       notes=f"deg = {hi}, ldeg = {lo} in x{i0}")
    uni = f.univariate_in(i0)
    if uni is not None:
        v = classify_image_derivation(uni)
        return Verdict(v.decision, v.citation, v.witness,
                       notes=(v.notes + "; univariate in x" + str(i0)).lstrip("; "))
    return Verdict(Decision.UNKNOWN, "Theorem 2.1",
                   notes="sufficient condition fails; no decision available")


def classify_triangular(fs: list[MultiPoly] | tuple[MultiPoly, ...]) -> Verdict:
    D = TriangularDerivation(tuple(fs))
    if D.is_zero:
        return _trivial()
    p, n = D.p, D.n
    last = max(q for q, fq in enumerate(D.fs, start=1) if fq)

    def corner(k: int) -> MultiPoly:
        return MultiPoly(p, n, ((tuple([p - 1] * k + [0] * (n - k)), 1),))

    if last == n:
        w = Witness(MultiPoly.const(p, n, 1), corner(n), MembershipMode.WINDOW)
        return Verdict(Decision.NOT_MZ, "Proposition 2.8(1)", w, notes="f_n != 0")
    w = Witness(D.fs[last - 1], corner(last), MembershipMode.WINDOW)
    return Verdict(Decision.NOT_MZ, "Proposition 2.8(2)", w,
                   notes=(f"f_{n} = 0, f_{last} != 0" if last + 1 == n
                          else f"f_{last + 1} = ... = f_{n} = 0, f_{last} != 0"))


# ---------------------------------------------------------------------------
# images of ideals


def congruence_branch(i1: int, j1: int, j2: int, p: int) -> str | None:
    """'2.1', '2.2' or None for a two-slot generator under a single-slot f."""
    gap = (j2 - j1) % p
    if gap == (i1 - 1) % p:
        return "2.1"
    if gap == (1 - i1) % p:
        return "2.2"
    return None


def _power_witness(f: Poly, u: Poly) -> Witness | None:
    """(a, b) = ((f u)^p, x^j) when f^(p-1) lies in Im d/dx, else None.

    With f^(p-1) = F', the power a^m = f * (f^(m-1) u^m)^p F' is the image
    of (f^(m-1) u^m)^p F, which lies in (u). The multiplier x^j is chosen so
    cartier(x^j f^(p-1)) != 0, which keeps x^j a^m outside Im(f d/dx).
    """
    p = f.p
    h = f ** (p - 1)
    if not cartier(h).is_zero:
        return None
    j = next(j for j in range(p) if not cartier(h.shift(j)).is_zero)
    return Witness((f * u) ** p, Poly.monomial(p, j), MembershipMode.EXACT_DERIVATION)


def _power_verdict(f: Poly, u: Poly, notes: str) -> Verdict:
    w = _power_witness(f, u)
    if w is None:
        raise AssertionError("power criterion invoked with cartier(f^(p-1)) != 0")
    return Verdict(Decision.NOT_MZ, POWER_CRITERION, w,
                   notes=notes + "; (f u)^p lies in the radical")


def classify_ideal_derivation(f: Poly, ideal: IdealSpec) -> Verdict:
    """D(I) for D = f d/dx and I = (u).

    D(I) is MZ exactly when Im D is: its radical sits inside the radical of
    Im D, and ``_power_witness`` carries over to every ideal. The named
    branches supply their own witnesses where those hold.
    """
    if f.is_zero:
        return _trivial()
    p = f.p
    u = ideal.generator
    fslots = slot_decompose(f)
    if len(fslots) >= 2:
        if _power_witness(f, u) is None:
            return Verdict(Decision.MZ_RADICAL_ZERO, "Theorem 4.4(2)",
                           notes=f"slots of f {list(fslots.residues)}")
        return _power_verdict(f, u, f"slots of f {list(fslots.residues)}")
    i1, f1 = fslots.slots[0]
    F1 = f1.inflate(p)
    const_f = f.degree == 0
    gslots = slot_decompose(u)
    js = gslots.residues
    b = Poly.monomial(p, i1 + p - 1)

    if len(gslots) == 1:
        a = (gslots.component(js[0]).inflate(p) * F1).shift(2 * p)
        if const_f:
            return Verdict(Decision.NOT_MZ, "Corollary 4.3(1)",
                           Witness(a, b, MembershipMode.EXACT_DERIVATION),
                           notes="one-slot generator")
        if i1 == 1:
            return Verdict(Decision.MZ_RADICAL_ZERO, "Proposition 4.1(1)",
                           notes="one-slot generator, i1 = 1")
        return Verdict(Decision.NOT_MZ, "Proposition 4.1(2)",
                       Witness(a, b, MembershipMode.EXACT_DERIVATION),
                       notes=f"one-slot generator, i1 = {i1}")

    where = f"generator slots {list(js)}, i1 = {i1}"
    if len(gslots) == 2:
        j1, j2 = js
        branch = congruence_branch(i1, j1, j2, p)
        if branch is not None:
            g = gslots.component(j1 if branch == "2.1" else j2)
            a = (g.inflate(p) * F1).shift(3 * p)
            cite = "Corollary 4.3(1)" if const_f else f"Proposition 4.2({branch})"
            return Verdict(Decision.NOT_MZ, cite,
                           Witness(a, b, MembershipMode.EXACT_DERIVATION), notes=where)
        if i1 == 1:
            return Verdict(Decision.MZ_RADICAL_ZERO, "Proposition 4.2(2.3)", notes=where)
        return _power_verdict(f, u, where)

    if i1 == 1:
        return Verdict(Decision.MZ_RADICAL_ZERO, "Proposition 4.2(3)", notes=where)
    return _power_verdict(f, u, where)


def classify_ideal_ederivation(phi: Poly, ideal: IdealSpec) -> Verdict:
    p = phi.p
    delta = EDerivation(phi)
    if delta.is_zero:
        return _trivial()
    u = ideal.generator
    if ideal.is_whole_ring:
        return classify_image_ederivation(phi)
    parts = delta.affine_parts()
    if parts is None:
        return Verdict(Decision.MZ, "Theorem 4.7", notes="deg phi >= 2, any ideal")
    q, c = parts
    one = Poly.const(p, 1)
    corner = Poly.monomial(p, p - 1)

    if u.degree == 1:
        a0 = u[0]
        if q == 0:
            return Verdict(Decision.MZ, "Theorem 4.7(1.1)", notes="image is (x - c)")
        if q == 1:
            return Verdict(Decision.NOT_MZ, "Theorem 4.7(1.2)",
                           Witness(one, corner, MembershipMode.TRANSLATION_CERTIFICATE),
                           notes=f"delta(x + {a0}) = {-c % p}")
        if c == 0:
            return Verdict(Decision.MZ, "Theorem 4.7(1.3)",
                           notes=f"q = {q} has order {FieldSpec(p).order(q)}; the radical is zero")
        return Verdict(Decision.MZ, "Theorem 4.7(1.3)",
                       notes="phi = q x + c is conjugate to q x by a translation, "
                             "which keeps the ideal of the form (x + a)")

    i = u.degree
    if u != Poly.monomial(p, i):
        return Verdict(Decision.UNKNOWN, "Theorem 4.7",
                       notes="generator is neither x + a nor x^i")
    if q == 0:
        if c == 0:
            return Verdict(Decision.MZ, "Theorem 4.7(2.1)", notes="phi = 0, delta is the identity")
        a = Poly.monomial(p, i) - pow(c, i, p)
        return Verdict(Decision.NOT_MZ, "Theorem 4.7(2.1)",
                       Witness(a, Poly.x(p), MembershipMode.WINDOW),
                       notes=f"phi = {c}")
    if q == 1:
        return Verdict(Decision.NOT_MZ, "Theorem 4.7(2.2)",
                       Witness(one, corner, MembershipMode.TRANSLATION_CERTIFICATE),
                       notes="1 = delta(x^(p^t)) / (-c) with p^t >= i")
    if c == 0:
        return Verdict(Decision.MZ, "Theorem 4.7(2.3)",
                       notes=f"q = {q} has order {FieldSpec(p).order(q)}; the radical is zero")
    return Verdict(Decision.MZ, "Theorem 4.7(2.3)",
                   notes="phi = q x + c: after moving the fixed point of phi to 0, delta(I) "
                         "lies in a span of monomials whose radical is zero")


def translation_sum_certificate(c: int, p: int) -> Poly:
    """sum_j (x + j c)^(p-1); a nonzero constant shows x^(p-1) is not in Im(I - phi)."""
    if c % p == 0:
        raise ValueError("c must be nonzero")
    return translation_sum(Poly.monomial(p, p - 1), c % p)
