"""Local nilpotency and local finiteness of f*d/dx and I - phi on GF(p)[x].

Everything tracks the orbit of x alone: f*d/dx is locally nilpotent exactly
when some D^k(x) vanishes, because the Leibniz rule then kills every power
of x after finitely many steps.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd

from .errors import InvariantViolation, ZeroPolynomialError
from .field import FieldSpec
from .maps import EDerivation, MapSpec, UnivariateDerivation, iterate_map
from .poly import Poly, slot_decompose

DEFAULT_ITERATION_CAP = 64


class LnStatus(str, enum.Enum):
    LN = "LocallyNilpotent"
    NOT_LN = "NotLocallyNilpotent"
    UNKNOWN = "Unknown"


class LfStatus(str, enum.Enum):
    LF = "LF"
    NOT_LF = "NotLF"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Certificate:
    kind: str  # "closed_form" | "cycle" | "constant_coefficient"
    citation: str
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "citation": self.citation, "detail": self.detail}


@dataclass(frozen=True)
class LnVerdict:
    status: LnStatus
    citation: str
    index: int | None = None
    certificate: Certificate | None = None
    cap: int | None = None

    def to_dict(self) -> dict:
        out: dict = {"status": self.status.value, "citation": self.citation}
        if self.index is not None:
            out["index"] = self.index
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        if self.cap is not None:
            out["cap"] = self.cap
        return out


@dataclass(frozen=True)
class LfVerdict:
    status: LfStatus
    citation: str

    def to_dict(self) -> dict:
        return {"status": self.status.value, "citation": self.citation}


def _ln(m: MapSpec, index: int, citation: str) -> LnVerdict:
    x = Poly.x(m.p)
    if not iterate_map(m, x, index).is_zero:
        raise InvariantViolation(f"claimed index {index} does not annihilate x ({citation})")
    return LnVerdict(LnStatus.LN, citation, index=index)


def _first_zero(m: MapSpec, limit: int) -> int | None:
    g = Poly.x(m.p)
    for k in range(1, limit + 1):
        g = m(g)
        if g.is_zero:
            return k
    return None


def _find_cycle(m: MapSpec, limit: int) -> tuple[int, int] | None:
    """(j, k), j < k, with m^j(x) = m^k(x) != 0, scanning k <= limit."""
    seen: dict[Poly, int] = {}
    g = Poly.x(m.p)
    for k in range(1, limit + 1):
        g = m(g)
        if g.is_zero:
            return None
        if g in seen:
            return seen[g], k
        seen[g] = k
    return None


def _cycle_verdict(m: MapSpec, j: int, k: int, citation: str) -> LnVerdict:
    x = Poly.x(m.p)
    a, b = iterate_map(m, x, j), iterate_map(m, x, k)
    if a != b or a.is_zero:
        raise InvariantViolation("cycle certificate does not replay")
    return LnVerdict(LnStatus.NOT_LN, citation,
                     certificate=Certificate("cycle", citation, {"j": j, "k": k}))


def nilpotency_bound(p: int, r: int) -> int:
    """An iteration count J with D^J(x) = 0 for D = x^r f1(x^p) d/dx, r != 1 mod p.

    For r = 0 the bound is 2. Otherwise take, for every r' in 2..p-1, the
    least positive N with N ≡ 1 mod (r'-1) and N ≡ 0 mod p; J is the largest
    such N plus one.
    """
    FieldSpec(p)
    r %= p
    if r == 1:
        raise ValueError("slot residue 1 gives a derivation that is not locally nilpotent")
    if r == 0:
        return 2
    best = 0
    for rp in range(2, p):
        n = p
        while (n - 1) % (rp - 1):
            n += p
        best = max(best, n)
    return best + 1


def is_ln_derivation(f: Poly, iteration_cap: int = DEFAULT_ITERATION_CAP) -> LnVerdict:
    if f.is_zero:
        raise ZeroPolynomialError("D = 0 is trivially locally nilpotent; pass a nonzero f")
    p = f.p
    D = UnivariateDerivation(f)
    slots = slot_decompose(f)

    if len(slots) == 1:
        r, f1 = slots.slots[0]
        if r == 1:
            return LnVerdict(LnStatus.NOT_LN, "Proposition 3.1", certificate=Certificate(
                "closed_form", "Proposition 3.1",
                {"orbit": "D^M(x) = x * f1(x^p)^M", "f1": f1.to_list()}))
        k = _first_zero(D, nilpotency_bound(p, r))
        if k is None:
            raise InvariantViolation("nilpotency bound failed to annihilate x")
        return _ln(D, k, "Proposition 3.1")

    if p == 2:
        f1 = slots.component(1)
        return LnVerdict(LnStatus.NOT_LN, "Theorem 3.4", certificate=Certificate(
            "closed_form", "Theorem 3.4",
            {"orbit": "D^M(x) = f * f1(x^2)^(M-1)", "f1": f1.to_list()}))

    if p == 3:
        if len(slots) == 3:
            f0, f1, f2 = (slots.component(i) for i in range(3))
            if f2 * f0 == f1 * f1:
                return _ln(D, 3, "Theorem 3.6")
        return LnVerdict(LnStatus.NOT_LN, "Theorem 3.6", certificate=Certificate(
            "closed_form", "Theorem 3.6", {"slots": list(slots.residues)}))

    if len(slots) == 2 and 1 in slots.residues:
        i1, i2 = slots.residues
        corner = "a_{k,1}" if i1 == 1 else "a_{k,k+2}"
        return LnVerdict(LnStatus.NOT_LN, "Proposition 3.8", certificate=Certificate(
            "constant_coefficient", "Proposition 3.8",
            {"i1": i1, "i2": i2, "tracked": corner}))

    seen: dict[Poly, int] = {}
    g = Poly.x(p)
    for k in range(1, iteration_cap + 1):
        g = D(g)
        if g.is_zero:
            return _ln(D, k, "direct iteration")
        if g in seen:
            return _cycle_verdict(D, seen[g], k, "direct iteration")
        seen[g] = k
    return LnVerdict(LnStatus.UNKNOWN, "iteration cap reached", cap=iteration_cap)


def is_ln_ederivation(phi: Poly) -> LnVerdict:
    p = phi.p
    delta = EDerivation(phi)
    parts = delta.affine_parts()
    cite = "Corollary 2.6"
    if parts is None:
        return LnVerdict(LnStatus.NOT_LN, cite, certificate=Certificate(
            "closed_form", cite, {"orbit": "deg delta^k(x) = deg(phi)^k",
                                  "deg_phi": phi.degree}))
    q, c = parts
    if q == 1:
        if c == 0:
            return _ln(delta, 1, "trivial map")
        # (S - 1)^p = S^p - 1 = 0 for the shift S by c, so delta^p kills everything.
        return _ln(delta, p, cite)
    # affine, not a translation: delta preserves span{1, x}, orbit of x is periodic
    cyc = _find_cycle(delta, p + 1)
    if cyc is None:
        raise InvariantViolation("affine E-derivation orbit did not cycle")
    return _cycle_verdict(delta, *cyc, cite)


def is_locally_finite(m: MapSpec) -> LfVerdict:
    if isinstance(m, EDerivation):
        if len(m.phi) <= 2:
            return LfVerdict(LfStatus.LF, "Remark 2.7")
        return LfVerdict(LfStatus.NOT_LF, "Remark 2.7")
    if not isinstance(m, UnivariateDerivation):
        raise TypeError("local finiteness is decided for univariate maps only")
    f = m.f
    if f.is_zero:
        return LfVerdict(LfStatus.LF, "trivial map")
    slots = slot_decompose(f)
    if len(slots) == 1 and slots.residues[0] == 1:
        f1 = slots.slots[0][1]
        if f1.is_constant():
            return LfVerdict(LfStatus.LF, "Remark 3.3")
        return LfVerdict(LfStatus.NOT_LF, "Remark 3.3")
    if f.degree <= 1:
        return LfVerdict(LfStatus.LF, "degree-preserving (deg f <= 1)")
    if is_ln_derivation(f).status is LnStatus.LN:
        return LfVerdict(LfStatus.LF, "locally nilpotent")
    return LfVerdict(LfStatus.UNKNOWN, "undecided")


# ---------------------------------------------------------------------------
# two-slot coefficient recurrence


@dataclass(frozen=True)
class CoefficientTable:
    """Coefficients a[k][j-1] of x^e f_{i1}^(k-j+2) f_{i2}^(j-1) in D^(k+1)(x).

    Here f = c1 x^i1 f_{i1}(x^p) + c2 x^i2 f_{i2}(x^p) and
    e = (k-j+2) i1 + (j-1) i2 - k, for j = 1..k+2.
    """

    p: int
    i1: int
    i2: int
    c1: int
    c2: int
    rows: tuple[tuple[int, ...], ...]

    def exponent(self, k: int, j: int) -> int:
        return (k - j + 2) * self.i1 + (j - 1) * self.i2 - k

    def to_csv(self) -> str:
        width = len(self.rows[-1]) if self.rows else 0
        lines = ["k," + ",".join(f"j{j}" for j in range(1, width + 1))]
        for k, row in enumerate(self.rows):
            lines.append(f"{k}," + ",".join(str(v) for v in row) + "," * (width - len(row)))
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"p": self.p, "i1": self.i1, "i2": self.i2, "c1": self.c1, "c2": self.c2,
                "rows": [list(r) for r in self.rows]}

    def reconstruct(self, k: int, f_i1: Poly, f_i2: Poly) -> Poly:
        """D^(k+1)(x) rebuilt from row k; zero-coefficient terms are dropped."""
        p = self.p
        out = Poly.zero(p)
        for j, a in enumerate(self.rows[k], start=1):
            if a == 0:
                continue
            e = self.exponent(k, j)
            if e < 0:
                raise InvariantViolation(f"nonzero coefficient at negative exponent {e}")
            out = out + (f_i1.inflate(p) ** (k - j + 2)) * (f_i2.inflate(p) ** (j - 1)) \
                .shift(e) * a
        return out


def coeff_table(p: int, i1: int, i2: int, c1: int, c2: int, k_max: int) -> CoefficientTable:
    """Rows 0..k_max of the two-slot recurrence.

    a[l+1][j] = c1 * e(l, j) * a[l][j] + c2 * e(l, j-1) * a[l][j-1], where
    e(l, j) = (l-j+2) i1 + (j-1) i2 - l is the exponent carried by a[l][j].
    With c1 = c2 = 1 this is the usual normalized recurrence.
    """
    FieldSpec(p)
    if not (0 <= i1 < p and 0 <= i2 < p) or i1 == i2:
        raise ValueError("need distinct slot residues i1, i2 in [0, p)")
    if c1 % p == 0 or c2 % p == 0:
        raise ValueError("c1 and c2 must be nonzero")
    if k_max < 0:
        raise ValueError("k_max must be non-negative")

    def e(l: int, j: int) -> int:
        return (l - j + 2) * i1 + (j - 1) * i2 - l

    rows = [(c1 % p, c2 % p)]
    for l in range(k_max):
        prev = rows[-1]
        new = []
        for j in range(1, l + 4):
            v = 0
            if j <= l + 2:
                v += c1 * e(l, j) * prev[j - 1]
            if j >= 2:
                v += c2 * e(l, j - 1) * prev[j - 2]
            new.append(v % p)
        rows.append(tuple(new))
    return CoefficientTable(p, i1, i2, c1 % p, c2 % p, tuple(rows))


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
