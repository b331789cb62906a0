"""Image spaces of derivations and E-derivations, truncated by degree.

A ``TruncatedSubspace`` holds an echelon basis of ``m(I) ∩ {deg <= N}`` for a
map ``m`` and a principal ideal ``I = (u)``. It is built from the images of
the generators ``u * x^k`` for every ``k`` in a finite window. The window is
chosen so the truncated span is the *whole* intersection, not just a subset.

Why the windows are exact: ``ker m = K[kappa]`` for a single polynomial kappa
(``x^p`` for f*d/dx, ``x^r`` for phi = q*x with q of order r, ``x^p - x`` for
phi = x + c, constants otherwise). An image element w of degree <= N has a
preimage A0 of bounded degree. Any other preimage differs from A0 by an
element C of K[kappa]. For the preimage to lie in (u), C must be ≡ -A0 mod u.
Powers of kappa mod u satisfy a recurrence of order deg u, so C can always be
chosen with kappa-degree < deg u. That bounds the degree of a preimage in
(u), and so the generator window.
"""

from __future__ import annotations

import enum
import functools
import os
from dataclasses import dataclass, field
import numpy as np

from .errors import CapExceeded, ShapeError, ZeroPolynomialError
from .field import FieldSpec
from .linalg import reduce_against, rref
from .maps import EDerivation, MapSpec, TriangularDerivation, UnivariateDerivation
from .poly import Exponent, MultiPoly, Poly, monomials_up_to, slot_decompose

DEFAULT_DEGREE_CAP = 10_000


def global_degree_cap() -> int:
    return int(os.environ.get("MZLAB_DEGREE_CAP", DEFAULT_DEGREE_CAP))


class Membership(str, enum.Enum):
    IN = "In"
    OUT = "Out"
    OUT_OF_RANGE = "OutOfRange"


@dataclass(frozen=True)
class IdealSpec:
    """Principal ideal (generator) of GF(p)[x]; the whole ring is (1)."""

    generator: Poly

    def __post_init__(self) -> None:
        if self.generator.is_zero:
            raise ZeroPolynomialError("ideal generator must be nonzero")
        object.__setattr__(self, "generator", self.generator.monic())

    @classmethod
    def whole(cls, p: int) -> "IdealSpec":
        return cls(Poly.const(p, 1))

    @property
    def p(self) -> int:
        return self.generator.p

    @property
    def is_whole_ring(self) -> bool:
        return self.generator.degree == 0

    def contains(self, g: Poly) -> bool:
        return self.generator.divides(g)


@dataclass(frozen=True)
class TruncatedSubspace:
    """Echelon basis of an image space cut down to degrees <= degree_cap.

    Rows are monic at their pivot (the leading degree), pivots strictly
    increase, and every row vanishes at the other rows' pivots. ``preimages``
    holds, row by row, an element of the ideal that the map sends to the row.
    """

    p: int
    degree_cap: int
    basis: tuple[Poly, ...]
    exact: bool
    preimages: tuple[Poly, ...] = ()
    _matrix: np.ndarray = field(default=None, repr=False, compare=False)
    _pivots: np.ndarray = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self._matrix is None:
            mat = np.zeros((len(self.basis), self.degree_cap + 1), dtype=np.int64)
            for r, b in enumerate(self.basis):
                mat[r, : len(b)] = b.coeffs
            object.__setattr__(self, "_matrix", mat)
            object.__setattr__(
                self, "_pivots", np.array([b.degree for b in self.basis], dtype=np.int64))

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self._pivots)

    def contains_array(self, v: np.ndarray) -> bool:
        """Membership for a coefficient vector of length degree_cap + 1."""
        return not reduce_against(v, self._matrix, self._pivots, self.p).any()

    def member(self, g: Poly) -> Membership:
        if g.is_zero:
            return Membership.IN
        if g.degree > self.degree_cap:
            return Membership.OUT_OF_RANGE
        v = g.array(self.degree_cap + 1)
        return Membership.IN if self.contains_array(v) else Membership.OUT

    def dump(self) -> str:
        """One basis polynomial per line, ascending coefficients, pivot noted."""
        return "\n".join(f"{b.degree}: {b.to_list()}" for b in self.basis)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "degree_cap": self.degree_cap,
            "exact": self.exact,
            "basis": [{"pivot": b.degree, "coeffs": b.to_list()} for b in self.basis],
        }


def member(S: TruncatedSubspace, g: Poly) -> Membership:
    return S.member(g)


# ---------------------------------------------------------------------------
# generator windows


@dataclass(frozen=True)
class Window:
    """Generators u*x^k, 0 <= k <= k_max (k_max < 0 means none)."""

    k_max: int
    exact: bool
    rule: str


def _kernel_degree(m: MapSpec) -> int:
    """Degree of kappa with ker m = K[kappa]; 0 when the kernel is K."""
    if isinstance(m, UnivariateDerivation):
        return m.p
    parts = m.affine_parts()
    if parts is None:
        return 0
    q, c = parts
    if q == 0:
        return 0
    if q == 1:
        return m.p
    return FieldSpec(m.p).order(q)


def generator_window(m: MapSpec, ideal: IdealSpec, N: int) -> Window:
    d = ideal.generator.degree
    p = m.p
    if isinstance(m, UnivariateDerivation):
        if m.is_zero or N < m.f.degree:
            return Window(-1, True, "zero")
        base = N - m.f.degree + 1
        rule = "derivation"
    elif isinstance(m, EDerivation):
        if m.is_zero:
            return Window(-1, True, "zero")
        parts = m.affine_parts()
        if parts is None:
            # deg(A - A(phi)) = deg(phi) * deg(A) for nonconstant A
            return Window(N // m.phi.degree - d, True, "phi of degree >= 2")
        q, c = parts
        if q == 0:
            base, rule = N, "constant phi"
        elif q == 1:
            base, rule = N + 1, "translation phi"
        else:
            base, rule = N, "scaling phi"
    else:
        raise ShapeError("univariate windows need a univariate map")
    kd = _kernel_degree(m)
    top = max(base, kd * (d - 1))
    return Window(top - d, True, rule)


def _images(m: MapSpec, ideal: IdealSpec, window: Window) -> list[Poly]:
    u = ideal.generator
    return [m(u.shift(k)) for k in range(window.k_max + 1)]


def image_span(m: MapSpec, ideal: IdealSpec | None = None, N: int = 10,
               cap: int | None = None) -> TruncatedSubspace:
    """Row-reduced span of m(ideal) ∩ {deg <= N}, with preimages recorded."""
    if N < 0:
        raise ValueError("degree cap must be non-negative")
    limit = global_degree_cap() if cap is None else cap
    if N > limit:
        raise CapExceeded(f"degree cap {N} exceeds the global cap {limit}")
    p = m.p
    if ideal is None:
        ideal = IdealSpec.whole(p)
    win = generator_window(m, ideal, N)
    images = _images(m, ideal, win)
    if not images:
        return TruncatedSubspace(p, N, (), win.exact, ())
    width = max([len(g) for g in images] + [N + 1])
    K = len(images)
    M = np.zeros((K, width + K), dtype=np.int64)
    for k, g in enumerate(images):
        M[k, : len(g)] = g.coeffs
        M[k, width + k] = 1
    R, pivots = rref(M, p, ncols=width)
    keep = [r for r, c in enumerate(pivots) if c <= N]
    keep.sort(key=lambda r: pivots[r])
    u = ideal.generator
    basis = tuple(Poly.from_array(p, R[r, : N + 1]) for r in keep)
    pre = tuple(u * Poly.from_array(p, R[r, width:]) for r in keep)
    mat = R[keep, : N + 1].copy() if keep else np.zeros((0, N + 1), dtype=np.int64)
    piv = np.array([pivots[r] for r in keep], dtype=np.int64)
    return TruncatedSubspace(p, N, basis, win.exact, pre, mat, piv)


# ---------------------------------------------------------------------------
# exact membership tests that need no truncation


def cartier(h: Poly) -> Poly:
    """sum_k h[kp + p - 1] x^k; Im d/dx is exactly its kernel.

    Over GF(p) it satisfies cartier(g^p h) = g * cartier(h).
    """
    p = h.p
    return Poly(p, h.coeffs[p - 1::p])


def exact_member_derivation(f: Poly, g: Poly) -> bool:
    """g ∈ Im(f d/dx): f | g and no exponent of g/f is ≡ p-1 mod p."""
    if f.is_zero:
        raise ZeroPolynomialError("f must be nonzero")
    if g.is_zero:
        return True
    q, r = divmod(g, f)
    if not r.is_zero:
        return False
    return (f.p - 1) not in slot_decompose(q).residues


def antiderivative(q: Poly) -> Poly:
    """The antiderivative of q with no x^(kp) terms; q must avoid slot p-1."""
    p = q.p
    out = [0] * (len(q) + 1)
    for n, a in enumerate(q.coeffs):
        if a == 0:
            continue
        if (n + 1) % p == 0:
            raise ValueError("q has a term in slot p-1 and no antiderivative")
        out[n + 1] = a * pow(n + 1, p - 2, p) % p
    return Poly(p, out)


def exact_member_ideal_derivation(f: Poly, u: Poly, g: Poly) -> bool:
    """g ∈ (f d/dx)((u)), decided without truncation.

    g = f * (h u)' needs f | g and an antiderivative A of g/f. Every
    antiderivative is A + C(x^p), so g is a member iff -A mod u lies in the
    span of x^(kp) mod u, and k < deg u already spans K[x^p] mod u.
    """
    if f.is_zero or u.is_zero:
        raise ZeroPolynomialError("f and the ideal generator must be nonzero")
    if g.is_zero:
        return True
    q, r = divmod(g, f)
    if not r.is_zero or (f.p - 1) in slot_decompose(q).residues:
        return False
    if u.degree == 0:
        return True
    p = f.p
    basis, piv = _frobenius_residues(u)
    A = np.array(antiderivative(q).coeffs, dtype=np.int64)
    target = -(A @ residue_table(u, len(A))) % p
    return not reduce_against(target, basis, piv, p).any()


_RESIDUES: dict[Poly, np.ndarray] = {}


def residue_table(u: Poly, n: int) -> np.ndarray:
    """Rows x^k mod u for k < n, as an (n, deg u) array; grown on demand."""
    T = _RESIDUES.get(u)
    if T is None or len(T) < n:
        p, d = u.p, u.degree
        size = max(n, 2 * (0 if T is None else len(T)), 2 * d + 2)
        # companion matrix: row(x^(k+1)) = row(x^k) @ M
        M = np.zeros((d, d), dtype=np.int64)
        M[np.arange(d - 1), np.arange(1, d)] = 1
        M[d - 1] = -np.array(u.monic().coeffs[:-1], dtype=np.int64) % p
        T = np.zeros((size, d), dtype=np.int64)
        T[0, 0] = 1
        s, Ms = 1, M
        while s < size:
            t = min(s, size - s)
            T[s: s + t] = T[:t] @ Ms % p
            s += t
            Ms = Ms @ Ms % p
        if len(_RESIDUES) > 4096:
            _RESIDUES.clear()
        _RESIDUES[u] = T
    return T[:n]


@functools.lru_cache(maxsize=4096)
def _frobenius_residues(u: Poly) -> tuple[np.ndarray, np.ndarray]:
    """Echelon basis of span{x^(kp) mod u : k >= 0} inside K[x]/(u)."""
    p, d = u.p, u.degree
    rows = np.zeros((d, d), dtype=np.int64)
    step = Poly.monomial(p, p) % u
    rk = Poly.const(p, 1)
    for k in range(d):
        rows[k, : len(rk)] = rk.coeffs
        rk = (rk * step) % u
    basis, piv = rref(rows, p)
    return basis, np.array(piv, dtype=np.int64)


def translation_sum(h: Poly, c: int) -> Poly:
    """sum_{j=0}^{p-1} h(x + j*c)."""
    p = h.p
    total = Poly.zero(p)
    x = Poly.x(p)
    for j in range(p):
        total = total + h(x + j * c % p)
    return total


def translation_member(c: int, g: Poly) -> bool:
    """g ∈ Im(I - phi) for phi = x + c, c != 0, on the whole ring.

    The translation sum is (S - 1)^(p-1) for the shift S, and the image of
    S - 1 is exactly its kernel, so a vanishing sum decides membership.
    """
    if c % g.p == 0:
        raise ValueError("translation by 0 gives the zero map")
    return translation_sum(g, c).is_zero


# ---------------------------------------------------------------------------
# monomial membership table for phi = x + c


@dataclass(frozen=True)
class MonomialTable:
    """Membership of x^(k*p + i) in Im(I - phi), phi = x + c, by the closed-form rule."""

    p: int
    c: int
    degree_cap: int
    entries: tuple[tuple[tuple[int, int], bool], ...]

    def as_dict(self) -> dict[tuple[int, int], bool]:
        return dict(self.entries)

    def members(self) -> list[int]:
        return sorted(k * self.p + i for (k, i), v in self.entries if v)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "c": self.c,
            "degree_cap": self.degree_cap,
            "members": self.members(),
            "rows": [
                {"k": k, "i": i, "degree": k * self.p + i, "member": v}
                for (k, i), v in self.entries
            ],
        }


def ederivation_monomial_table(c: int, N: int, p: int) -> MonomialTable:
    """x^(kp+i) is a member exactly when 0 <= i <= p-2-k."""
    FieldSpec(p)
    if c % p == 0:
        raise ValueError("c = 0 gives delta = 0")
    entries = []
    for n in range(N + 1):
        k, i = divmod(n, p)
        entries.append(((k, i), i <= p - 2 - k))
    return MonomialTable(p, c % p, N, tuple(entries))


# ---------------------------------------------------------------------------
# multivariate spans for triangular derivations


@dataclass(frozen=True)
class MultiTruncatedSubspace:
    """Span of D(x^alpha), |alpha| <= gen_degree, cut to total degree <= cap.

    Never exact: cancellations among generators above the window are not
    accounted for, so ``Out`` only means "not in this finite span".
    """

    p: int
    n: int
    degree_cap: int
    gen_degree: int
    basis: tuple[MultiPoly, ...]
    _index: dict = field(default=None, repr=False, compare=False)
    _matrix: np.ndarray = field(default=None, repr=False, compare=False)
    _pivots: np.ndarray = field(default=None, repr=False, compare=False)

    exact = False

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def member(self, g: MultiPoly) -> Membership:
        if g.is_zero:
            return Membership.IN
        if g.total_degree() > self.degree_cap:
            return Membership.OUT_OF_RANGE
        v = np.zeros(len(self._index), dtype=np.int64)
        for e, c in g.terms:
            v[self._index[e]] = c
        if not reduce_against(v, self._matrix, self._pivots, self.p).any():
            return Membership.IN
        return Membership.OUT

    def dump(self) -> str:
        return "\n".join(str(b) for b in self.basis)

    def to_dict(self) -> dict:
        return {"p": self.p, "n": self.n, "degree_cap": self.degree_cap,
                "gen_degree": self.gen_degree, "exact": self.exact,
                "basis": [b.to_list() for b in self.basis]}


def multi_image_span(D: TriangularDerivation, cap: int, gen_degree: int | None = None
                     ) -> MultiTruncatedSubspace:
    if gen_degree is None:
        gen_degree = cap + 1
    p, n = D.p, D.n
    images = [D(MultiPoly(p, n, ((alpha, 1),))) for alpha in monomials_up_to(n, gen_degree)]
    images = [g for g in images if g]
    monos: set[Exponent] = set(monomials_up_to(n, cap))
    for g in images:
        monos.update(e for e, _ in g.terms)
    cols = sorted(monos, key=lambda e: (sum(e), e))
    index = {e: j for j, e in enumerate(cols)}
    low = [j for j, e in enumerate(cols) if sum(e) <= cap]
    if not images:
        z = np.zeros((0, len(low)), dtype=np.int64)
        return MultiTruncatedSubspace(p, n, cap, gen_degree, (),
                                      {cols[j]: j for j in low}, z, np.zeros(0, dtype=np.int64))
    M = np.zeros((len(images), len(cols)), dtype=np.int64)
    for r, g in enumerate(images):
        for e, c in g.terms:
            M[r, index[e]] = c
    R, pivots = rref(M, p)
    nlow = len(low)  # graded order puts every low-degree column first
    keep = [r for r, c in enumerate(pivots) if c < nlow]
    mat = R[keep, :nlow]
    piv = np.array([pivots[r] for r in keep], dtype=np.int64)
    basis = tuple(
        MultiPoly(p, n, tuple((cols[j], int(mat[k, j])) for j in np.flatnonzero(mat[k])))
        for k in range(len(keep)))
    return MultiTruncatedSubspace(p, n, cap, gen_degree, basis,
                                  {cols[j]: j for j in low}, mat, piv)

