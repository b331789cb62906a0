"""Dense univariate and sparse multivariate polynomials over GF(p).

``Poly`` stores ascending coefficients as canonical residues with trailing
zeros trimmed, so the zero polynomial is the empty tuple. ``MultiPoly`` maps
exponent vectors to nonzero residues. Both are immutable and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import FieldError, ShapeError, ZeroPolynomialError
from .field import check_modulus


def _series_inverse(a: np.ndarray, n: int, p: int) -> np.ndarray:
    """b with a * b ≡ 1 mod (p, x^n), by Newton iteration; needs a[0] != 0."""
    b = np.array([pow(int(a[0]), p - 2, p)], dtype=np.int64)
    k = 1
    while k < n:
        k = min(2 * k, n)
        e = -np.convolve(a[:k], b)[:k] % p
        e[0] = (e[0] + 2) % p
        b = np.convolve(b, e)[:k] % p
    return b


def _trim(cs: Sequence[int]) -> tuple[int, ...]:
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return tuple(int(c) for c in cs[:n])


@dataclass(frozen=True)
class Poly:
    p: int
    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        p = self.p
        check_modulus(p)
        cs = [int(c) % p for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- constructors -----------------------------------------------------
    @classmethod
    def strict(cls, p: int, coeffs: Sequence[int]) -> "Poly":
        """Build from residues that must already lie in [0, p)."""
        for c in coeffs:
            if not isinstance(c, int) or isinstance(c, bool) or not 0 <= c < p:
                raise FieldError(f"coefficient {c!r} outside [0, {p})")
        return cls(p, tuple(coeffs))

    @classmethod
    def zero(cls, p: int) -> "Poly":
        return cls(p, ())

    @classmethod
    def const(cls, p: int, c: int) -> "Poly":
        return cls(p, (c,))

    @classmethod
    def monomial(cls, p: int, n: int, c: int = 1) -> "Poly":
        if n < 0:
            raise ValueError("negative exponent")
        return cls(p, (0,) * n + (c,))

    @classmethod
    def x(cls, p: int) -> "Poly":
        return cls.monomial(p, 1)

    @classmethod
    def from_array(cls, p: int, arr: np.ndarray) -> "Poly":
        v = np.asarray(arr, dtype=np.int64) % p
        nz = np.flatnonzero(v)
        return cls._raw(p, tuple(v[: nz[-1] + 1].tolist()) if nz.size else ())

    @classmethod
    def _raw(cls, p: int, coeffs: tuple[int, ...]) -> "Poly":
        """Trusted constructor: coeffs already reduced and trimmed."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "p", p)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    # -- basic queries ----------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomialError("the zero polynomial has no degree")
        return len(self.coeffs) - 1

    @property
    def ldegree(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomialError("the zero polynomial has no least degree")
        return next(k for k, c in enumerate(self.coeffs) if c)

    @property
    def lead(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomialError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def support(self) -> list[int]:
        return [k for k, c in enumerate(self.coeffs) if c]

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def array(self, width: int | None = None) -> np.ndarray:
        n = len(self.coeffs) if width is None else width
        out = np.zeros(n, dtype=np.int64)
        m = min(n, len(self.coeffs))
        out[:m] = self.coeffs[:m]
        return out

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def _same(self, other: "Poly") -> None:
        if other.p != self.p:
            raise FieldError(f"mixed moduli {self.p} and {other.p}")

    def _lift(self, other: "Poly | int") -> "Poly":
        if isinstance(other, Poly):
            self._same(other)
            return other
        return Poly(self.p, (other,))

    # -- ring operations --------------------------------------------------
    def __add__(self, other: "Poly | int") -> "Poly":
        o = self._lift(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        p = self.p
        out = [(x + y) % p for x, y in zip(a, b)]
        out.extend(a[len(b):])
        while out and out[-1] == 0:
            out.pop()
        return Poly._raw(p, tuple(out))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        p = self.p
        return Poly._raw(p, tuple((p - c) % p for c in self.coeffs))

    def __sub__(self, other: "Poly | int") -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other: int) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other: "Poly | int") -> "Poly":
        if not isinstance(other, Poly):
            if other % self.p == 1:
                return self
            return Poly(self.p, tuple(c * other for c in self.coeffs))
        self._same(other)
        if not self.coeffs or not other.coeffs:
            return Poly(self.p)
        prod = np.convolve(np.asarray(self.coeffs, dtype=np.int64),
                           np.asarray(other.coeffs, dtype=np.int64))
        return Poly.from_array(self.p, prod)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Poly":
        return self * c

    def __pow__(self, m: int) -> "Poly":
        if m < 0:
            raise ValueError("negative power")
        result, base = Poly(self.p, (1,)), self
        while m:
            if m & 1:
                result = result * base
            m >>= 1
            if m:
                base = base * base
        return result

    def __call__(self, g: "Poly") -> "Poly":
        return compose(self, g)

    def derivative(self) -> "Poly":
        return differentiate(self)

    def __divmod__(self, d: "Poly") -> tuple["Poly", "Poly"]:
        self._same(d)
        if d.is_zero:
            raise ZeroPolynomialError("division by the zero polynomial")
        p = self.p
        dd = d.degree
        if len(self.coeffs) <= dd:
            return Poly(p), self
        inv = pow(d.lead, p - 2, p)
        if dd == 0:
            return self * inv, Poly(p)
        if not any(d.coeffs[:-1]):
            return (Poly._raw(p, self.coeffs[dd:]) * inv,
                    Poly(p, self.coeffs[:dd]))
        # quotient from the reversed series: rev(q) = rev(a) / rev(d) mod x^L
        a = np.array(self.coeffs, dtype=np.int64)
        dv = np.array(d.coeffs, dtype=np.int64)
        L = len(a) - dd
        qrev = np.convolve(a[::-1][:L], _series_inverse(dv[::-1], L, p))[:L] % p
        q = qrev[::-1]
        r = (a[:dd] - np.convolve(q, dv)[:dd]) % p
        return Poly.from_array(p, q), Poly.from_array(p, r)

    def __floordiv__(self, d: "Poly") -> "Poly":
        return divmod(self, d)[0]

    def __mod__(self, d: "Poly") -> "Poly":
        return divmod(self, d)[1]

    def divides(self, g: "Poly") -> bool:
        """True when ``self`` divides ``g`` (self must be nonzero)."""
        return divmod(g, self)[1].is_zero

    def monic(self) -> "Poly":
        if self.is_zero:
            raise ZeroPolynomialError("cannot normalize the zero polynomial")
        return self * pow(self.lead, self.p - 2, self.p)

    def inflate(self, e: int) -> "Poly":
        """Substitute x -> x^e."""
        out = [0] * ((len(self.coeffs) - 1) * e + 1) if self.coeffs else []
        for k, c in enumerate(self.coeffs):
            out[k * e] = c
        return Poly(self.p, tuple(out))

    def shift(self, n: int) -> "Poly":
        """Multiply by x^n."""
        if not self.coeffs:
            return self
        return Poly(self.p, (0,) * n + self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = "x" if k == 1 else f"x^{k}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)


def poly_arith(f: Poly, g: Poly | None, op: str, arg: int | None = None) -> Poly:
    """Named-operation front end: ``add``, ``mul``, ``pow`` (arg=m), ``scale`` (arg=c)."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "pow":
        return f ** int(arg)
    if op == "scale":
        return f.scale(int(arg))
    raise ValueError(f"unknown polynomial operation {op!r}")


def differentiate(f: Poly) -> Poly:
    return Poly(f.p, tuple(k * c for k, c in enumerate(f.coeffs))[1:])


def compose(f: Poly, g: Poly) -> Poly:
    """f(g(x)) by Horner's rule."""
    f._same(g)
    result = Poly(f.p)
    for c in reversed(f.coeffs):
        result = result * g + c
    return result


@dataclass(frozen=True)
class SlotDecomposition:
    """f = sum_i x^i * f_i(x^p), residues i in [0, p) with f_i != 0."""

    p: int
    slots: tuple[tuple[int, Poly], ...]

    @property
    def residues(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.slots)

    def __len__(self) -> int:
        return len(self.slots)

    def component(self, i: int) -> Poly:
        for r, fi in self.slots:
            if r == i:
                return fi
        return Poly.zero(self.p)

    def recompose(self) -> Poly:
        total = Poly.zero(self.p)
        for i, fi in self.slots:
            total = total + fi.inflate(self.p).shift(i)
        return total


def slot_decompose(f: Poly) -> SlotDecomposition:
    """Group the exponents of a nonzero ``f`` by residue mod p.

    >>> slot_decompose(Poly(3, (0, 0, 1, 0, 1))).slots  # x^4 + x^2
    ((1, Poly(p=3, coeffs=(0, 1))), (2, Poly(p=3, coeffs=(1,))))
    """
    if f.is_zero:
        raise ZeroPolynomialError("slot decomposition of the zero polynomial")
    p = f.p
    buckets: dict[int, dict[int, int]] = {}
    for k, c in enumerate(f.coeffs):
        if c:
            buckets.setdefault(k % p, {})[k // p] = c
    slots = []
    for i in sorted(buckets):
        b = buckets[i]
        slots.append((i, Poly(p, tuple(b.get(j, 0) for j in range(max(b) + 1)))))
    return SlotDecomposition(p, tuple(slots))


def degree_bounds(f: Poly) -> tuple[int, int]:
    return f.degree, f.ldegree


# ---------------------------------------------------------------------------
# multivariate


Exponent = tuple[int, ...]


@dataclass(frozen=True)
class MultiPoly:
    """Sparse polynomial in n variables; exponent vectors index x_1..x_n."""

    p: int
    n: int
    terms: tuple[tuple[Exponent, int], ...] = dc_field(default=())

    def __post_init__(self) -> None:
        check_modulus(self.p)
        acc: dict[Exponent, int] = {}
        for e, c in self.terms:
            e = tuple(int(v) for v in e)
            if len(e) != self.n or any(v < 0 for v in e):
                raise ShapeError(f"exponent {e} does not fit {self.n} variables")
            acc[e] = (acc.get(e, 0) + int(c)) % self.p
        object.__setattr__(
            self, "terms", tuple(sorted((e, c) for e, c in acc.items() if c)))

    @classmethod
    def from_dict(cls, p: int, n: int, d: Mapping[Exponent, int]) -> "MultiPoly":
        return cls(p, n, tuple(d.items()))

    @classmethod
    def const(cls, p: int, n: int, c: int) -> "MultiPoly":
        return cls(p, n, (((0,) * n, c),))

    @classmethod
    def var(cls, p: int, n: int, i: int) -> "MultiPoly":
        """The variable x_i, 1-based."""
        if not 1 <= i <= n:
            raise ShapeError(f"variable index {i} outside 1..{n}")
        e = [0] * n
        e[i - 1] = 1
        return cls(p, n, ((tuple(e), 1),))

    @classmethod
    def from_poly(cls, f: Poly, n: int, i: int) -> "MultiPoly":
        """Embed a univariate polynomial as a polynomial in x_i."""
        terms = []
        for k, c in enumerate(f.coeffs):
            e = [0] * n
            e[i - 1] = k
            terms.append((tuple(e), c))
        return cls(f.p, n, tuple(terms))

    def as_dict(self) -> dict[Exponent, int]:
        return dict(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _same(self, o: "MultiPoly") -> None:
        if o.p != self.p:
            raise FieldError(f"mixed moduli {self.p} and {o.p}")
        if o.n != self.n:
            raise ShapeError(f"variable-count mismatch {self.n} vs {o.n}")

    def __add__(self, o: "MultiPoly") -> "MultiPoly":
        self._same(o)
        return MultiPoly(self.p, self.n, self.terms + o.terms)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.p, self.n, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, o: "MultiPoly") -> "MultiPoly":
        return self + (-o)

    def __mul__(self, o: "MultiPoly | int") -> "MultiPoly":
        if not isinstance(o, MultiPoly):
            return MultiPoly(self.p, self.n, tuple((e, c * o) for e, c in self.terms))
        self._same(o)
        acc: dict[Exponent, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in o.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = (acc.get(e, 0) + c1 * c2) % self.p
        return MultiPoly.from_dict(self.p, self.n, acc)

    __rmul__ = __mul__

    def __pow__(self, m: int) -> "MultiPoly":
        result = MultiPoly.const(self.p, self.n, 1)
        for _ in range(m):
            result = result * self
        return result

    def partial(self, i: int) -> "MultiPoly":
        """Formal partial derivative in x_i, 1-based."""
        if not 1 <= i <= self.n:
            raise ShapeError(f"variable index {i} outside 1..{self.n}")
        k = i - 1
        out = []
        for e, c in self.terms:
            if e[k]:
                e2 = list(e)
                e2[k] -= 1
                out.append((tuple(e2), c * e[k]))
        return MultiPoly(self.p, self.n, tuple(out))

    def total_degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomialError("the zero polynomial has no degree")
        return max(sum(e) for e, _ in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            raise ZeroPolynomialError("the zero polynomial has no degree")
        return max(e[i - 1] for e, _ in self.terms)

    def ldegree_in(self, i: int) -> int:
        if not self.terms:
            raise ZeroPolynomialError("the zero polynomial has no least degree")
        return min(e[i - 1] for e, _ in self.terms)

    def variables(self) -> set[int]:
        """1-based indices of the variables that actually occur."""
        return {k + 1 for e, _ in self.terms for k, v in enumerate(e) if v}

    def univariate_in(self, i: int) -> Poly | None:
        """The polynomial as a univariate in x_i, or None if others occur."""
        if self.variables() - {i}:
            return None
        cs = [0] * (self.degree_in(i) + 1 if self.terms else 0)
        for e, c in self.terms:
            cs[e[i - 1]] = c
        return Poly(self.p, tuple(cs))

    def to_list(self) -> list[list]:
        return [[list(e), c] for e, c in self.terms]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(
                (f"x{k + 1}" if v == 1 else f"x{k + 1}^{v}") for k, v in enumerate(e) if v)
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)


def monomials_up_to(n: int, d: int) -> list[Exponent]:
    """All exponent vectors in n variables with total degree <= d, graded order."""
    out: list[Exponent] = []

    def rec(prefix: list[int], left: int, k: int) -> None:
        if k == n:
            out.append(tuple(prefix))
            return
        for v in range(left + 1):
            rec(prefix + [v], left - v, k + 1)

    rec([], d, 0)
    out.sort(key=lambda e: (sum(e), e))
    return out


def enumerate_polys(p: int, max_degree: int, *, monic: bool = False,
                    nonzero: bool = True) -> Iterable[Poly]:
    """Every polynomial of degree <= max_degree (optionally monic / nonzero)."""
    if monic:
        if not nonzero:
            raise ValueError("monic polynomials are nonzero")
        for d in range(max_degree + 1):
            for idx in range(p ** d):
                cs = []
                for _ in range(d):
                    cs.append(idx % p)
                    idx //= p
                yield Poly(p, tuple(cs) + (1,))
        return
    for idx in range(p ** (max_degree + 1)):
        cs = []
        for _ in range(max_degree + 1):
            cs.append(idx % p)
            idx //= p
        f = Poly(p, tuple(cs))
        if nonzero and f.is_zero:
            continue
        yield f
