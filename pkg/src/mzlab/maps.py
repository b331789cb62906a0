"""Derivations f*d/dx, E-derivations I - phi, and triangular derivations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import FieldError, ShapeError
from .poly import MultiPoly, Poly, compose, differentiate


@dataclass(frozen=True)
class UnivariateDerivation:
    """D = f * d/dx on GF(p)[x]."""

    f: Poly

    @property
    def p(self) -> int:
        return self.f.p

    def __call__(self, g: Poly) -> Poly:
        return apply_derivation(self.f, g)

    @property
    def is_zero(self) -> bool:
        return self.f.is_zero


@dataclass(frozen=True)
class EDerivation:
    """delta = I - phi, where phi is the endomorphism x -> phi(x)."""

    phi: Poly

    @property
    def p(self) -> int:
        return self.phi.p

    def __call__(self, g: Poly) -> Poly:
        return apply_ederivation(self.phi, g)

    @property
    def is_zero(self) -> bool:
        return self.phi == Poly.x(self.p)

    def affine_parts(self) -> tuple[int, int] | None:
        """(q, c) with phi = q*x + c, or None when deg phi >= 2."""
        if len(self.phi) > 2:
            return None
        return self.phi[1], self.phi[0]


@dataclass(frozen=True)
class TriangularDerivation:
    """D = sum_q f_q * d/dx_q where f_q only involves x_{q+1}, ..., x_n."""

    fs: tuple[MultiPoly, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "fs", tuple(self.fs))
        if not self.fs:
            raise ShapeError("a triangular derivation needs at least one variable")
        n, p = len(self.fs), self.fs[0].p
        for q, fq in enumerate(self.fs, start=1):
            if fq.n != n:
                raise ShapeError(f"coefficient {q} lives in {fq.n} variables, expected {n}")
            if fq.p != p:
                raise FieldError("coefficients over different fields")
            bad = [v for v in fq.variables() if v <= q]
            if bad:
                raise ShapeError(
                    f"coefficient of d/dx{q} mentions x{bad[0]}; only x{q + 1}..x{n} allowed")

    @property
    def n(self) -> int:
        return len(self.fs)

    @property
    def p(self) -> int:
        return self.fs[0].p

    @property
    def is_zero(self) -> bool:
        return all(fq.is_zero for fq in self.fs)

    def __call__(self, g: MultiPoly) -> MultiPoly:
        return apply_triangular(self.fs, g)


MapSpec = Union[UnivariateDerivation, EDerivation, TriangularDerivation]


def apply_derivation(f: Poly, g: Poly) -> Poly:
    return f * differentiate(g)


def apply_ederivation(phi: Poly, g: Poly) -> Poly:
    return g - compose(g, phi)


def apply_triangular(fs: tuple[MultiPoly, ...] | list[MultiPoly], g: MultiPoly) -> MultiPoly:
    n = len(fs)
    if g.n != n:
        raise ShapeError(f"argument has {g.n} variables, derivation has {n}")
    out = MultiPoly(g.p, n)
    for q, fq in enumerate(fs, start=1):
        if fq:
            out = out + fq * g.partial(q)
    return out


def iterate_map(m: MapSpec, g, k: int):
    """Apply ``m`` to ``g`` k times; k = 0 returns g unchanged."""
    if k < 0:
        raise ValueError("iteration count must be non-negative")
    for _ in range(k):
        if g.is_zero:
            break
        g = m(g)
    return g


def orbit(m: MapSpec, g, k: int) -> list:
    """[g, m(g), ..., m^k(g)]."""
    out = [g]
    for _ in range(k):
        out.append(m(out[-1]))
    return out
