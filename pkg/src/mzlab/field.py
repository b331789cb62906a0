"""Prime field GF(p) arithmetic on canonical residues."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import FieldError

MAX_PRIME = 97


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field GF(p), with p prime and at most ``MAX_PRIME``."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise FieldError(f"p must be an integer, got {self.p!r}")
        if not is_prime(self.p):
            raise FieldError(f"p not prime: {self.p}")
        if self.p > MAX_PRIME:
            raise FieldError(f"p={self.p} exceeds the supported cap {MAX_PRIME}")

    def check(self, a: int) -> int:
        if not 0 <= a < self.p:
            raise FieldError(f"residue {a} outside [0, {self.p})")
        return a

    def add(self, a: int, b: int) -> int:
        return (self.check(a) + self.check(b)) % self.p

    def sub(self, a: int, b: int) -> int:
        return (self.check(a) - self.check(b)) % self.p

    def mul(self, a: int, b: int) -> int:
        return (self.check(a) * self.check(b)) % self.p

    def neg(self, a: int) -> int:
        return (-self.check(a)) % self.p

    def inv(self, a: int) -> int:
        if self.check(a) == 0:
            raise FieldError("inversion of 0 in GF(p)")
        return pow(a, self.p - 2, self.p)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(self.check(a), e, self.p)

    def elements(self) -> range:
        return range(self.p)

    def units(self) -> range:
        return range(1, self.p)

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero residue."""
        if self.check(a) == 0:
            raise FieldError("0 has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = x * a % self.p
            k += 1
        return k


@lru_cache(maxsize=None)
def check_modulus(p: int) -> None:
    FieldSpec(p)


def field_op(field: FieldSpec, op: str, a: int, b: int | None = None) -> int:
    """Dispatch one of ``add``, ``mul``, ``neg``, ``inv`` by name."""
    if op == "add":
        return field.add(a, _need(b))
    if op == "mul":
        return field.mul(a, _need(b))
    if op == "neg":
        return field.neg(a)
    if op == "inv":
        return field.inv(a)
    raise FieldError(f"unknown field operation {op!r}")


def _need(b: int | None) -> int:
    if b is None:
        raise FieldError("binary operation needs a second operand")
    return b
