"""Exact arithmetic in small finite fields GF(p^m).

Elements are integers in ``[0, q)`` whose base-p digits are the coefficients of
the residue polynomial (the integer representation ``galois`` uses). The
arithmetic itself is delegated to ``galois`` field classes compiled in
lookup-table mode.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from functools import cached_property

import galois

from agqss.core.config import get_settings
from agqss.core.errors import FieldDivisionError, FieldMismatchError, FieldSpecError

logger = logging.getLogger(__name__)

MAX_ORDER = 256


class ArithKind(str, enum.Enum):
    add = "add"
    sub = "sub"
    mul = "mul"
    div = "div"


def _is_zero(poly: galois.Poly) -> bool:
    return poly.degree == 0 and int(poly.coeffs[0]) == 0


def _is_irreducible(modulus: galois.Poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..m//2."""
    prime_field = galois.GF(p)
    for degree in range(1, modulus.degree // 2 + 1):
        # monic polynomials of this degree are exactly the integers in [p^d, 2p^d)
        for value in range(p**degree, 2 * p**degree):
            divisor = galois.Poly.Int(value, field=prime_field)
            if _is_zero(modulus % divisor):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    p: int
    m: int
    modulus: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "modulus", tuple(int(c) for c in self.modulus))
        if not galois.is_prime(self.p):
            raise FieldSpecError(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise FieldSpecError(f"extension degree must be >= 1, got {self.m}")
        if self.p**self.m > MAX_ORDER:
            raise FieldSpecError(f"field order {self.p}^{self.m} exceeds the cap {MAX_ORDER}")
        if len(self.modulus) != self.m + 1:
            raise FieldSpecError(
                f"modulus needs {self.m + 1} coefficients for degree {self.m}, got {len(self.modulus)}"
            )
        if any(not 0 <= c < self.p for c in self.modulus):
            raise FieldSpecError(f"modulus coefficients must lie in [0, {self.p})")
        if self.modulus[0] != 1:
            raise FieldSpecError("modulus must be monic (leading coefficient 1)")
        if not _is_irreducible(self.modulus_poly, self.p):
            raise FieldSpecError(f"modulus {self.modulus_poly} is reducible over GF({self.p})")

    @classmethod
    def default(cls, p: int, m: int = 1) -> FieldSpec:
        """Spec with the configured default modulus (Conway polynomial when none is configured)."""
        if m == 1:
            return cls(p, 1, (1, 0))
        configured = get_settings().moduli.get(f"{p}^{m}")
        if configured is None:
            if not galois.is_prime(p) or p**m > MAX_ORDER:
                raise FieldSpecError(f"no field GF({p}^{m}) within the supported range")
            configured = [int(c) for c in galois.conway_poly(p, m).coeffs]
        return cls(p, m, tuple(configured))

    @classmethod
    def from_order(cls, q: int) -> FieldSpec:
        if q < 2 or not galois.is_prime_power(q):
            raise FieldSpecError(f"{q} is not a prime power")
        primes, exponents = galois.factors(q)
        return cls.default(primes[0], exponents[0])

    @property
    def order(self) -> int:
        return self.p**self.m

    @property
    def q(self) -> int:
        return self.order

    @property
    def modulus_poly(self) -> galois.Poly:
        return galois.Poly(list(self.modulus), field=galois.GF(self.p))

    @cached_property
    def GF(self) -> type[galois.FieldArray]:
        logger.debug("building GF(%d^%d) with modulus %s", self.p, self.m, self.modulus)
        if self.m == 1:
            return galois.GF(self.p, compile="jit-lookup")
        return galois.GF(self.order, irreducible_poly=self.modulus_poly, compile="jit-lookup")

    def element(self, value: int) -> FieldElement:
        return FieldElement(self, value)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def __str__(self) -> str:
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    value: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.spec.order:
            raise FieldSpecError(f"element repr {self.value} outside [0, {self.spec.order})")

    def _lift(self):
        return self.spec.GF(self.value)

    def _check(self, other: FieldElement) -> None:
        if not isinstance(other, FieldElement):
            raise FieldMismatchError(f"cannot combine a field element with {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatchError(f"elements of {self.spec} and {other.spec} are not comparable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldElement):
            return NotImplemented
        self._check(other)
        return self.value == other.value

    def __hash__(self) -> int:
        return hash((self.spec, self.value))

    def __add__(self, other: FieldElement) -> FieldElement:
        return arith(self, other, ArithKind.add)

    def __sub__(self, other: FieldElement) -> FieldElement:
        return arith(self, other, ArithKind.sub)

    def __mul__(self, other: FieldElement) -> FieldElement:
        return arith(self, other, ArithKind.mul)

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return arith(self, other, ArithKind.div)

    def __neg__(self) -> FieldElement:
        return FieldElement(self.spec, int(-self._lift()))

    def __pow__(self, e: int) -> FieldElement:
        return power(self, e)

    def inverse(self) -> FieldElement:
        return arith(self.spec.one, self, ArithKind.div)

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"FieldElement({self.value} in {self.spec})"


def arith(a: FieldElement, b: FieldElement, kind: ArithKind | str) -> FieldElement:
    a._check(b)
    kind = ArithKind(kind)
    x, y = a._lift(), b._lift()
    if kind is ArithKind.add:
        result = x + y
    elif kind is ArithKind.sub:
        result = x - y
    elif kind is ArithKind.mul:
        result = x * y
    else:
        if b.value == 0:
            raise FieldDivisionError(f"division by zero in {a.spec}")
        result = x / y
    return FieldElement(a.spec, int(result))


def power(a: FieldElement, e: int) -> FieldElement:
    """a**e for a nonnegative integer e, with 0**0 = 1."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    if e == 0:
        return a.spec.one
    return FieldElement(a.spec, int(a._lift() ** e))


def enumerate_field(spec: FieldSpec) -> list[FieldElement]:
    return [FieldElement(spec, v) for v in range(spec.order)]
