"""Function-field models with one-point Riemann-Roch spaces L(u Q_inf).

Two families are supported: the rational function field F_q(x), and the
Hermitian function field y^q0 + y = x^(q0+1) over F_(q0^2). The Hermitian
curve with q0 = 2 is y^2 + y = x^3 over F_4.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from agqss.core.errors import ConsistencyError, CurveError, EvaluationAtInfinityError
from agqss.models.fqmat import MatrixFq, as_ints
from agqss.models.gf import FieldElement, FieldSpec

logger = logging.getLogger(__name__)

Monomial = tuple[int, int]


class CurveKind(str, enum.Enum):
    rational = "rational"
    hermitian = "hermitian"


@dataclass(frozen=True)
class CurveModel:
    kind: CurveKind
    field: FieldSpec
    q0: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", CurveKind(self.kind))
        if self.kind is CurveKind.hermitian:
            if self.q0 is None or self.q0 < 2 or self.q0 * self.q0 != self.field.order:
                raise CurveError(
                    f"hermitian curve needs q = q0^2; got q = {self.field.order}, q0 = {self.q0}"
                )
        elif self.q0 is not None:
            raise CurveError("q0 only applies to the hermitian family")

    @classmethod
    def rational(cls, field: FieldSpec) -> CurveModel:
        return cls(CurveKind.rational, field)

    @classmethod
    def hermitian(cls, field: FieldSpec, q0: int) -> CurveModel:
        return cls(CurveKind.hermitian, field, q0)

    @property
    def coordinate_count(self) -> int:
        return 1 if self.kind is CurveKind.rational else 2

    def __str__(self) -> str:
        if self.kind is CurveKind.rational:
            return f"rational over {self.field}"
        return f"hermitian(q0={self.q0}) over {self.field}"


@dataclass(frozen=True, order=True)
class Place:
    """Rational place: affine point (coords as element reprs) or Q_inf (coords None)."""

    coords: tuple[int, ...] | None = None

    @classmethod
    def affine(cls, *coords: int) -> Place:
        return cls(tuple(int(c) for c in coords))

    @classmethod
    def infinity(cls) -> Place:
        return cls(None)

    @property
    def is_infinity(self) -> bool:
        return self.coords is None

    def __str__(self) -> str:
        return "Q_inf" if self.coords is None else str(self.coords)


INFINITY = Place.infinity()


@dataclass(frozen=True)
class RRBasis:
    u: int
    monomials: tuple[Monomial, ...]

    @property
    def dim(self) -> int:
        return len(self.monomials)


def genus(c: CurveModel) -> int:
    if c.kind is CurveKind.rational:
        return 0
    return c.q0 * (c.q0 - 1) // 2


def pole_order(c: CurveModel, mono: Monomial) -> int:
    a, b = mono
    if c.kind is CurveKind.rational:
        return a
    return c.q0 * a + (c.q0 + 1) * b


def enumerate_rational_places(c: CurveModel) -> list[Place]:
    q = c.field.order
    if c.kind is CurveKind.rational:
        return [Place.affine(x) for x in range(q)] + [INFINITY]

    GF = c.field.GF
    xs = GF(np.repeat(np.arange(q), q))
    ys = GF(np.tile(np.arange(q), q))
    on_curve = as_ints(ys**c.q0 + ys) == as_ints(xs ** (c.q0 + 1))
    points = zip(as_ints(xs)[on_curve].tolist(), as_ints(ys)[on_curve].tolist())
    return [Place.affine(x, y) for x, y in sorted(points)] + [INFINITY]


def affine_places(c: CurveModel) -> list[Place]:
    return [P for P in enumerate_rational_places(c) if not P.is_infinity]


def rr_basis(c: CurveModel, u: int) -> RRBasis:
    """Monomial basis of L(u Q_inf), sorted by pole order at Q_inf."""
    if u < 0:
        raise ValueError(f"divisor degree must be >= 0, got {u}")
    if c.kind is CurveKind.rational:
        monomials = [(a, 0) for a in range(u + 1)]
    else:
        monomials = [
            (a, b)
            for b in range(c.q0)
            for a in range((u - (c.q0 + 1) * b) // c.q0 + 1)
            if (c.q0 + 1) * b <= u
        ]
    monomials.sort(key=lambda mono: (pole_order(c, mono), mono[1]))

    g = genus(c)
    if u >= 2 * g - 1 and len(monomials) != u - g + 1:
        raise ConsistencyError(
            f"dim L({u} Q_inf) = {len(monomials)} on {c} but Riemann-Roch requires {u - g + 1}"
        )
    return RRBasis(u, tuple(monomials))


def _check_on_curve(c: CurveModel, P: Place) -> None:
    if P.is_infinity:
        raise EvaluationAtInfinityError("Q_inf is the support of G; evaluation there is undefined")
    if len(P.coords) != c.coordinate_count:
        raise CurveError(f"place {P} does not have {c.coordinate_count} coordinates for {c}")
    if any(not 0 <= v < c.field.order for v in P.coords):
        raise CurveError(f"place {P} has coordinates outside {c.field}")
    if c.kind is CurveKind.hermitian:
        GF = c.field.GF
        x, y = GF(P.coords[0]), GF(P.coords[1])
        if int(y**c.q0 + y) != int(x ** (c.q0 + 1)):
            raise CurveError(f"{P} does not lie on {c}")


def _power(arr, e: int):
    if e == 0:
        return type(arr).Ones(arr.shape)
    return arr**e


def evaluate(c: CurveModel, mono: Monomial, P: Place) -> FieldElement:
    _check_on_curve(c, P)
    GF = c.field.GF
    a, b = mono
    x = GF(P.coords[0])
    value = _power(x, a)
    if b:
        value = value * _power(GF(P.coords[1]), b)
    return FieldElement(c.field, int(value))


def evaluation_matrix(c: CurveModel, monomials: Sequence[Monomial], places: Sequence[Place]) -> MatrixFq:
    """Rows = monomials, columns = places."""
    if not monomials or not places:
        return MatrixFq.zeros(c.field, len(monomials), len(places))
    for P in places:
        _check_on_curve(c, P)
    GF = c.field.GF
    xs = GF([P.coords[0] for P in places])
    ys = GF([P.coords[1] for P in places]) if c.kind is CurveKind.hermitian else None
    rows = []
    for a, b in monomials:
        row = _power(xs, a)
        if b:
            row = row * _power(ys, b)
        rows.append(as_ints(row))
    return MatrixFq.from_array(c.field, np.vstack(rows))


def hasse_weil_bound(c: CurveModel) -> int:
    q = c.field.order
    return 1 + q + genus(c) * math.isqrt(4 * q)


def is_maximal(c: CurveModel) -> bool:
    return len(enumerate_rational_places(c)) == hasse_weil_bound(c)
