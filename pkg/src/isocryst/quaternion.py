"""Quaternion algebras over a non-dyadic local field.

The division algebra is presented as ``L + L*Pi`` with ``L = F(sqrt(u))`` the
unramified quadratic extension, ``Pi^2 = -pi`` and ``Pi a = conj(a) Pi``.  The
split algebra is ``M_2(F)`` with involution ``x* = C^-1 x^t C``,
``C = [[0, 1], [-1, 0]]``, which is the adjugate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any

from .errors import AlgebraMismatch
from .linalg import Matrix, matmul, transpose
from .padic_core import EisensteinRing, Elem, FieldParams


class Kind(str, Enum):
    MATRIX = "matrix"
    DIVISION = "division"

    def __str__(self) -> str:
        return self.value


def as_kind(kind: "Kind | str") -> Kind:
    return kind if isinstance(kind, Kind) else Kind(str(kind).lower())


@dataclass(frozen=True)
class QuaternionAlgebra:
    params: FieldParams
    kind: Kind
    ring: EisensteinRing | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", as_kind(self.kind))
        if self.ring is None:
            object.__setattr__(self, "ring", self.params.ring())

    @property
    def inv(self) -> Fraction:
        return Fraction(0) if self.kind is Kind.MATRIX else Fraction(1, 2)

    @property
    def field_ring(self) -> EisensteinRing:
        assert self.ring is not None
        return self.ring

    # -- element constructors ---------------------------------------------
    def element(self, a: Any, b: Any = 0) -> "QuatElem":
        if self.kind is not Kind.DIVISION:
            raise AlgebraMismatch("a + b*Pi presentation exists only for the division algebra")
        return QuatElem(self, (self.L(a), self.L(b)))

    def matrix(self, rows: Any) -> "QuatElem":
        if self.kind is not Kind.MATRIX:
            raise AlgebraMismatch("matrix presentation exists only for the split algebra")
        R = self.field_ring
        return QuatElem(self, tuple(tuple(R(x) for x in row) for row in rows))

    def scalar(self, c: Any) -> "QuatElem":
        if self.kind is Kind.DIVISION:
            return self.element(c, 0)
        return self.matrix([[c, 0], [0, c]])

    def one(self) -> "QuatElem":
        return self.scalar(1)

    def zero(self) -> "QuatElem":
        return self.scalar(0)

    def Pi(self) -> "QuatElem":
        return self.element(0, 1)

    def L(self, a: Any) -> "LElem":
        if isinstance(a, LElem):
            return a
        R = self.field_ring
        if isinstance(a, list):  # [x, y] -> x + y*sqrt(eps)
            return LElem(R, R(a[0]), R(a[1]))
        return LElem(R, R(a), R.zero)

    @property
    def sqrt_eps(self) -> "LElem":
        R = self.field_ring
        return LElem(R, R.zero, R.one)


@dataclass(frozen=True, eq=False)
class LElem:
    """x + y*sqrt(eps) in the unramified quadratic extension L = F(sqrt(eps))."""

    ring: EisensteinRing
    x: Elem
    y: Elem

    @property
    def eps(self) -> Elem:
        return self.ring.nonresidue

    def __add__(self, o: "LElem") -> "LElem":
        return LElem(self.ring, self.x + o.x, self.y + o.y)

    def __sub__(self, o: "LElem") -> "LElem":
        return LElem(self.ring, self.x - o.x, self.y - o.y)

    def __neg__(self) -> "LElem":
        return LElem(self.ring, -self.x, -self.y)

    def __mul__(self, o: "LElem | Elem | int") -> "LElem":
        if not isinstance(o, LElem):
            return LElem(self.ring, self.x * o, self.y * o)
        return LElem(self.ring, self.x * o.x + self.eps * self.y * o.y, self.x * o.y + self.y * o.x)

    __rmul__ = __mul__

    def conj(self) -> "LElem":
        return LElem(self.ring, self.x, -self.y)

    def norm(self) -> Elem:
        return self.x * self.x - self.eps * self.y * self.y

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, LElem):
            return NotImplemented
        return (self - o).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"({self.x!r}) + ({self.y!r})*sqrt(eps)"


@dataclass(frozen=True, eq=False)
class QuatElem:
    algebra: QuaternionAlgebra
    data: Any  # (a, b) in L^2 for Division; 2x2 Matrix for Matrix kind

    def _check(self, other: "QuatElem") -> None:
        if not isinstance(other, QuatElem) or other.algebra != self.algebra:
            raise AlgebraMismatch("elements belong to different quaternion algebras")

    def __add__(self, other: "QuatElem") -> "QuatElem":
        self._check(other)
        if self.algebra.kind is Kind.DIVISION:
            return QuatElem(self.algebra, (self.data[0] + other.data[0], self.data[1] + other.data[1]))
        return QuatElem(
            self.algebra, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data))
        )

    def __neg__(self) -> "QuatElem":
        if self.algebra.kind is Kind.DIVISION:
            return QuatElem(self.algebra, (-self.data[0], -self.data[1]))
        return QuatElem(self.algebra, tuple(tuple(-a for a in r) for r in self.data))

    def __sub__(self, other: "QuatElem") -> "QuatElem":
        return self + (-other)

    def __mul__(self, other: "QuatElem") -> "QuatElem":
        return quat_mul(self, other)

    def scale(self, c: Elem) -> "QuatElem":
        if self.algebra.kind is Kind.DIVISION:
            return QuatElem(self.algebra, (self.data[0] * c, self.data[1] * c))
        return QuatElem(self.algebra, tuple(tuple(c * a for a in r) for r in self.data))

    def star(self) -> "QuatElem":
        """Canonical involution."""
        if self.algebra.kind is Kind.DIVISION:
            a, b = self.data
            return QuatElem(self.algebra, (a.conj(), -b))
        C = ((0, 1), (-1, 0))
        Cinv = ((0, -1), (1, 0))
        R = self.algebra.field_ring
        Cm = tuple(tuple(R(x) for x in r) for r in C)
        Cim = tuple(tuple(R(x) for x in r) for r in Cinv)
        return QuatElem(self.algebra, matmul(matmul(Cim, transpose(self.data)), Cm))

    def is_zero(self) -> bool:
        if self.algebra.kind is Kind.DIVISION:
            return self.data[0].is_zero() and self.data[1].is_zero()
        return all(a.is_zero() for r in self.data for a in r)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuatElem):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def is_pure(self) -> bool:
        return (self + self.star()).is_zero()

    def __repr__(self) -> str:
        if self.algebra.kind is Kind.DIVISION:
            return f"[{self.data[0]!r}] + [{self.data[1]!r}]*Pi"
        return f"Mat{self.data!r}"


def quat_mul(x: QuatElem, y: QuatElem) -> QuatElem:
    x._check(y)
    B = x.algebra
    if B.kind is Kind.DIVISION:
        a, b = x.data
        c, d = y.data
        pi = B.field_ring.pi
        # (a + bPi)(c + dPi) = (ac - pi b conj(d)) + (ad + b conj(c)) Pi
        return QuatElem(B, (a * c - (b * d.conj()) * pi, a * d + b * c.conj()))
    return QuatElem(B, matmul(x.data, y.data))


def reduced_norm_trace(x: QuatElem) -> tuple[Elem, Elem]:
    B = x.algebra
    if B.kind is Kind.DIVISION:
        a, b = x.data
        nrd = a.norm() + B.field_ring.pi * b.norm()
        trd = a.x + a.x
        return nrd, trd
    (p, q), (r, s) = x.data
    return p * s - q * r, p + s


def splitting_matrix(x: QuatElem) -> tuple[tuple[LElem, LElem], tuple[LElem, LElem]]:
    """Image of a + b*Pi in M_2(L): [[a, -pi*b], [conj(b), conj(a)]] (determinant = Nrd)."""
    B = x.algebra
    if B.kind is not Kind.DIVISION:
        raise AlgebraMismatch("splitting_matrix is defined for the division algebra")
    a, b = x.data
    return ((a, -(b * B.field_ring.pi)), (b.conj(), a.conj()))


def twist_invariant(B: QuaternionAlgebra) -> QuaternionAlgebra:
    """The algebra B' with inv(B') = d/2 - inv(B) mod 1."""
    inv = (Fraction(B.params.d, 2) - B.inv) % 1
    return QuaternionAlgebra(B.params, Kind.MATRIX if inv == 0 else Kind.DIVISION, B.ring)
