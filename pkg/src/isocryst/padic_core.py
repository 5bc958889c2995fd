"""Truncated p-adic coefficient rings.

Two layers:

* :class:`UnramifiedRing` -- ``(Z/p^N)[x]/(g)`` with ``g`` monic and irreducible
  mod ``p``; a truncation of the Witt vectors ``W(F_{p^f})``.
* :class:`EisensteinRing` -- ``base[pi]/(P(pi))`` for an Eisenstein polynomial
  ``P`` with integer coefficients, still truncated mod ``p^N``.

Elements carry an absolute pi-adic precision so that exact division by ``pi``
(which forgets one pi-adic digit) never silently manufactures information.
Square classes and Hilbert symbols of the fraction field are computed from the
leading unit residue, which is valid because ``p`` is odd.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

from .errors import NonUnit, PrecisionExhausted, ZeroArgument

Coeffs = tuple[int, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldParams:
    """A p-adic field F with ramification index e and inertia degree f."""

    p: int
    e: int = 1
    f: int = 1

    def __post_init__(self) -> None:
        if self.p < 3 or not is_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.e < 1 or self.f < 1:
            raise ValueError("e and f must be positive")

    @property
    def d(self) -> int:
        return self.e * self.f

    @property
    def q(self) -> int:
        return self.p ** self.f

    def ring(self, N: int = 6, P: Sequence[int] | None = None) -> "EisensteinRing":
        """Ring of integers of F truncated mod p^N (default P = T^e + p)."""
        return EisensteinRing(UnramifiedRing(self.p, self.f, N), P, e=self.e)


# ---------------------------------------------------------------------------
# polynomials over Z/m, coefficient tuples low -> high


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a by b over F_p (b nonzero)."""
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def _poly_gcd_p(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        a, b = b, _poly_mod_p(a, b, p)
    return a


def _mulmod(a: Coeffs, b: Coeffs, g: Coeffs, m: int) -> Coeffs:
    """Product in (Z/m)[x]/(g), g monic of degree len(a)."""
    f = len(g) - 1
    if f == 1:
        return ((a[0] * b[0]) % m,)
    prod = [0] * (2 * f - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for k in range(2 * f - 2, f - 1, -1):
        c = prod[k]
        if c:
            for i in range(f):
                prod[k - f + i] -= c * g[i]
    return tuple(x % m for x in prod[:f])


def _powmod(a: Coeffs, n: int, g: Coeffs, m: int) -> Coeffs:
    f = len(g) - 1
    result: Coeffs = (1,) + (0,) * (f - 1)
    while n:
        if n & 1:
            result = _mulmod(result, a, g, m)
        a = _mulmod(a, a, g, m)
        n >>= 1
    return result


def _prime_factors(n: int) -> list[int]:
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible_mod_p(g: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial (coefficients low -> high)."""
    g = tuple(x % p for x in g)
    n = len(g) - 1
    if n < 1 or g[-1] != 1:
        return False
    if n == 1:
        return True
    x: Coeffs = (0, 1) + (0,) * (n - 2)

    def frob_power(k: int) -> Coeffs:
        return _powmod(x, p ** k, g, p)

    if frob_power(n) != x:
        return False
    for r in _prime_factors(n):
        h = list(frob_power(n // r))
        h[1] -= 1
        if len(_poly_gcd_p(h, list(g), p)) > 1:
            return False
    return True


def default_modulus(p: int, f: int) -> Coeffs:
    """First monic irreducible of degree f, scanning c_0 + c_1 p + ... upward."""
    for idx in range(p ** f):
        coeffs = []
        t = idx
        for _ in range(f):
            coeffs.append(t % p)
            t //= p
        g = tuple(coeffs) + (1,)
        if is_irreducible_mod_p(g, p):
            return g
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------
# residue fields


class ResidueField:
    """The finite field F_p[x]/(g); elements are coefficient tuples."""

    def __init__(self, p: int, f: int, modulus: Sequence[int] | None = None):
        self.p = p
        self.f = f
        self.q = p ** f
        g = tuple(modulus) if modulus is not None else default_modulus(p, f)
        self.modulus: Coeffs = tuple(x % p for x in g)
        if not is_irreducible_mod_p(self.modulus, p):
            raise ValueError(f"modulus {g} is not irreducible mod {p}")
        self.zero: Coeffs = (0,) * f
        self.one: Coeffs = (1,) + (0,) * (f - 1)

    def __repr__(self) -> str:
        return f"ResidueField(F_{self.q})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ResidueField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    def from_index(self, idx: int) -> Coeffs:
        out = []
        for _ in range(self.f):
            out.append(idx % self.p)
            idx //= self.p
        return tuple(out)

    def index(self, z: Coeffs) -> int:
        return sum(c * self.p ** i for i, c in enumerate(z))

    def elements(self) -> Iterator[Coeffs]:
        for i in range(self.q):
            yield self.from_index(i)

    def scalar(self, c: int) -> Coeffs:
        return (c % self.p,) + (0,) * (self.f - 1)

    def add(self, a: Coeffs, b: Coeffs) -> Coeffs:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a: Coeffs, b: Coeffs) -> Coeffs:
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a: Coeffs) -> Coeffs:
        return tuple(-x % self.p for x in a)

    def mul(self, a: Coeffs, b: Coeffs) -> Coeffs:
        return _mulmod(a, b, self.modulus, self.p)

    def pow(self, a: Coeffs, n: int) -> Coeffs:
        if n < 0:
            return _powmod(self.inv(a), -n, self.modulus, self.p)
        return _powmod(a, n, self.modulus, self.p)

    def inv(self, a: Coeffs) -> Coeffs:
        if not any(a):
            raise ZeroDivisionError("inverse of 0 in residue field")
        return _powmod(a, self.q - 2, self.modulus, self.p)

    def legendre(self, a: Coeffs) -> int:
        """Quadratic character: 1, -1, or 0 for the zero element."""
        if not any(a):
            return 0
        return 1 if _powmod(a, (self.q - 1) // 2, self.modulus, self.p) == self.one else -1

    @cached_property
    def nonresidue(self) -> Coeffs:
        for z in self.elements():
            if self.legendre(z) == -1:
                return z
        raise AssertionError("every element is a square")  # pragma: no cover


# ---------------------------------------------------------------------------
# unramified ring


def _vp(x: int, p: int, cap: int) -> int:
    if x == 0:
        return cap
    v = 0
    while x % p == 0 and v < cap:
        x //= p
        v += 1
    return v


class UnramifiedRing:
    """W_N(F_{p^f}) realised as (Z/p^N)[x]/(g)."""

    def __init__(self, p: int, f: int, N: int, modulus: Sequence[int] | None = None):
        if N < 1:
            raise ValueError("precision N must be positive")
        self.p, self.f, self.N = p, f, N
        self.M = p ** N
        self.residue_field = ResidueField(p, f, modulus)
        g = tuple(modulus) if modulus is not None else self.residue_field.modulus
        self.modulus: Coeffs = tuple(int(c) for c in g)
        self.zero: Coeffs = (0,) * f
        self.one: Coeffs = (1,) + (0,) * (f - 1)
        self._frob_images = self._powers(self._frobenius_root())
        inv_root = self.gen
        for _ in range(f - 1):
            inv_root = self.frob(inv_root)
        self._frob_inv_images = self._powers(inv_root)

    def __repr__(self) -> str:
        return f"UnramifiedRing(p={self.p}, f={self.f}, N={self.N}, modulus={self.modulus})"

    @property
    def gen(self) -> Coeffs:
        if self.f == 1:
            return (0,)
        return (0, 1) + (0,) * (self.f - 2)

    def mul(self, a: Coeffs, b: Coeffs) -> Coeffs:
        return _mulmod(a, b, self.modulus, self.M)

    def add(self, a: Coeffs, b: Coeffs) -> Coeffs:
        return tuple((x + y) % self.M for x, y in zip(a, b))

    def scale(self, c: int, a: Coeffs) -> Coeffs:
        return tuple(c * x % self.M for x in a)

    def _powers(self, xi: Coeffs) -> tuple[Coeffs, ...]:
        out = [self.one]
        for _ in range(self.f - 1):
            out.append(self.mul(out[-1], xi))
        return tuple(out)

    def _evaluate(self, poly: Sequence[int], xi: Coeffs) -> Coeffs:
        acc = self.zero
        for c in reversed(poly):
            acc = self.add(self.mul(acc, xi), self.scale(c, self.one))
        return acc

    def unit_inverse(self, a: Coeffs) -> Coeffs:
        rf = self.residue_field
        r = tuple(x % self.p for x in a)
        if not any(r):
            raise NonUnit("element is divisible by p")
        y = rf.inv(r)
        two = self.scale(2, self.one)
        for _ in range(self.N.bit_length() + 1):
            ay = self.mul(a, y)
            y = self.mul(y, tuple((t - s) % self.M for t, s in zip(two, ay)))
        return y

    def _frobenius_root(self) -> Coeffs:
        """Hensel lift of x^p to a root of the modulus."""
        if self.f == 1:
            return (0,)
        g = self.modulus
        dg = [i * g[i] for i in range(1, len(g))]
        xi = _powmod(self.gen, self.p, g, self.M)
        for _ in range(2 * self.N + 4):
            step = self.mul(self._evaluate(g, xi), self.unit_inverse(self._evaluate(dg, xi)))
            if not any(step):
                break
            xi = tuple((a - b) % self.M for a, b in zip(xi, step))
        return xi

    def _substitute(self, a: Coeffs, images: tuple[Coeffs, ...]) -> Coeffs:
        out = [0] * self.f
        for c, img in zip(a, images):
            if c:
                for i, t in enumerate(img):
                    out[i] += c * t
        return tuple(x % self.M for x in out)

    def frob(self, a: Coeffs, k: int = 1) -> Coeffs:
        """sigma^k of a base element; k may be negative."""
        k %= self.f
        for _ in range(k):
            a = self._substitute(a, self._frob_images)
        return a

    def frob_inv(self, a: Coeffs) -> Coeffs:
        return self._substitute(a, self._frob_inv_images)

    @cached_property
    def ring(self) -> "EisensteinRing":
        """The ring itself viewed as the trivial extension (pi = -p)."""
        return EisensteinRing(self, None, e=1)


# ---------------------------------------------------------------------------
# Eisenstein extension


class EisensteinRing:
    """base[pi]/(P(pi)) truncated mod p^N; P monic Eisenstein with integer coefficients.

    ``P`` is given low -> high, e.g. ``(p, 0, 1)`` for ``T^2 + p``.  The default
    is ``T^e + p``, so ``pi^e = -p``.
    """

    def __init__(self, base: UnramifiedRing, P: Sequence[int] | None = None, e: int | None = None):
        p = base.p
        if P is None:
            e = 1 if e is None else e
            P = (p,) + (0,) * (e - 1) + (1,)
        P = tuple(int(c) for c in P)
        e = len(P) - 1
        if e < 1 or P[-1] != 1:
            raise ValueError("P must be monic of degree >= 1")
        if any(c % p for c in P[:-1]) or P[0] % (p * p) == 0:
            raise ValueError(f"{P} is not Eisenstein at {p}")
        self.base = base
        self.p, self.f, self.N, self.M = p, base.f, base.N, base.M
        self.e = e
        self.P = P
        self.cap = base.N * e
        self.residue_field = base.residue_field
        w0 = P[0] // p
        self._w0_inv = pow(w0, -1, self.M)
        # residue of the unit p / pi^e
        self.rho = (-pow(w0, -1, p)) % p
        # p/pi = -(pi^{e-1} + a_{e-1} pi^{e-2} + ... + a_1) / w0
        self._p_over_pi = self.make(
            tuple(base.scale(-P[k + 1] * self._w0_inv, base.one) for k in range(e))
        )

    def __repr__(self) -> str:
        return f"EisensteinRing(p={self.p}, e={self.e}, f={self.f}, N={self.N}, P={self.P})"

    @property
    def params(self) -> FieldParams:
        return FieldParams(self.p, self.e, self.f)

    def same_as(self, other: "EisensteinRing") -> bool:
        return (
            self is other
            or (self.p, self.e, self.f, self.N, self.P, self.base.modulus)
            == (other.p, other.e, other.f, other.N, other.P, other.base.modulus)
        )

    def with_precision(self, N: int) -> "EisensteinRing":
        return EisensteinRing(UnramifiedRing(self.p, self.f, N, self.base.modulus), self.P)

    # -- constructors -----------------------------------------------------
    def make(self, c: Sequence[Coeffs], prec: int | None = None) -> "Elem":
        return Elem(self, tuple(tuple(x % self.M for x in ck) for ck in c), self.cap if prec is None else prec)

    def from_base(self, a: Coeffs) -> "Elem":
        return self.make((tuple(a),) + (self.base.zero,) * (self.e - 1))

    def __call__(self, x: "int | Fraction | Elem | Sequence[int]") -> "Elem":
        if isinstance(x, Elem):
            if not x.ring.same_as(self):
                raise ValueError("element belongs to a different ring")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise NonUnit(f"{x} is not p-integral")
            return self(x.numerator) * self(x.denominator).inverse()
        if isinstance(x, int):
            return self.from_base(self.base.scale(x, self.base.one))
        return self.from_base(tuple(x))

    @cached_property
    def zero(self) -> "Elem":
        return self(0)

    @cached_property
    def one(self) -> "Elem":
        return self(1)

    @cached_property
    def pi(self) -> "Elem":
        if self.e == 1:
            return self(-self.P[0])
        z = self.base.zero
        return self.make(tuple(self.base.one if k == 1 else z for k in range(self.e)))

    def pi_power(self, k: int) -> "Elem":
        if k < 0:
            raise ValueError("negative power of pi")
        return self.pi ** k

    def lift(self, r: Coeffs) -> "Elem":
        """Lift of a residue-field element with digits in [0, p)."""
        return self.from_base(tuple(int(c) for c in r))

    @cached_property
    def nonresidue(self) -> "Elem":
        """Fixed unit u whose residue is the first non-square of the residue field."""
        return self.lift(self.residue_field.nonresidue)

    def square_class_reps(self) -> list["Elem"]:
        """Representatives 1, u, pi, u*pi in canonical order."""
        u = self.nonresidue
        return [self.one, u, self.pi, u * self.pi]


class Elem:
    """Element of an EisensteinRing with absolute pi-adic precision ``prec``."""

    __slots__ = ("ring", "c", "prec", "_ord")

    def __init__(self, ring: EisensteinRing, c: tuple[Coeffs, ...], prec: int):
        self.ring = ring
        self.c = c
        self.prec = min(prec, ring.cap)
        self._ord: int | None = None

    # -- valuation ----------------------------------------------------------
    def ord(self) -> int:
        """pi-adic valuation, clipped at the precision (``ord() == prec`` means zero)."""
        if self._ord is None:
            R = self.ring
            best = R.cap
            for k, ck in enumerate(self.c):
                v = min(_vp(x, R.p, R.N) for x in ck)
                best = min(best, R.e * v + k)
            self._ord = min(best, self.prec)
        return self._ord

    def is_zero(self) -> bool:
        return self.ord() >= self.prec

    def valuation(self) -> int:
        """Exact valuation; raises if the element is indistinguishable from 0."""
        if self.is_zero():
            raise PrecisionExhausted("valuation of an element that is zero to working precision")
        return self.ord()

    def is_unit(self) -> bool:
        return self.prec > 0 and self.ord() == 0

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other: object) -> "Elem":
        if isinstance(other, Elem):
            if other.ring is not self.ring and not other.ring.same_as(self.ring):
                raise ValueError("mixing elements of different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "Elem":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        M = self.ring.M
        c = tuple(tuple((x + y) % M for x, y in zip(a, b)) for a, b in zip(self.c, o.c))
        return Elem(self.ring, c, min(self.prec, o.prec))

    __radd__ = __add__

    def __neg__(self) -> "Elem":
        M = self.ring.M
        return Elem(self.ring, tuple(tuple(-x % M for x in a) for a in self.c), self.prec)

    def __sub__(self, other: object) -> "Elem":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "Elem":
        return (-self) + other

    def __mul__(self, other: object) -> "Elem":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        R = self.ring
        e, base = R.e, R.base
        prec = min(self.prec + o.ord(), o.prec + self.ord(), R.cap)
        if e == 1:
            return Elem(R, (base.mul(self.c[0], o.c[0]),), prec)
        f = R.f
        prod = [[0] * f for _ in range(2 * e - 1)]
        for i, ai in enumerate(self.c):
            if not any(ai):
                continue
            for j, bj in enumerate(o.c):
                if not any(bj):
                    continue
                t = base.mul(ai, bj)
                row = prod[i + j]
                for l in range(f):
                    row[l] += t[l]
        P = R.P
        for k in range(2 * e - 2, e - 1, -1):
            top = prod[k]
            if any(top):
                for i in range(e):
                    if P[i]:
                        row = prod[k - e + i]
                        for l in range(f):
                            row[l] -= P[i] * top[l]
        M = R.M
        return Elem(R, tuple(tuple(x % M for x in prod[k]) for k in range(e)), prec)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Elem":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def inverse(self) -> "Elem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.ord() != 0:
            raise NonUnit("element is not a unit")
        R = self.ring
        y = R.from_base(R.base.unit_inverse(self.c[0]))
        two = R(2)
        for _ in range(R.cap.bit_length() + 1):
            y = y * (two - self * y)
        return Elem(R, y.c, self.prec)

    def _div_pi(self) -> "Elem":
        R = self.ring
        if self.prec < 1:
            raise PrecisionExhausted("no precision left to divide by pi")
        if self.ord() < 1:
            raise NonUnit("element is not divisible by pi")
        c0 = self.c[0]
        if any(x % R.p for x in c0):
            raise PrecisionExhausted("inconsistent digits beyond precision")
        q0 = tuple(x // R.p for x in c0)
        rest = self.c[1:] + (R.base.zero,)
        out = Elem(R, rest, R.cap) + R.from_base(q0) * R._p_over_pi
        return Elem(R, out.c, self.prec - 1)

    def shift_down(self, k: int) -> "Elem":
        """Exact quotient by pi^k."""
        x = self
        for _ in range(k):
            x = x._div_pi()
        return x

    def __truediv__(self, other: object) -> "Elem":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            raise PrecisionExhausted("division by an element that is zero to working precision")
        k = o.ord()
        if self.is_zero():
            return Elem(self.ring, self.ring.zero.c, max(self.prec - k, 0))
        if self.ord() < k:
            raise NonUnit("quotient is not integral")
        return self.shift_down(k) * o.shift_down(k).inverse()

    def divides(self, other: "Elem") -> bool:
        """True if other / self is integral."""
        return other.is_zero() or (not self.is_zero() and other.ord() >= self.ord())

    # -- Frobenius and residues --------------------------------------------
    def frobenius(self, k: int = 1) -> "Elem":
        base = self.ring.base
        return Elem(self.ring, tuple(base.frob(a, k) for a in self.c), self.prec)

    def is_sigma_invariant(self) -> bool:
        return self.frobenius() == self

    def residue(self) -> Coeffs:
        p = self.ring.p
        return tuple(x % p for x in self.c[0])

    def leading_term(self) -> tuple[int, Coeffs]:
        """(ord, residue of x / pi^ord) for a nonzero element."""
        R = self.ring
        n = self.valuation()
        v, k0 = divmod(n, R.e)
        pv = R.p ** v
        w = tuple((x // pv) % R.p for x in self.c[k0])
        rf = R.residue_field
        return n, rf.mul(w, rf.scalar(pow(R.rho, v, R.p)))

    def to_json(self) -> list[list[int]]:
        return [list(a) for a in self.c]

    def __repr__(self) -> str:
        R = self.ring
        terms = []
        for k, a in enumerate(self.c):
            if any(a):
                coeff = str(a[0]) if R.f == 1 else "(" + ",".join(map(str, a)) + ")"
                terms.append(coeff + ("" if k == 0 else "*pi" if k == 1 else f"*pi^{k}"))
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(pi^{self.prec})"


# ---------------------------------------------------------------------------
# frobenius (module-level convenience)


def frobenius(a: Elem, k: int = 1) -> Elem:
    """sigma^k, acting on the unramified coefficients and fixing pi."""
    return a.frobenius(k)


# ---------------------------------------------------------------------------
# square classes and Hilbert symbols


@dataclass(frozen=True, order=True)
class SquareClass:
    """Element of F^x / F^x2 for p odd: (ord mod 2, non-residue bit of the unit part)."""

    val_parity: int
    unit_class: int

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return SquareClass(self.val_parity ^ other.val_parity, self.unit_class ^ other.unit_class)

    @property
    def is_identity(self) -> bool:
        return not (self.val_parity or self.unit_class)

    def label(self) -> str:
        return {(0, 0): "1", (0, 1): "u", (1, 0): "pi", (1, 1): "u*pi"}[(self.val_parity, self.unit_class)]

    def __str__(self) -> str:
        return f"[{self.label()}]"

    @classmethod
    def all(cls) -> list["SquareClass"]:
        """The four classes in canonical order 1, u, pi, u*pi."""
        return [cls(0, 0), cls(0, 1), cls(1, 0), cls(1, 1)]


ONE_CLASS = SquareClass(0, 0)

FieldElem = "int | Fraction | Elem"


def _factors(a: object, field: EisensteinRing | None) -> list[Elem]:
    """Nonzero integral factors whose square classes multiply to that of a."""
    if isinstance(a, Elem):
        if a.is_zero():
            raise ZeroArgument("zero argument")
        return [a]
    if field is None:
        raise TypeError("a field (EisensteinRing) is required for non-Elem arguments")
    if isinstance(a, Fraction):
        if a == 0:
            raise ZeroArgument("zero argument")
        return _factors(a.numerator, field) + _factors(a.denominator, field)
    if isinstance(a, int):
        if a == 0:
            raise ZeroArgument("zero argument")
        x = field(a)
        if x.is_zero():
            raise PrecisionExhausted(f"{a} vanishes at the working precision")
        return [x]
    raise TypeError(f"unsupported field element {a!r}")


def _leading(a: object, field: EisensteinRing | None) -> tuple[int, Coeffs, EisensteinRing]:
    parts = _factors(a, field)
    R = parts[0].ring
    rf = R.residue_field
    n, r = 0, rf.one
    for x in parts:
        k, w = x.leading_term()
        n += k
        r = rf.mul(r, w)
    return n, r, R


def square_class(a: object, field: EisensteinRing | None = None) -> SquareClass:
    n, r, R = _leading(a, field)
    return SquareClass(n % 2, 0 if R.residue_field.legendre(r) == 1 else 1)


def _as_ring(params: object) -> EisensteinRing | None:
    if isinstance(params, EisensteinRing):
        return params
    if isinstance(params, FieldParams):
        return params.ring()
    if params is None:
        return None
    raise TypeError("params must be FieldParams or EisensteinRing")


def hilbert_symbol(a: object, b: object, params: "FieldParams | EisensteinRing | None" = None) -> int:
    """(a, b) in {+1, -1} by the tame formula for odd residue characteristic."""
    field = _as_ring(params)
    alpha, u, R = _leading(a, field)
    beta, v, _ = _leading(b, field)
    rf = R.residue_field
    z = rf.mul(rf.pow(u, beta), rf.pow(v, -alpha))
    if (alpha * beta) % 2:
        z = rf.neg(z)
    return rf.legendre(z)
