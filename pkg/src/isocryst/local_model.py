"""Special fibre of the local model over a finite field, by exhaustive enumeration.

Every R-submodule of R^2 (R = F_q[pi]/pi^e) of k-dimension e has a unique Hermite
form: its generators are the columns of ``[[pi^a, x], [0, pi^b]]`` with a + b = e and x
a polynomial of degree < a.  There are sum_a q^a of them, which is what gets searched.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterator, Sequence

from .errors import SearchSpaceTooLarge
from .padic_core import FieldParams, ResidueField

SCHEMA = "isocryst/1"
SEARCH_LIMIT = 10 ** 7

UNRAMIFIED = "unramified"
RAMIFIED = "ramified"

Vec = tuple[tuple[int, ...], tuple[int, ...]]  # pair of chain-ring elements


class ChainRing:
    """F_q[pi]/(pi^e); elements are length-e tuples of field indices (low -> high)."""

    def __init__(self, q: int, e: int, p: int | None = None):
        p = p or _prime_of(q)
        f = 0
        t = q
        while t % p == 0:
            t //= p
            f += 1
        if t != 1 or f == 0:
            raise ValueError(f"q = {q} is not a power of {p}")
        self.q, self.e, self.p = q, e, p
        field = ResidueField(p, f)
        els = [field.from_index(i) for i in range(q)]
        self.add_t = [[field.index(field.add(a, b)) for b in els] for a in els]
        self.mul_t = [[field.index(field.mul(a, b)) for b in els] for a in els]
        self.neg_t = [field.index(field.neg(a)) for a in els]
        self.field_inv = [0] + [next(j for j in range(1, q) if self.mul_t[i][j] == 1) for i in range(1, q)]
        self.zero = (0,) * e
        self.one = (1,) + (0,) * (e - 1) if e else ()

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.add_t[x][y] for x, y in zip(a, b))

    def neg(self, a: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.neg_t[x] for x in a)

    def sub(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return self.add(a, self.neg(b))

    def mul(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.e
        for i, x in enumerate(a):
            if x:
                for j in range(self.e - i):
                    if b[j]:
                        out[i + j] = self.add_t[out[i + j]][self.mul_t[x][b[j]]]
        return tuple(out)

    def pi_pow(self, k: int) -> tuple[int, ...]:
        return tuple(1 if i == k else 0 for i in range(self.e))

    def scalar(self, c: int) -> tuple[int, ...]:
        """Image of the integer c."""
        acc = 0
        for _ in range(c % self.p):
            acc = self.add_t[acc][1]
        return (acc,) + (0,) * (self.e - 1)

    def ord(self, a: Sequence[int]) -> int:
        return next((i for i, x in enumerate(a) if x), self.e)

    def shift_down(self, a: Sequence[int], k: int) -> tuple[int, ...]:
        """A representative of a / pi^k (requires ord a >= k)."""
        return tuple(a[k:]) + (0,) * k

    def unit_inverse(self, u: Sequence[int]) -> tuple[int, ...]:
        if not u[0]:
            raise ValueError("not a unit")
        inv0 = self.field_inv[u[0]]
        out = [inv0] + [0] * (self.e - 1)
        for k in range(1, self.e):
            acc = 0
            for i in range(1, k + 1):
                acc = self.add_t[acc][self.mul_t[u[i]][out[k - i]]]
            out[k] = self.mul_t[self.neg_t[acc]][inv0]
        return tuple(out)

    def truncate(self, a: Sequence[int], k: int) -> tuple[int, ...]:
        """Reduce modulo pi^k."""
        return tuple(a[:k]) + (0,) * (self.e - k)

    def polys_below(self, a: int) -> Iterator[tuple[int, ...]]:
        """All x of degree < a."""
        if a == 0:
            yield self.zero
            return
        for n in range(self.q ** a):
            digits = []
            for _ in range(a):
                n, r = divmod(n, self.q)
                digits.append(r)
            yield tuple(digits) + (0,) * (self.e - a)


def _prime_of(q: int) -> int:
    k = 2
    while q % k:
        k += 1
    return k


@dataclass(frozen=True)
class Hermite:
    """Submodule of R^2 spanned by (pi^a, 0) and (x, pi^b), a + b = e."""

    a: int
    b: int
    x: tuple[int, ...]

    def generators(self, R: ChainRing) -> tuple[Vec, Vec]:
        return (R.pi_pow(self.a), R.zero), (self.x, R.pi_pow(self.b))

    def contains(self, R: ChainRing, v: Vec) -> bool:
        v1, v2 = v
        if R.ord(v2) < self.b:
            return False
        t = R.shift_down(v2, self.b)
        return R.ord(R.sub(v1, R.mul(t, self.x))) >= self.a

    def elementary_divisors(self, R: ChainRing) -> tuple[int, int]:
        s = min(self.a, self.b, R.ord(self.x))
        return (s, R.e - s)

    def to_json(self) -> dict[str, Any]:
        return {"a": self.a, "b": self.b, "x": list(self.x)}


def hermite_forms(R: ChainRing) -> Iterator[Hermite]:
    for a in range(R.e + 1):
        for x in R.polys_below(a):
            yield Hermite(a, R.e - a, x)


def search_size(q: int, e: int) -> int:
    return sum(q ** a for a in range(e + 1))


@dataclass(frozen=True)
class ReducedLattice:
    """The reduction of the self-dual lattice chain at a place over p.

    Unramified: R^2 with the hyperbolic symmetric form, phi'(x1, x2) = 1.
    Ramified: two copies R^2 (indices tau, tau') with the dual pairing
    psi'(x_i, x'_j) = delta_ij and Pi = diag(1, -pi) : tau -> tau',
    Pi = diag(-pi, 1) : tau' -> tau (so Pi^2 = -pi).
    """

    params: FieldParams
    kind: str = UNRAMIFIED

    def __post_init__(self) -> None:
        if self.kind not in (UNRAMIFIED, RAMIFIED):
            raise ValueError(f"kind must be {UNRAMIFIED!r} or {RAMIFIED!r}")

    @property
    def e(self) -> int:
        return self.params.e

    @property
    def ramified(self) -> bool:
        return self.kind == RAMIFIED

    def gram(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((1, 0), (0, 1)) if self.ramified else ((0, 1), (1, 0))


@dataclass(frozen=True)
class LocalModelPoint:
    parts: tuple[Hermite, ...]  # one per factor (1 unramified, 2 ramified)
    lie_type: tuple[int, int]

    def basis(self, R: ChainRing) -> list[list[list[list[int]]]]:
        return [[[list(c) for c in g] for g in h.generators(R)] for h in self.parts]

    def to_json(self, R: ChainRing) -> dict[str, Any]:
        return {"basis": self.basis(R), "hermite": [h.to_json() for h in self.parts], "lie_type": list(self.lie_type)}


@dataclass(frozen=True)
class Orbit:
    lie_type: tuple[int, int]  # unordered, smaller entry first
    members: tuple[int, ...]  # indices into the point list

    def to_json(self) -> dict[str, Any]:
        return {"lie_type": list(self.lie_type), "members": list(self.members)}


def _pair(R: ChainRing, u: Vec, v: Vec, gram: Any) -> tuple[int, ...]:
    acc = R.zero
    for i in range(2):
        for j in range(2):
            if gram[i][j]:
                acc = R.add(acc, R.mul(R.mul(u[i], v[j]), R.scalar(gram[i][j])))
    return acc


def _apply_diag(R: ChainRing, d: tuple[tuple[int, ...], tuple[int, ...]], v: Vec) -> Vec:
    return R.mul(d[0], v[0]), R.mul(d[1], v[1])


def annihilator_generators(R: ChainRing, h: Hermite) -> tuple[Vec, Vec]:
    """Generators of the annihilator of h under the pairing with identity Gram matrix."""
    return (R.pi_pow(h.b), R.neg(h.x)), (R.zero, R.pi_pow(h.a))


def hermite_of(R: ChainRing, gens: Sequence[Vec]) -> Hermite:
    """Hermite form of the R-span of ``gens``, which must have k-dimension e."""
    e = R.e
    b = min(R.ord(g[1]) for g in gens)
    a = e - b
    w = next(g for g in gens if R.ord(g[1]) == b)
    if b < e:
        u = R.shift_down(w[1], b)  # w2 = pi^b * u with u a unit
        x = R.truncate(R.mul(w[0], R.unit_inverse(u)), a)
    else:
        x = R.zero
    h = Hermite(a, b, x)
    if not all(h.contains(R, g) for g in gens):
        raise ValueError("generators do not span a submodule of k-dimension e")
    return h


def enumerate_points(lat: ReducedLattice, q: int) -> list[LocalModelPoint]:
    """Isotropic (and, ramified, Pi-stable) submodules of k-dimension e per factor."""
    e = lat.e
    size = search_size(q, e)
    if size > SEARCH_LIMIT:
        raise SearchSpaceTooLarge(f"{size} Hermite forms for q={q}, e={e} exceed {SEARCH_LIMIT}")
    R = ChainRing(q, e, lat.params.p)
    G = lat.gram()
    points: list[LocalModelPoint] = []
    if not lat.ramified:
        for h in hermite_forms(R):
            g1, g2 = h.generators(R)
            if all(R.ord(_pair(R, u, v, G)) >= e for u in (g1, g2) for v in (g1, g2)):
                # basis-ordered Lie type when the point is split in (x1, x2)
                lie = (h.a, h.b) if R.ord(h.x) >= h.a else h.elementary_divisors(R)
                points.append(LocalModelPoint((h,), lie))
        return points
    mpi = R.neg(R.pi_pow(1))
    to_dash = (R.one, mpi)
    to_base = (mpi, R.one)
    for h in hermite_forms(R):
        gens = h.generators(R)
        # Pi(F_tau) must pair to zero with F_tau, i.e. lie in the annihilator
        if not all(
            R.ord(_pair(R, g, _apply_diag(R, to_dash, k), G)) >= e for g in gens for k in gens
        ):
            continue
        dual = annihilator_generators(R, h)
        if not all(h.contains(R, _apply_diag(R, to_base, g)) for g in dual):
            continue
        lie = tuple(sorted(h.elementary_divisors(R)))
        points.append(LocalModelPoint((h, hermite_of(R, dual)), lie))  # type: ignore[arg-type]
    return points


def classify_orbits(points: Sequence[LocalModelPoint], kind: str = UNRAMIFIED) -> list[Orbit]:
    """Group points by unordered Lie type {e1, e - e1}."""
    groups: dict[tuple[int, int], list[int]] = {}
    for i, pt in enumerate(points):
        key = tuple(sorted(pt.lie_type))
        groups.setdefault(key, []).append(i)  # type: ignore[arg-type]
    return [Orbit(k, tuple(v)) for k, v in sorted(groups.items())]


def expected_points(lat: ReducedLattice, q: int) -> list[tuple[Hermite, ...]]:
    """The closed-form point set: F_a = span(pi^a x1, pi^{e-a} x2) for 0 <= a <= e when
    unramified; pi^c Lambda on both factors (e = 2c) or span(pi^{c+1} x1, pi^c x2) on tau and
    span(pi^c x'1, pi^{c+1} x'2) on tau' (e = 2c + 1) when ramified."""
    e = lat.e
    zero = (0,) * e
    if not lat.ramified:
        return [(Hermite(a, e - a, zero),) for a in range(e + 1)]
    c = e // 2
    if e % 2 == 0:
        return [(Hermite(c, c, zero), Hermite(c, c, zero))]
    return [(Hermite(c + 1, c, zero), Hermite(c, c + 1, zero))]


def run_local_model(params: FieldParams, ramified: bool, q: int) -> dict[str, Any]:
    lat = ReducedLattice(params, RAMIFIED if ramified else UNRAMIFIED)
    pts = enumerate_points(lat, q)
    R = ChainRing(q, params.e, params.p)
    orbits = classify_orbits(pts, lat.kind)
    return {
        "schema": SCHEMA,
        "params": {"p": params.p, "e": params.e, "f": params.f},
        "kind": lat.kind,
        "q": q,
        "points": [pt.to_json(R) for pt in pts],
        "orbits": [o.to_json() for o in orbits],
    }
