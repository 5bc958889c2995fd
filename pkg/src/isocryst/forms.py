"""Quadratic and skew-Hermitian quaternionic forms over a non-dyadic local field,
and the standard self-dual skew-Hermitian lattices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Any, Sequence

from .errors import AlgebraMismatch, ShapeInfeasible, ZeroEntry
from .linalg import Matrix, det, diag, identity, is_zero_matrix, madd, matmul, mscale, transpose, zeros
from .padic_core import EisensteinRing, Elem, FieldParams, SquareClass, hilbert_symbol, square_class
from .quaternion import Kind, LElem, QuatElem, QuaternionAlgebra, splitting_matrix

_CLASS_ORDER = {c: i for i, c in enumerate(SquareClass.all())}


def _ring_of(entries: Sequence[Any], field: Any) -> EisensteinRing:
    if isinstance(field, FieldParams):
        return field.ring()
    if isinstance(field, EisensteinRing):
        return field
    for x in entries:
        if isinstance(x, Elem):
            return x.ring
    raise TypeError("a field (FieldParams or EisensteinRing) is required for integer entries")


def _is_zero(x: Any) -> bool:
    return x.is_zero() if isinstance(x, Elem) else x == 0


# ---------------------------------------------------------------------------
# quadratic forms


@dataclass(frozen=True)
class QuadClass:
    n: int
    disc: SquareClass
    hasse: int

    def sort_key(self) -> tuple[int, int, int]:
        return (self.n, _CLASS_ORDER[self.disc], -self.hasse)

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "disc": self.disc.label(), "hasse": self.hasse}

    def __str__(self) -> str:
        return f"Q(n={self.n}, disc={self.disc}, hasse={self.hasse:+d})"


def classify_quadratic(diag_entries: Sequence[Any], field: Any = None) -> QuadClass:
    """Isometry class (discriminant, Hasse symbol) of the diagonal form <a_1, ..., a_n>."""
    a = list(diag_entries)
    if not a:
        raise ValueError("empty form")
    if any(_is_zero(x) for x in a):
        raise ZeroEntry("diagonal entries must be nonzero")
    R = _ring_of(a, field)
    n = len(a)
    disc = square_class(-1, R) if (n // 2) % 2 else SquareClass(0, 0)
    for x in a:
        disc = disc * square_class(x, R)
    hasse = 1
    for i in range(n):
        for j in range(i, n):
            hasse *= hilbert_symbol(a[i], a[j], R)
    return QuadClass(n, disc, hasse)


def enumerate_quad_classes(n: int, field: Any) -> list[QuadClass]:
    """All isometry classes of nondegenerate quadratic spaces of dimension n, canonical order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    R = _ring_of([], field)
    out = []
    if n == 1:
        for rep in R.square_class_reps():
            out.append(QuadClass(1, square_class(rep), hilbert_symbol(rep, rep, R)))
        return out
    hyperbolic_hasse = hilbert_symbol(-1, -1, R)
    for D in SquareClass.all():
        for h in (1, -1):
            if n == 2 and D.is_identity and h != hyperbolic_hasse:
                continue
            out.append(QuadClass(n, D, h))
    return out


def quad_class_representatives(n: int, field: Any) -> dict[QuadClass, list[Elem]]:
    """A diagonal form realising every class of dimension n, drawn from {1, u, pi, u*pi}."""
    R = _ring_of([], field)
    reps = R.square_class_reps()
    wanted = set(enumerate_quad_classes(n, R))
    found: dict[QuadClass, list[Elem]] = {}
    for combo in combinations_with_replacement(range(4), n):
        form = [reps[i] for i in combo]
        cls = classify_quadratic(form, R)
        if cls not in found:
            found[cls] = form
            if len(found) == len(wanted):
                break
    return {c: found[c] for c in sorted(found, key=QuadClass.sort_key)}


# ---------------------------------------------------------------------------
# skew-Hermitian forms over the division algebra


@dataclass(frozen=True)
class SkewHermClass:
    n: int
    disc: SquareClass

    def sort_key(self) -> tuple[int, int]:
        return (self.n, _CLASS_ORDER[self.disc])

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "disc": self.disc.label()}

    def __str__(self) -> str:
        return f"SQ(n={self.n}, disc={self.disc})"


def _L_ops(R: EisensteinRing) -> tuple[LElem, LElem]:
    return LElem(R, R.zero, R.zero), LElem(R, R.one, R.zero)


def reduced_norm_matrix(gram: Sequence[Sequence[QuatElem]]) -> Elem:
    """Reduced norm of an n x n matrix over the division algebra.

    Computed as the determinant of its image in M_{2n}(L) under the splitting
    a + b*Pi -> [[a, -pi*b], [conj(b), conj(a)]].
    """
    n = len(gram)
    B = gram[0][0].algebra
    if B.kind is not Kind.DIVISION:
        raise AlgebraMismatch("reduced_norm_matrix expects entries in the division algebra")
    R = B.field_ring
    zero, one = _L_ops(R)
    big = [[zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            s = splitting_matrix(gram[i][j])
            for k in range(2):
                for l in range(2):
                    big[2 * i + k][2 * j + l] = s[k][l]
    d = det(tuple(tuple(r) for r in big), zero, one)
    if not d.y.is_zero():
        raise ArithmeticError("reduced norm did not land in the base field")
    return d.x


def classify_skewhermitian(gram: Sequence[Sequence[QuatElem]]) -> SkewHermClass:
    n = len(gram)
    if n == 0:
        raise ValueError("empty form")
    for i in range(n):
        for j in range(n):
            if not (gram[j][i] + gram[i][j].star()).is_zero():
                raise ValueError("Gram matrix is not skew-Hermitian")
    nrd = reduced_norm_matrix(gram)
    if nrd.is_zero():
        raise ZeroEntry("degenerate skew-Hermitian form")
    disc = square_class(nrd)
    if (n // 2) % 2:
        disc = disc * square_class(-1, nrd.ring)
    return SkewHermClass(n, disc)


def enumerate_skewherm_classes(n: int, field: Any) -> list[SkewHermClass]:
    """Isometry classes of rank-n skew-Hermitian spaces over the division algebra.

    For n = 1 the discriminant is Nrd of a pure quaternion; the norm form on pure
    quaternions is anisotropic of determinant [1], so it misses exactly [-1].
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    R = _ring_of([], field)
    if n == 1:
        missing = square_class(-1, R)
        return [SkewHermClass(1, D) for D in SquareClass.all() if D != missing]
    return [SkewHermClass(n, D) for D in SquareClass.all()]


def pure_quaternion_reps(B: QuaternionAlgebra) -> list[QuatElem]:
    """Pure quaternions sqrt(eps), Pi, b*Pi whose norms cover the three unary classes."""
    if B.kind is not Kind.DIVISION:
        raise AlgebraMismatch("pure quaternion representatives are for the division algebra")
    R = B.field_ring
    rf = R.residue_field
    out = [B.element([0, 1]), B.Pi()]
    eps = rf.nonresidue
    for x in rf.elements():
        for y in rf.elements():
            nrm = rf.sub(rf.mul(x, x), rf.mul(eps, rf.mul(y, y)))
            if rf.legendre(nrm) == -1:
                b = LElem(R, R.lift(x), R.lift(y))
                out.append(QuatElem(B, (B.L(0), b)))
                return out
    raise AssertionError("norm from L is not surjective on units")  # pragma: no cover


def skewherm_class_representatives(n: int, B: QuaternionAlgebra) -> dict[SkewHermClass, Matrix]:
    """Diagonal Gram matrices of pure quaternions realising every class of rank n."""
    xis = pure_quaternion_reps(B)
    zero = B.zero()
    wanted = set(enumerate_skewherm_classes(n, B.field_ring))
    found: dict[SkewHermClass, Matrix] = {}
    for combo in combinations_with_replacement(range(len(xis)), n):
        gram = tuple(tuple(xis[combo[i]] if i == j else zero for j in range(n)) for i in range(n))
        cls = classify_skewhermitian(gram)
        if cls not in found:
            found[cls] = gram
            if len(found) == len(wanted):
                break
    return {c: found[c] for c in sorted(found, key=SkewHermClass.sort_key)}


# ---------------------------------------------------------------------------
# standard self-dual lattices


@dataclass(frozen=True)
class SelfDualLattice:
    """Graded self-dual skew-Hermitian lattice over O_B (x) W.

    Division kind: pieces M^j (j in Z/2f) of rank n; ``pi_maps[j]`` is Pi: M^j -> M^{j+f}
    and ``grams[j]`` pairs M^j with M^{j+f}.
    Matrix kind: pieces M^i (i in Z/f) of rank n_i = 2k with basis x_1..x_k, y_1..y_k;
    ``actions[i]`` gives the matrices of e11, e12, e21, e22 and ``grams[i]`` the
    alternating form on M^i.
    """

    algebra: QuaternionAlgebra
    shape: tuple[int, ...]
    grams: tuple[Matrix, ...]
    pi_maps: tuple[Matrix, ...] = ()
    actions: tuple[dict[str, Matrix], ...] = ()

    @property
    def ring(self) -> EisensteinRing:
        return self.algebra.field_ring

    def ranks(self) -> list[int]:
        return [len(g) for g in self.grams]

    def is_unimodular(self) -> bool:
        return all(det(G).is_unit() for G in self.grams)

    def is_compatible(self) -> bool:
        """psi(b x, y) = psi(x, b* y) on generators, and psi is alternating."""
        if self.algebra.kind is Kind.DIVISION:
            g = len(self.grams)
            f = g // 2
            for j in range(g):
                G, Gf = self.grams[j], self.grams[(j + f) % g]
                if not is_zero_matrix(madd(Gf, transpose(G))):
                    return False
                P = self.pi_maps[j]
                # psi(Pi x, y) = -psi(x, Pi y) for x, y in M^j  (Pi* = -Pi)
                if not is_zero_matrix(madd(matmul(transpose(P), Gf), matmul(G, P))):
                    return False
            return True
        star = {"e11": "e22", "e22": "e11", "e12": "e12", "e21": "e21"}
        sign = {"e11": 1, "e22": 1, "e12": -1, "e21": -1}
        for G, acts in zip(self.grams, self.actions):
            if not is_zero_matrix(madd(G, transpose(G))):
                return False
            for name, A in acts.items():
                lhs = matmul(transpose(A), G)
                rhs = mscale(self.ring(sign[name]), matmul(G, acts[star[name]]))
                if not is_zero_matrix(madd(lhs, mscale(self.ring(-1), rhs))):
                    return False
        return True

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": str(self.algebra.kind),
            "shape": list(self.shape),
            "grams": [[[x.to_json() for x in row] for row in G] for G in self.grams],
            "pi_maps": [[[x.to_json() for x in row] for row in P] for P in self.pi_maps],
        }


def standard_selfdual_lattice(algebra: QuaternionAlgebra, shape: Sequence[int]) -> SelfDualLattice:
    """The explicit self-dual lattice with the given grading data.

    Division kind: ``shape`` is (a_0, ..., a_{2f-1}) with a_j = dim M^j / Pi M^{j+f};
    Pi sends the first a_j basis vectors of M^j across and receives the rest.
    Matrix kind: ``shape`` is (n_0, ..., n_{f-1}), all even.
    """
    R = algebra.field_ring
    f = algebra.params.f
    shape = tuple(int(s) for s in shape)
    if any(s < 0 for s in shape):
        raise ShapeInfeasible("grading data must be non-negative")
    if algebra.kind is Kind.DIVISION:
        if len(shape) != 2 * f:
            raise ShapeInfeasible(f"division kind needs {2 * f} integers a_j, got {len(shape)}")
        n = shape[0] + shape[f]
        if any(shape[j] + shape[j + f] != n for j in range(f)):
            raise ShapeInfeasible("a_j + a_{j+f} must not depend on j")
        if n == 0:
            raise ShapeInfeasible("graded pieces must have positive rank")
        mpi = -R.pi
        pis: list[Matrix] = [()] * (2 * f)  # type: ignore[list-item]
        grams: list[Matrix] = [()] * (2 * f)  # type: ignore[list-item]
        for j in range(f):
            aj, ajf = shape[j], shape[j + f]
            pis[j] = diag(R, [R.one] * aj + [mpi] * ajf)
            pis[j + f] = diag(R, [mpi] * aj + [R.one] * ajf)
            grams[j] = identity(R, n)
            grams[j + f] = mscale(R(-1), identity(R, n))
        return SelfDualLattice(algebra, shape, tuple(grams), tuple(pis))
    if len(shape) != f:
        raise ShapeInfeasible(f"matrix kind needs {f} ranks n_i, got {len(shape)}")
    if any(s % 2 for s in shape):
        raise ShapeInfeasible("ranks of the graded pieces must be even")
    if any(s == 0 for s in shape):
        raise ShapeInfeasible("graded pieces must have positive rank")
    grams_m = []
    actions = []
    for n in shape:
        k = n // 2
        I, Z = identity(R, k), zeros(R, k)
        grams_m.append(_blocks(Z, I, mscale(R(-1), I), Z))
        actions.append(
            {
                "e11": _blocks(I, Z, Z, Z),
                "e12": _blocks(Z, I, Z, Z),
                "e21": _blocks(Z, Z, I, Z),
                "e22": _blocks(Z, Z, Z, I),
            }
        )
    return SelfDualLattice(algebra, shape, tuple(grams_m), (), tuple(actions))


def _blocks(A: Matrix, B: Matrix, C: Matrix, D: Matrix) -> Matrix:
    top = tuple(ra + rb for ra, rb in zip(A, B))
    bot = tuple(rc + rd for rc, rd in zip(C, D))
    return top + bot
