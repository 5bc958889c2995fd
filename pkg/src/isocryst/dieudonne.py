"""Graded Dieudonne O_B-modules: explicit constructions and their verification.

Conventions.  A module is a tuple of free graded pieces ``M^0 .. M^{g-1}`` of
rank ``r`` over ``W[pi]`` (an :class:`EisensteinRing`), with coordinates as
column vectors.

* ``F[j]`` is the matrix ``A_j`` of ``F: M^j -> M^{j+1}``, ``F(x) = A_j sigma(x)``.
* ``V[j]`` is the matrix ``B_j`` of ``V: M^{j+1} -> M^j``, ``V(y) = B_j sigma^-1(y)``.
* Division kind (g = 2f): ``Pi[j]`` is ``Pi: M^j -> M^{j+f}`` and ``gram[j]``
  pairs ``M^j`` with ``M^{j+f}``, ``<x, y> = x^t G_j y``.
* Matrix kind (g = f, after Morita reduction): ``gram[i]`` is the O-bilinear
  symmetric form on ``M^i``; the W-valued form is its trace against the inverse
  different, which is perfect exactly when ``G_i`` is unimodular.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .errors import (
    BadLieType,
    NonInvariantEntries,
    NotIsoclinic,
    ParameterOutOfRange,
    PrecisionExhausted,
    UnitSystemUnsolvable,
)
from .linalg import (
    Matrix,
    block_diag,
    charpoly,
    columns_in_span,
    det,
    diag,
    elementary_divisors,
    identity,
    mat,
    mat_equal,
    mat_frob,
    matmul,
    matmul_chain,
    mmap,
    mscale,
    newton_slopes,
    scaled_inverse,
    spans_equal,
    transpose,
    zeros,
)
from .padic_core import EisensteinRing, Elem, FieldParams, UnramifiedRing
from .quaternion import Kind, as_kind
from .slopes import SlopeSeq, is_symmetric

SCHEMA = "isocryst/1"


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class LieType:
    """Per grading index, the pair (e1, e2) with e1 + e2 = e."""

    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def parse(cls, text: str) -> "LieType":
        pairs = []
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if chunk:
                a, b = (int(t) for t in chunk.split(","))
                pairs.append((a, b))
        return cls(tuple(pairs))

    def sorted_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(tuple(sorted(p)) for p in self.pairs)  # type: ignore[misc]

    def __str__(self) -> str:
        return ";".join(f"{a},{b}" for a, b in self.pairs)


@dataclass(frozen=True, eq=False)
class DieudonneModule:
    params: FieldParams
    kind: Kind
    m: int
    ring: EisensteinRing
    F: tuple[Matrix, ...]
    V: tuple[Matrix, ...]
    Pi: tuple[Matrix, ...] | None = None
    gram: tuple[Matrix, ...] | None = None
    label: str = ""
    target: SlopeSeq | None = None
    expected_lie: tuple[tuple[int, ...], ...] | None = None
    claims: frozenset[str] = field(default_factory=frozenset)

    @property
    def g(self) -> int:
        return len(self.F)

    @property
    def rank(self) -> int:
        return len(self.F[0])

    @property
    def height(self) -> int:
        return self.rank * self.params.e * self.g

    def to_json(self) -> dict[str, Any]:
        def enc(ms: Sequence[Matrix] | None) -> Any:
            if ms is None:
                return None
            return [[[x.to_json() for x in row] for row in A] for A in ms]

        R = self.ring
        return {
            "schema": SCHEMA,
            "label": self.label,
            "params": {"p": self.params.p, "e": self.params.e, "f": self.params.f},
            "kind": str(self.kind),
            "m": self.m,
            "grading": self.g,
            "rank": self.rank,
            "ring": {"unramified_degree": R.f, "modulus": list(R.residue_field.modulus), "eisenstein": list(R.P), "N": R.N},
            "F": enc(self.F),
            "V": enc(self.V),
            "Pi": enc(self.Pi),
            "gram": enc(self.gram),
        }


@dataclass
class Check:
    name: str
    passed: bool
    observed: Any
    expected: Any

    def to_json(self) -> dict[str, Any]:
        return {"name": self.name, "pass": self.passed, "observed": self.observed, "expected": self.expected}


@dataclass
class VerificationReport:
    label: str
    checks: list[Check]
    c: list[int]
    a: list[int] | None
    lie_type: list[list[int]]
    slope_seq: SlopeSeq | None

    @property
    def all_pass(self) -> bool:
        return all(ch.passed for ch in self.checks)

    def __getitem__(self, name: str) -> Check:
        for ch in self.checks:
            if ch.name == name:
                return ch
        raise KeyError(name)

    def names(self) -> list[str]:
        return [ch.name for ch in self.checks]

    def failed(self) -> list[str]:
        return [ch.name for ch in self.checks if not ch.passed]

    def to_json(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA,
            "label": self.label,
            "all_pass": self.all_pass,
            "c": self.c,
            "a": self.a,
            "lie_type": self.lie_type,
            "slope_seq": None if self.slope_seq is None else str(self.slope_seq),
            "checks": [ch.to_json() for ch in self.checks],
        }


# ---------------------------------------------------------------------------
# helpers


def _default_N(g: int, m: int) -> int:
    # det of the g-fold composite has pi-valuation g*e*m; leave headroom
    return g * m + 4


def _verschiebung(A: Matrix, p: Elem) -> Matrix:
    """B with A sigma(B) = p, i.e. B = sigma^-1(p A^-1)."""
    return mat_frob(scaled_inverse(A, p), -1)


def _module(
    params: FieldParams,
    kind: Kind,
    m: int,
    R: EisensteinRing,
    F: Sequence[Matrix],
    **kw: Any,
) -> DieudonneModule:
    p = R(params.p)
    V = tuple(_verschiebung(A, p) for A in F)
    return DieudonneModule(params, kind, m, R, tuple(F), V, **kw)


def _repeat(R: EisensteinRing, A: Matrix, m: int) -> Matrix:
    return block_diag(R, *([A] * m)) if m > 1 else A


def _pi_pow(R: EisensteinRing, k: int) -> Elem:
    return R.pi ** k


def _p_over_pi(R: EisensteinRing, k: int) -> Elem:
    """p / pi^k for 0 <= k <= e."""
    return R(R.p) / (R.pi ** k)


# ---------------------------------------------------------------------------
# constructions


def build_superspecial_matrix(params: FieldParams, m: int = 1, N: int | None = None) -> DieudonneModule:
    """F X_i = Y_{i+1}, F Y_i = p X_{i+1} with the hyperbolic symmetric pairing."""
    f = params.f
    R = params.ring(N or _default_N(f, m))
    A = _repeat(R, mat(R, [[0, params.p], [1, 0]]), m)
    H = _repeat(R, mat(R, [[0, 1], [1, 0]]), m)
    return _module(
        params,
        Kind.MATRIX,
        m,
        R,
        [A] * f,
        gram=(H,) * f,
        label=f"superspecial-matrix(p={params.p},e={params.e},f={f},m={m})",
        target=SlopeSeq.of((Fraction(1, 2), 2 * params.d * m)),
        expected_lie=tuple(tuple([0] * m + [params.e] * m) for _ in range(f)),
        claims=frozenset({"superspecial"}),
    )


def _teichmuller_twist_unit(R: EisensteinRing, f: int) -> Elem:
    """A unit u of W(F_{p^{2f}}) with sigma^f(u) = -u (Teichmuller lift)."""
    rf = R.residue_field
    for z in rf.elements():
        if any(z) and rf.pow(z, rf.p ** f) == rf.neg(z):
            t = R.lift(z)
            q = rf.q
            for _ in range(R.N + 1):
                t = t ** q
            return t
    raise UnitSystemUnsolvable("no residue element with z^(p^f) = -z")


def _solve_unit_system(R: EisensteinRing, f: int, c: int) -> tuple[list[Elem], list[Elem]]:
    """Units u_j, v_j (j in Z/2f) making G_j = [[0, u_j], [v_j, 0]] a separable pairing.

    With mu = -p / pi^{2c+1} the Frobenius condition reads v_{j+1} = mu sigma(u_j),
    u_{j+1} = mu sigma(v_j), and skewness reads u_{j+f} = -v_j.  For f odd and mu^f = 1
    (true for P = T^e + p, where mu = 1) the choice u_0 = v_0 = w with sigma^f(w) = -w
    closes the cycle; the result is checked rather than assumed.
    """
    mu = R(-R.p) / (R.pi ** (2 * c + 1))
    w = _teichmuller_twist_unit(R, f)
    g = 2 * f
    u, v = [w], [w]
    for j in range(g - 1):
        u.append(mu * v[j].frobenius())
        v.append(mu * u[j].frobenius())
    ok = all(
        (u[(j + f) % g] + v[j]).is_zero()
        and (mu * u[j].frobenius() - v[(j + 1) % g]).is_zero()
        and (mu * v[j].frobenius() - u[(j + 1) % g]).is_zero()
        for j in range(g)
    )
    if not ok or not all(x.is_unit() for x in u + v):
        raise UnitSystemUnsolvable("cyclic unit system has no solution over W(F_{p^{2f}}) at this precision")
    return u, v


def build_superspecial_division(params: FieldParams, N: int | None = None) -> DieudonneModule:
    """Superspecial separably quasi-polarized module of rank 4d with c_j = e for all j."""
    e, f, p = params.e, params.f, params.p
    c = e // 2
    g = 2 * f
    N = N or _default_N(g, 1)
    expected_lie = tuple((c, e - c) for _ in range(g))
    target = SlopeSeq.of((Fraction(1, 2), 4 * params.d))
    common = dict(
        target=target,
        expected_lie=expected_lie,
        claims=frozenset({"superspecial"}),
    )
    if f % 2 == 1 and e % 2 == 1:
        # work over W(F_{p^{2f}}) so that the unit system is solvable
        R = EisensteinRing(UnramifiedRing(p, 2 * f, N), None, e=e)
        A = mat(R, [[0, -_pi_pow(R, c + 1)], [_pi_pow(R, c), 0]])
        P = mat(R, [[0, -R.pi], [1, 0]])
        u, v = _solve_unit_system(R, f, c)
        G = tuple(mat(R, [[0, u[j]], [v[j], 0]]) for j in range(g))
        return _module(
            params, Kind.DIVISION, 1, R, [A] * g, Pi=(P,) * g, gram=G,
            label=f"superspecial-division(p={p},e={e},f={f})", **common,
        )
    R = params.ring(N)
    A = mat(R, [[0, -_p_over_pi(R, c)], [_pi_pow(R, c), 0]])
    if f % 2 == 0:
        P_even = mat(R, [[0, -R.pi], [1, 0]])
        P_odd = mat(R, [[0, -(R(p) / R.pi ** (2 * c))], [(R.pi ** (2 * c + 1)) / R(p), 0]])
        Pis = tuple(P_even if j % 2 == 0 else P_odd for j in range(g))
        G = (mat(R, [[0, 1], [-1, 0]]),) * g
    else:
        P_even = diag(R, [1, -R.pi])
        P_odd = diag(R, [-R.pi, 1])
        Pis = tuple(P_even if j % 2 == 0 else P_odd for j in range(g))
        q = R(p) / R.pi ** (2 * c)
        G = tuple(diag(R, [R((-1) ** j), R((-1) ** (j + 1)) * q]) for j in range(g))
    return _module(
        params, Kind.DIVISION, 1, R, [A] * g, Pi=Pis, gram=G,
        label=f"superspecial-division(p={p},e={e},f={f})", **common,
    )


def two_slope_parameters(params: FieldParams, a: int) -> tuple[int, int]:
    """(c, r) with a = 2cf + 2r + 1, validating the non-supersingular two-slope range."""
    e, f, d = params.e, params.f, params.d
    if e % 2 == 0:
        raise ParameterOutOfRange("two-slope construction needs e odd")
    if a % 2 == 0:
        raise ParameterOutOfRange("a must be odd")
    c = e // 2
    if not 2 * c * f <= a < d:
        raise ParameterOutOfRange(f"a must satisfy {2 * c * f} <= a < {d}")
    r2 = a - 2 * c * f - 1
    r = r2 // 2
    if not 0 < 2 * r + 1 < f:
        raise ParameterOutOfRange("a - 2cf must lie strictly between 0 and f")
    return c, r


def build_two_slope_division(params: FieldParams, a: int, N: int | None = None) -> DieudonneModule:
    """Division-kind module with Pi = [[0, -pi], [1, 0]] and slopes a/2d, (2d-a)/2d.

    F on M^0..M^{f-1} is the prescribed monomial family; F on M^{f}..M^{2f-1} is
    forced by F Pi = Pi F, i.e. F_{j+f} = Pi F_j Pi^-1 (Pi is constant).
    """
    c, r = two_slope_parameters(params, a)
    e, f, d = params.e, params.f, params.d
    g = 2 * f
    R = params.ring(N or _default_N(g, 1))
    x, y = _pi_pow(R, c), _p_over_pi(R, c)
    P = mat(R, [[0, -R.pi], [1, 0]])
    Fs: list[Matrix] = []
    for j in range(f):
        if j == 0:
            Fs.append(mat(R, [[0, -y], [x, 0]]))
        elif j <= r:
            Fs.append(diag(R, [x, y]))
        else:
            Fs.append(diag(R, [y, x]))
    # conjugate by Pi: Pi F_j Pi^{-1} = (Pi F_j (-Pi)) / pi
    upper = []
    for A in Fs:
        Q = matmul_chain(P, A, mscale(R(-1), P))
        upper.append(mmap(lambda t: t / R.pi, Q))
    Fs = Fs + upper
    G = (mat(R, [[0, 1], [-1, 0]]),) * g
    target = SlopeSeq.of((Fraction(a, 2 * d), 2 * d), (Fraction(2 * d - a, 2 * d), 2 * d))
    return _module(
        params, Kind.DIVISION, 1, R, Fs, Pi=(P,) * g, gram=G,
        label=f"two-slope-division(p={params.p},e={e},f={f},a={a})",
        target=target,
        expected_lie=tuple((c, e - c) for _ in range(g)),
    )


def build_matrix_lie_type(params: FieldParams, lie: LieType | Sequence[tuple[int, int]], N: int | None = None) -> DieudonneModule:
    """Matrix-kind (post-Morita) module with V X_{i+1} = pi^{e1} X_i, V Y_{i+1} = (p / pi^{e1}) Y_i."""
    if not isinstance(lie, LieType):
        lie = LieType(tuple(tuple(pair) for pair in lie))  # type: ignore[misc]
    e, f = params.e, params.f
    if len(lie.pairs) != f:
        raise BadLieType(f"need {f} pairs, got {len(lie.pairs)}")
    for e1, e2 in lie.pairs:
        if e1 < 0 or e2 < 0 or e1 + e2 != e:
            raise BadLieType(f"pair ({e1},{e2}) must be non-negative with sum {e}")
    R = params.ring(N or _default_N(f, 1))
    p = R(params.p)
    Vs = tuple(diag(R, [_pi_pow(R, e1), _p_over_pi(R, e1)]) for e1, _ in lie.pairs)
    Fs = tuple(mat_frob(scaled_inverse(B, p), 1) for B in Vs)
    H = mat(R, [[0, 1], [1, 0]])
    s1 = sum(e1 for e1, _ in lie.pairs)
    s2 = sum(e2 for _, e2 in lie.pairs)
    d = params.d
    target = SlopeSeq.of((Fraction(s1, d), d), (Fraction(s2, d), d))
    return DieudonneModule(
        params, Kind.MATRIX, 1, R, Fs, Vs, gram=(H,) * f,
        label=f"matrix-lie-type(p={params.p},e={e},f={f},lie={lie})",
        target=target,
        expected_lie=lie.sorted_pairs(),
    )


def build_example_13_5(p: int, N: int | None = None) -> DieudonneModule:
    """Superspecial module over Q_p with Pi := V whose tangent space is k^2 + 0.

    Fails the determinant condition by design.
    """
    params = FieldParams(p, 1, 1)
    R = params.ring(N or _default_N(2, 1))
    I = identity(R, 2)
    pI = mscale(R(p), I)
    # V: M^1 -> M^0 is p, V: M^0 -> M^1 is 1; Pi(x) := V(x)
    F = (I, pI)
    V = (pI, I)
    Pi = (I, pI)
    return DieudonneModule(
        params, Kind.DIVISION, 1, R, F, V, Pi=Pi, gram=None,
        label=f"example-13-5(p={p})",
        target=SlopeSeq.of((Fraction(1, 2), 4)),
        expected_lie=((1, 1), (0, 0)),
        claims=frozenset({"superspecial", "pi_kills_lie"}),
    )


# ---------------------------------------------------------------------------
# isoclinic blocks and the double construction


def etale_block(params: FieldParams, N: int | None = None) -> DieudonneModule:
    """Matrix-kind slope-0 block: F = identity on rank-2 pieces."""
    f = params.f
    R = params.ring(N or _default_N(f, 2))
    return _module(params, Kind.MATRIX, 1, R, [identity(R, 2)] * f, label="etale-block")


def superspecial_block(params: FieldParams, N: int | None = None) -> DieudonneModule:
    """Matrix-kind rank-2 superspecial block (no pairing)."""
    M = build_superspecial_matrix(params, 1, N)
    return DieudonneModule(M.params, M.kind, 1, M.ring, M.F, M.V, label="superspecial-block")


def random_isoclinic_block(params: FieldParams, kind: Kind | str, rng: random.Random, N: int | None = None) -> DieudonneModule:
    """A rank-one-per-piece isoclinic block with monomial F (and Pi for the division kind).

    Division kind: Pi_j = eps_j pi^{s_j} with s_{j+f} = 1 - s_j and eps_j eps_{j+f} = -1;
    F_j = pi^{k_j} for j < f and F_{j+f} = Pi_{j+1} F_j Pi_j^-1.  The slope is K / 2d with
    K = 2 sum k_j + 1 - 2 s_0 odd.
    Matrix kind: F_i = pi^{k_i}, slope sum k_i / d.
    """
    kind = as_kind(kind)
    e, f = params.e, params.f
    if kind is Kind.MATRIX:
        R = params.ring(N or _default_N(f, 2))
        ks = [rng.randint(0, e) for _ in range(f)]
        Fs = [((_pi_pow(R, k),),) for k in ks]
        return _module(params, kind, 1, R, Fs, label=f"block(matrix,k={ks})")
    g = 2 * f
    R = params.ring(N or _default_N(g, 2))
    while True:
        s = [rng.randint(0, 1) for _ in range(f)]
        s = s + [1 - t for t in s]
        ks = [rng.randint(0, e) for _ in range(f)]
        if all(0 <= ks[j] + s[(j + 1) % g] - s[j] <= e for j in range(f)):
            break
    eps = [rng.choice((1, -1)) for _ in range(f)]
    eps = eps + [-t for t in eps]
    Pis = [((R(eps[j]) * _pi_pow(R, s[j]),),) for j in range(g)]
    Fs: list[Matrix] = [((_pi_pow(R, k),),) for k in ks]
    for j in range(f):
        k = ks[j] + s[(j + 1) % g] - s[j]
        Fs.append(((R(eps[(j + 1) % g] * eps[j]) * _pi_pow(R, k),),))
    return _module(params, kind, 1, R, Fs, Pi=tuple(Pis), label=f"block(division,s={s[:f]},k={ks})")


def monomial_subblock(M: DieudonneModule, start: int = 0) -> DieudonneModule:
    """Rank-one sub-module spanned by the F-orbit of basis vector ``start`` of M^0.

    Requires F (and Pi) to be monomial along the orbit.
    """
    R = M.ring
    g = M.g
    idx = [start]
    Fs = []
    for j in range(g):
        col = [M.F[j][i][idx[j]] for i in range(M.rank)]
        nz = [i for i, t in enumerate(col) if not t.is_zero()]
        if len(nz) != 1:
            raise ValueError("F is not monomial along this orbit")
        Fs.append(((col[nz[0]],),))
        idx.append(nz[0])
    if idx[g] != start:
        raise ValueError("F-orbit does not close up")
    Pis = None
    if M.Pi is not None:
        f = g // 2
        Pis = []
        for j in range(g):
            col = [M.Pi[j][i][idx[j]] for i in range(M.rank)]
            nz = [i for i, t in enumerate(col) if not t.is_zero()]
            if nz != [idx[(j + f) % g]]:
                raise ValueError("orbit is not Pi-stable")
            Pis.append(((col[nz[0]],),))
        Pis = tuple(Pis)
    return _module(M.params, M.kind, 1, R, Fs, Pi=Pis, label=f"subblock({M.label})")


def two_slope_block(params: FieldParams, a: int, N: int | None = None) -> DieudonneModule:
    """The slope-a/2d rank-one piece inside the two-slope construction."""
    return monomial_subblock(build_two_slope_division(params, a, N), 0)


def double_construction(block: DieudonneModule) -> DieudonneModule:
    """H + H^t with the separable pairing (lambda_1, -lambda_1^t).

    Division kind: <,> pairs H^j with D^{j+f} by I and D^j with H^{j+f} by -I; the dual
    F and Pi are p A_j^{-t} and pi P_j^{-t} (placed in degree j+f).
    Matrix kind: symmetric pairing [[0, I], [I, 0]] and dual F = p A_i^{-t}.
    """
    nu = compute_slopes(block)
    if len(nu.entries) != 1:
        raise NotIsoclinic(f"block has slopes {nu}")
    R = block.ring
    p = R(block.params.p)
    g, n = block.g, block.rank
    I, Z = identity(R, n), zeros(R, n)
    mI = mscale(R(-1), I)
    dualF = [transpose(scaled_inverse(A, p)) for A in block.F]
    if block.kind is Kind.DIVISION:
        if block.Pi is None:
            raise ValueError("division-kind block needs Pi")
        f = g // 2
        F = [block_diag(R, block.F[j], dualF[(j + f) % g]) for j in range(g)]
        dualPi = [transpose(scaled_inverse(P, R.pi)) for P in block.Pi]
        Pis = tuple(block_diag(R, block.Pi[j], dualPi[(j + f) % g]) for j in range(g))
        G = tuple(_blocks(Z, I, mI, Z) for _ in range(g))
    else:
        F = [block_diag(R, block.F[j], dualF[j]) for j in range(g)]
        Pis = None
        G = tuple(_blocks(Z, I, I, Z) for _ in range(g))
    (beta, h), = nu.entries
    target = SlopeSeq.of((beta, h), (1 - beta, h))
    m = 1 if block.kind is Kind.MATRIX and n == 1 else max(1, n)
    return _module(
        block.params, block.kind, m, R, F, Pi=Pis, gram=G,
        label=f"double({block.label})", target=target,
    )


def _blocks(A: Matrix, B: Matrix, C: Matrix, D: Matrix) -> Matrix:
    return tuple(ra + rb for ra, rb in zip(A, B)) + tuple(rc + rd for rc, rd in zip(C, D))


# ---------------------------------------------------------------------------
# slopes


def frobenius_composite(M: DieudonneModule) -> Matrix:
    """Matrix of F^g on M^0: A_{g-1} sigma(A_{g-2}) ... sigma^{g-1}(A_0)."""
    out = M.F[M.g - 1]
    for k in range(1, M.g):
        out = matmul(out, mat_frob(M.F[M.g - 1 - k], k))
    return out


def compute_slopes(M: DieudonneModule) -> SlopeSeq:
    Phi = frobenius_composite(M)
    if not all(x.is_sigma_invariant() for row in Phi for x in row):
        raise NonInvariantEntries("F^g has entries outside the sigma-fixed subring")
    R = M.ring
    coeffs = charpoly(Phi, R.zero, R.one)
    scale = M.params.e * M.g
    return SlopeSeq(tuple((s / scale, k * scale) for s, k in newton_slopes(coeffs)))


# ---------------------------------------------------------------------------
# verification


def _all(pred: Any, g: int) -> tuple[bool, list[int]]:
    bad = [j for j in range(g) if not pred(j)]
    return (not bad), bad


def _ord_det(A: Matrix) -> int:
    d = det(A)
    if d.is_zero():
        raise PrecisionExhausted("determinant vanishes at working precision")
    return d.ord()


def verify(M: DieudonneModule) -> VerificationReport:
    R = M.ring
    g, r = M.g, M.rank
    e = M.params.e
    p = R(M.params.p)
    pI = mscale(p, identity(R, r))
    A, B = M.F, M.V
    checks: list[Check] = []

    def add(name: str, ok: bool, observed: Any, expected: Any) -> None:
        checks.append(Check(name, bool(ok), observed, expected))

    ok, bad = _all(lambda j: mat_equal(matmul(A[j], mat_frob(B[j])), pI), g)
    ok2, bad2 = _all(lambda j: mat_equal(matmul(B[j], mat_frob(A[j], -1)), pI), g)
    add("fv_equals_p", ok and ok2, {"FV_fail": bad, "VF_fail": bad2}, "FV = VF = p on every piece")

    c = [_ord_det(Bj) for Bj in B]
    lie = [elementary_divisors(Bj) for Bj in B]
    a: list[int] | None = None

    if M.kind is Kind.DIVISION and M.Pi is not None:
        P = M.Pi
        f = g // 2
        mpiI = mscale(-R.pi, identity(R, r))
        ok, bad = _all(lambda j: mat_equal(matmul(P[(j + f) % g], P[j]), mpiI), g)
        add("pi_square", ok, {"fail": bad}, "Pi_{j+f} Pi_j = -pi")
        ok, bad = _all(lambda j: mat_equal(matmul(P[(j + 1) % g], A[j]), matmul(A[(j + f) % g], mat_frob(P[j]))), g)
        add("pi_f_commute", ok, {"fail": bad}, "Pi_{j+1} F_j = F_{j+f} Pi_j")
        a = [_ord_det(P[(j - f) % g]) for j in range(g)]

    if M.gram is not None:
        G = M.gram
        if M.kind is Kind.DIVISION:
            f = g // 2
            ok, bad = _all(lambda j: mat_equal(G[(j + f) % g], mscale(R(-1), transpose(G[j]))), g)
            add("pairing_skew", ok, {"fail": bad}, "G_{j+f} = -G_j^t")
            ok, bad = _all(
                lambda j: mat_equal(
                    matmul_chain(transpose(A[j]), G[(j + 1) % g], A[(j + f) % g]), mscale(p, mat_frob(G[j]))
                ),
                g,
            )
            add("pairing_frobenius", ok, {"fail": bad}, "<Fx, Fy> = p <x, y>^sigma")
            if M.Pi is not None:
                P = M.Pi
                ok, bad = _all(
                    lambda j: mat_equal(
                        matmul_chain(transpose(P[j]), G[(j + f) % g], P[(j + f) % g]), mscale(R.pi, G[j])
                    ),
                    g,
                )
                add("pairing_pi", ok, {"fail": bad}, "<Pi x, Pi y> = pi <x, y>")
        else:
            ok, bad = _all(lambda j: mat_equal(G[j], transpose(G[j])), g)
            add("pairing_symmetric", ok, {"fail": bad}, "G_i = G_i^t")
            ok, bad = _all(
                lambda j: mat_equal(matmul_chain(transpose(A[j]), G[(j + 1) % g], A[j]), mscale(p, mat_frob(G[j]))), g
            )
            add("pairing_frobenius", ok, {"fail": bad}, "(Fx, Fy) = p (x, y)^sigma")
        ords = [det(Gj).ord() for Gj in G]
        add("unimodular", all(o == 0 for o in ords), ords, [0] * g)

    add("det_condition", all(cj == e * M.m for cj in c), c, [e * M.m] * g)
    add("c_cross_check", all(sum(l) == cj for l, cj in zip(lie, c)), [sum(l) for l in lie], c)

    if a is not None:
        f = g // 2
        ok56 = all(a[(j + 1) % g] == a[j] + c[(j + f) % g] - c[j] for j in range(g))
        add("chain_a_c", ok56, {"a": a, "c": c}, "a_{j+1} = a_j + c_{j+f} - c_j")
        ok57 = all(a[j] + a[(j + f) % g] == r for j in range(g))
        add("chain_a_sum", ok57, [a[j] + a[(j + f) % g] for j in range(f)], [r] * f)
        if M.gram is not None:
            ok510 = all(c[j] + c[(j + f) % g] == e * r for j in range(g))
            add("chain_c_sum", ok510, [c[j] + c[(j + f) % g] for j in range(f)], [e * r] * f)

    lie_obs = [list(l) for l in lie]
    if M.expected_lie is not None:
        exp = [sorted(t) for t in M.expected_lie]
        add("lie_type", lie_obs == exp, lie_obs, exp)

    if "superspecial" in M.claims:
        ok, bad = _all(lambda j: spans_equal(A[j], B[(j + 1) % g]), g)
        add("superspecial", ok, {"fail": bad}, "F M = V M")
    if "pi_kills_lie" in M.claims and M.Pi is not None:
        f = g // 2
        ok, bad = _all(lambda j: columns_in_span(B[(j + f) % g], M.Pi[j]), g)
        add("pi_kills_lie", ok, {"fail": bad}, "Pi (M/VM) = 0")

    nu: SlopeSeq | None = None
    try:
        nu = compute_slopes(M)
    except (NonInvariantEntries, PrecisionExhausted) as exc:
        add("slope_seq", False, f"error: {exc}", None if M.target is None else str(M.target))
    else:
        if M.target is not None:
            add("slope_seq", nu == M.target, str(nu), str(M.target))
        else:
            add("slope_seq", True, str(nu), None)
        if M.gram is not None and all(ch.passed for ch in checks if ch.name.startswith("pairing") or ch.name == "unimodular"):
            add("slopes_symmetric", is_symmetric(nu), str(nu), "symmetric")

    return VerificationReport(M.label, checks, c, a, lie_obs, nu)


CASES = ("superspecial-matrix", "superspecial-division", "two-slope", "lie-type", "example-13-5")
