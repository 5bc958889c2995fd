"""Dense matrix helpers over truncated local rings.

Matrices are tuples of row tuples.  Everything except the Smith-type reductions
is division free (Berkowitz), so it works over any commutative ring whose
elements support ``+``, ``-`` and ``*``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Sequence

from .errors import PrecisionExhausted
from .padic_core import Elem, EisensteinRing

Matrix = tuple[tuple[Any, ...], ...]


def mat(ring: EisensteinRing, rows: Sequence[Sequence[Any]]) -> Matrix:
    return tuple(tuple(ring(x) for x in row) for row in rows)


def identity(ring: EisensteinRing, n: int) -> Matrix:
    return tuple(tuple(ring.one if i == j else ring.zero for j in range(n)) for i in range(n))


def zeros(ring: EisensteinRing, n: int, m: int | None = None) -> Matrix:
    return tuple(tuple(ring.zero for _ in range(n if m is None else m)) for _ in range(n))


def diag(ring: EisensteinRing, entries: Sequence[Any]) -> Matrix:
    n = len(entries)
    return tuple(tuple(ring(entries[i]) if i == j else ring.zero for j in range(n)) for i in range(n))


def matmul(A: Matrix, B: Matrix) -> Matrix:
    cols = list(zip(*B))
    out = []
    for row in A:
        new_row = []
        for col in cols:
            acc = row[0] * col[0]
            for a, b in zip(row[1:], col[1:]):
                acc = acc + a * b
            new_row.append(acc)
        out.append(tuple(new_row))
    return tuple(out)


def matmul_chain(*mats: Matrix) -> Matrix:
    out = mats[0]
    for m in mats[1:]:
        out = matmul(out, m)
    return out


def matvec(A: Matrix, v: Sequence[Any]) -> tuple[Any, ...]:
    out = []
    for row in A:
        acc = row[0] * v[0]
        for a, b in zip(row[1:], v[1:]):
            acc = acc + a * b
        out.append(acc)
    return tuple(out)


def madd(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def msub(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mscale(c: Any, A: Matrix) -> Matrix:
    return tuple(tuple(c * a for a in row) for row in A)


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def mmap(fn: Callable[[Any], Any], A: Matrix) -> Matrix:
    return tuple(tuple(fn(a) for a in row) for row in A)


def mat_frob(A: Matrix, k: int = 1) -> Matrix:
    return mmap(lambda a: a.frobenius(k), A)


def is_zero_matrix(A: Matrix) -> bool:
    return all(a.is_zero() for row in A for a in row)


def mat_equal(A: Matrix, B: Matrix) -> bool:
    return is_zero_matrix(msub(A, B))


def min_ord(A: Matrix) -> int:
    return min(a.ord() for row in A for a in row)


def block_diag(ring: EisensteinRing, *blocks: Matrix) -> Matrix:
    n = sum(len(b) for b in blocks)
    rows = [[ring.zero] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                rows[off + i][off + j] = x
        off += len(b)
    return tuple(tuple(r) for r in rows)


# ---------------------------------------------------------------------------
# characteristic polynomial (Berkowitz), determinant, adjugate


def charpoly(A: Matrix, zero: Any, one: Any) -> list[Any]:
    """Coefficients c_0..c_n (low -> high) of det(t*I - A)."""
    n = len(A)
    if n == 0:
        return [one]
    vect = [one, -A[0][0]]  # high -> low
    for r in range(1, n):
        R = A[r][:r]
        C = [A[i][r] for i in range(r)]
        col = [one, -A[r][r]]
        v = C
        for _ in range(r):
            acc = zero
            for x, y in zip(R, v):
                acc = acc + x * y
            col.append(-acc)
            v = [sum((A[i][j] * v[j] for j in range(1, r)), A[i][0] * v[0]) for i in range(r)]
        new = []
        for i in range(r + 2):
            s = zero
            for j in range(min(i, r) + 1):
                s = s + col[i - j] * vect[j]
            new.append(s)
        vect = new
    return vect[::-1]


def det(A: Matrix, zero: Any = None, one: Any = None) -> Any:
    if zero is None:
        zero, one = A[0][0].ring.zero, A[0][0].ring.one
    c = charpoly(A, zero, one)
    return c[0] if len(A) % 2 == 0 else -c[0]


def adjugate(A: Matrix, zero: Any = None, one: Any = None) -> Matrix:
    """adj(A) = (-1)^{n+1} (A^{n-1} + c_{n-1} A^{n-2} + ... + c_1)."""
    if zero is None:
        zero, one = A[0][0].ring.zero, A[0][0].ring.one
    n = len(A)
    if n == 1:
        return ((one,),)
    c = charpoly(A, zero, one)
    ident = tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
    q = ident
    for k in range(n - 1, 0, -1):
        q = madd(matmul(q, A), mscale(c[k], ident))
    return q if (n + 1) % 2 == 0 else mscale(-one, q)


def inverse(A: Matrix) -> Matrix:
    """Exact inverse of a matrix invertible over the ring."""
    d = det(A)
    return mmap(lambda x: x / d, adjugate(A))


def scaled_inverse(A: Matrix, c: Elem) -> Matrix:
    """c * A^{-1}, requiring it to be integral."""
    d = det(A)
    return mmap(lambda x: (c * x) / d, adjugate(A))


# ---------------------------------------------------------------------------
# valuation-driven reductions


def elementary_divisors(A: Matrix) -> list[int]:
    """pi-adic valuations of the elementary divisors of a nonsingular square matrix."""
    rows = [list(r) for r in A]
    n = len(rows)
    out = []
    for s in range(n):
        best = None
        for i in range(s, n):
            for j in range(s, n):
                x = rows[i][j]
                if not x.is_zero():
                    o = x.ord()
                    if best is None or o < best[0]:
                        best = (o, i, j)
        if best is None:
            raise PrecisionExhausted("matrix is singular to working precision")
        o, i, j = best
        rows[s], rows[i] = rows[i], rows[s]
        for r in rows:
            r[s], r[j] = r[j], r[s]
        piv = rows[s][s]
        for i in range(s + 1, n):
            x = rows[i][s]
            if not x.is_zero():
                t = x / piv
                rows[i] = [a - t * b for a, b in zip(rows[i], rows[s])]
        out.append(o)
    return sorted(out)


def columns_in_span(A: Matrix, B: Matrix) -> bool:
    """True if every column of B lies in the column span of A (A nonsingular)."""
    d = det(A)
    if d.is_zero():
        raise PrecisionExhausted("spanning matrix is singular to working precision")
    k = d.ord()
    X = matmul(adjugate(A), B)
    return all(x.is_zero() or x.ord() >= k for row in X for x in row)


def spans_equal(A: Matrix, B: Matrix) -> bool:
    return columns_in_span(A, B) and columns_in_span(B, A)


# ---------------------------------------------------------------------------
# Newton polygons


def lower_hull(points: Sequence[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    pts = sorted(points)
    hull: list[tuple[int, Fraction]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point if it lies on or above the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_slopes(coeffs: Sequence[Elem]) -> list[tuple[Fraction, int]]:
    """Root valuations (with multiplicity) of a monic polynomial, low -> high coefficients.

    Coefficients that vanish at the working precision are treated as lying on or
    above the polygon; if their precision is too low to guarantee that, the
    computation is refused.
    """
    n = len(coeffs) - 1
    if coeffs[0].is_zero():
        raise PrecisionExhausted("constant term vanishes at working precision")
    known = [(k, Fraction(c.ord())) for k, c in enumerate(coeffs) if not c.is_zero()]
    hull = lower_hull(known)
    out: list[tuple[Fraction, int]] = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = (y1 - y2) / (x2 - x1)
        for k, c in enumerate(coeffs):
            if x1 < k < x2 and c.is_zero():
                bound = y1 - slope * (k - x1)
                if c.prec < bound:
                    raise PrecisionExhausted("Newton polygon not determined at working precision")
        if out and out[-1][0] == slope:
            out[-1] = (slope, out[-1][1] + x2 - x1)
        else:
            out.append((slope, x2 - x1))
    assert sum(m for _, m in out) == n
    return sorted(out)
