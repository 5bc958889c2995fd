"""Slope sequences of (quasi-polarized) p-divisible O_B-modules."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Iterator

from .errors import InadmissibleSequence, UnsupportedRank
from .padic_core import FieldParams
from .quaternion import Kind, QuaternionAlgebra, as_kind, twist_invariant

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SlopeSeq:
    """Sorted (slope, multiplicity) pairs with distinct slopes."""

    entries: tuple[tuple[Fraction, int], ...]

    def __post_init__(self) -> None:
        merged: dict[Fraction, int] = {}
        for s, m in self.entries:
            s = Fraction(s)
            if not 0 <= s <= 1:
                raise ValueError(f"slope {s} outside [0, 1]")
            if m <= 0:
                raise ValueError("multiplicities must be positive")
            merged[s] = merged.get(s, 0) + int(m)
        object.__setattr__(self, "entries", tuple(sorted(merged.items())))

    @classmethod
    def of(cls, *pairs: tuple[Any, int]) -> "SlopeSeq":
        return cls(tuple((Fraction(s), m) for s, m in pairs))

    @classmethod
    def parse(cls, text: str) -> "SlopeSeq":
        """Parse "1/6:6,5/6:6" (or with '^' in place of ':')."""
        pairs = []
        for chunk in text.replace("^", ":").split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            s, _, m = chunk.partition(":")
            pairs.append((Fraction(s.strip()), int(m) if m else 1))
        if not pairs:
            raise ValueError("empty slope sequence")
        return cls(tuple(pairs))

    @property
    def height(self) -> int:
        return sum(m for _, m in self.entries)

    def mult(self, slope: Any) -> int:
        slope = Fraction(slope)
        return next((m for s, m in self.entries if s == slope), 0)

    def slopes(self) -> list[Fraction]:
        return [s for s, _ in self.entries]

    def __str__(self) -> str:
        return ",".join(f"{s}^{m}" for s, m in self.entries)

    def to_json(self) -> list[list[Any]]:
        return [[str(s), m] for s, m in self.entries]


@dataclass(frozen=True)
class AdmissibleSpec:
    params: FieldParams
    kind: Kind
    m: int = 1
    polarized: bool = True
    determinant_condition: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", as_kind(self.kind))
        if self.m < 1:
            raise ValueError("m must be >= 1")

    @property
    def height(self) -> int:
        return 4 * self.params.d * self.m


def is_symmetric(nu: SlopeSeq) -> bool:
    return all(nu.mult(1 - s) == m for s, m in nu.entries)


def isoclinic_admissible(beta: Any, h: int, params: FieldParams, kind: Kind | str) -> bool:
    """Whether an isoclinic O_B-module of height h and slope beta exists."""
    beta = Fraction(beta)
    d = params.d
    if h <= 0 or h % (2 * d) or not 0 <= beta <= 1:
        return False
    hp = h // (2 * d)
    if as_kind(kind) is Kind.MATRIX:
        return (beta * d * hp).denominator == 1
    a = beta * h
    return a.denominator == 1 and (a.numerator - hp) % 2 == 0


def _block_slopes(part: int, d: int, kind: Kind) -> list[Fraction]:
    if kind is Kind.MATRIX:
        return [Fraction(a, d * part) for a in range(d * part + 1)]
    return [Fraction(a, 2 * d * part) for a in range(2 * d * part + 1) if (a - part) % 2 == 0]


def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


@lru_cache(maxsize=None)
def _all_sequences(d: int, kind: Kind, hp: int) -> tuple[SlopeSeq, ...]:
    """Every slope sequence of height 2d*hp assembled from admissible isoclinic blocks."""
    seen: set[SlopeSeq] = set()

    def extend(parts: tuple[int, ...], idx: int, lo: int, acc: list[tuple[Fraction, int]]) -> None:
        if idx == len(parts):
            seen.add(SlopeSeq(tuple(acc)))
            return
        part = parts[idx]
        choices = _block_slopes(part, d, kind)
        # equal consecutive parts take non-decreasing slope indices (multiset choice)
        start = lo if idx > 0 and parts[idx - 1] == part else 0
        for i in range(start, len(choices)):
            acc.append((choices[i], 2 * d * part))
            extend(parts, idx + 1, i, acc)
            acc.pop()

    for parts in _partitions(hp):
        extend(parts, 0, 0, [])
    return tuple(sorted(seen, key=lambda s: s.entries))


def _determinant_filter(nu: SlopeSeq, spec: AdmissibleSpec) -> bool:
    if spec.kind is Kind.MATRIX:
        return True
    p = spec.params
    d = p.d
    if nu.entries == ((HALF, 4 * d),):
        return True
    if len(nu.entries) != 2:
        return False
    (s, m), _ = nu.entries
    a = s * 2 * d
    if a.denominator != 1 or m != 2 * d:
        return False
    a_int = a.numerator
    return a_int % 2 == 1 and 2 * (p.e // 2) * p.f <= a_int < d


def enumerate_slopeseqs(spec: AdmissibleSpec) -> list[SlopeSeq]:
    if spec.determinant_condition and spec.m > 1:
        raise UnsupportedRank("the determinant-condition constraint is only known for m = 1")
    seqs: Iterable[SlopeSeq] = _all_sequences(spec.params.d, spec.kind, 2 * spec.m)
    if spec.polarized:
        seqs = [nu for nu in seqs if is_symmetric(nu)]
    if spec.determinant_condition:
        seqs = [nu for nu in seqs if _determinant_filter(nu, spec)]
    return sorted(seqs, key=lambda s: s.entries)


def split_supersingular(nu: SlopeSeq) -> tuple[SlopeSeq | None, int]:
    """(non-supersingular part, multiplicity of slope 1/2)."""
    rest = tuple((s, m) for s, m in nu.entries if s != HALF)
    return (SlopeSeq(rest) if rest else None), nu.mult(HALF)


def count_isogeny_classes(spec: AdmissibleSpec, nu: SlopeSeq) -> int:
    """Number of isogeny classes of quasi-polarized modules with slope sequence nu."""
    base = AdmissibleSpec(spec.params, spec.kind, spec.m, polarized=True)
    if nu.height != base.height or not is_symmetric(nu) or nu not in set(_all_sequences(spec.params.d, spec.kind, 2 * spec.m)):
        raise InadmissibleSequence(f"{nu} is not an admissible symmetric sequence of height {base.height}")
    _, half = split_supersingular(nu)
    m_s = half // (4 * spec.params.d)
    if m_s == 0:
        return 1
    B2 = twist_invariant(QuaternionAlgebra(spec.params, spec.kind))
    if B2.kind is Kind.MATRIX:
        return 7 if m_s == 1 else 8
    return 3 if m_s == 1 else 4
