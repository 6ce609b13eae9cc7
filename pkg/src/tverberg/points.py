"""Exact rational points, multisets of points, and half-spaces.

Conventions used throughout the library:

* A point is a plain tuple of ``fractions.Fraction``.  Tuples compare
  lexicographically, hash, and unpack for free, which is exactly what the
  canonical orderings here need.  ``point()`` builds one from ints,
  rational strings, or Fractions.

* A ``PointMultiset`` stores entries ``(point, multiplicity)`` sorted
  lexicographically with equal points merged.  Two multisets built from
  the same instances in any order are therefore identical objects values,
  and every algorithm that iterates a multiset is deterministic.

* A ``HalfSpace`` is the closed set ``{x : normal . x >= offset}``.  The
  representation is normalized by a positive rational scaling so that the
  normal and offset are coprime integers; the sign is semantic (flipping
  it would denote the other side) and is never touched.

All arithmetic is exact; nothing in this module (or anywhere else in the
decision paths of the library) uses floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatch, InputError

Point = tuple[Fraction, ...]

Rationalish = int | str | Fraction


def rational(value: Rationalish) -> Fraction:
    """Parse a rational from an int, a Fraction, or a string 'a' / 'a/b'."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational string: {value!r}") from exc
    raise InputError(f"cannot interpret {value!r} as a rational")


def format_rational(value: Fraction) -> str:
    """Lowest-terms string form, 'a' or 'a/b' with b > 0."""
    return str(value)


def point(*coords: Rationalish) -> Point:
    """Build a point from rational-like coordinates."""
    return tuple(rational(c) for c in coords)


def point_from(coords: Sequence[Rationalish]) -> Point:
    return tuple(rational(c) for c in coords)


def add(p: Point, q: Point) -> Point:
    return tuple(a + b for a, b in zip(p, q, strict=True))


def sub(p: Point, q: Point) -> Point:
    return tuple(a - b for a, b in zip(p, q, strict=True))


def scale(t: Fraction | int, p: Point) -> Point:
    return tuple(t * a for a in p)


def dot(p: Sequence[Fraction], q: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(p, q, strict=True)), Fraction(0))


def is_integral(p: Point) -> bool:
    return all(c.denominator == 1 for c in p)


def primitive(vector: Sequence[Fraction | int]) -> tuple[int, ...]:
    """Scale a nonzero rational vector by a positive rational into a
    coprime integer vector.  Direction and sense are preserved."""
    fracs = [Fraction(v) for v in vector]
    if all(f == 0 for f in fracs):
        raise ValueError("zero vector has no primitive form")
    denom_lcm = 1
    for f in fracs:
        denom_lcm = denom_lcm * f.denominator // gcd(denom_lcm, f.denominator)
    ints = [int(f * denom_lcm) for f in fracs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    return tuple(v // g for v in ints)


class PointMultiset:
    """A finite multiset of points of one dimension, canonically ordered.

    ``entries`` is a tuple of (point, multiplicity) pairs sorted
    lexicographically by point with multiplicities >= 1; ``size`` counts
    instances, ``support_size`` counts distinct points.
    """

    __slots__ = ("entries", "dim")

    def __init__(self, entries: Iterable[tuple[Point, int]], dim: int | None = None):
        merged: dict[Point, int] = {}
        for p, mult in entries:
            if mult < 0:
                raise InputError("negative multiplicity")
            if mult == 0:
                continue
            if dim is None:
                dim = len(p)
            elif len(p) != dim:
                raise DimensionMismatch(
                    f"point of dimension {len(p)} in multiset of dimension {dim}"
                )
            merged[p] = merged.get(p, 0) + mult
        if dim is None:
            raise InputError("dimension required for an empty multiset")
        object.__setattr__(self, "entries", tuple(sorted(merged.items())))
        object.__setattr__(self, "dim", dim)

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("PointMultiset is immutable")

    @classmethod
    def from_points(cls, points: Iterable[Point], dim: int | None = None) -> "PointMultiset":
        return cls(((p, 1) for p in points), dim=dim)

    @property
    def size(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def support_size(self) -> int:
        return len(self.entries)

    def support(self) -> tuple[Point, ...]:
        return tuple(p for p, _ in self.entries)

    def instances(self) -> list[Point]:
        """Instance list in canonical order (entry order, copies adjacent)."""
        out: list[Point] = []
        for p, m in self.entries:
            out.extend([p] * m)
        return out

    def multiplicity(self, p: Point) -> int:
        for q, m in self.entries:
            if q == p:
                return m
            if q > p:
                return 0
        return 0

    def __contains__(self, p: Point) -> bool:
        return self.multiplicity(p) > 0

    def add(self, p: Point, count: int = 1) -> "PointMultiset":
        return PointMultiset(self.entries + ((p, count),), dim=self.dim)

    def remove(self, p: Point, count: int = 1) -> "PointMultiset":
        m = self.multiplicity(p)
        if m < count:
            raise InputError(f"cannot remove {count} copies of {p}; only {m} present")
        entries = [(q, mm) for q, mm in self.entries if q != p]
        if m > count:
            entries.append((p, m - count))
        return PointMultiset(entries, dim=self.dim)

    def union(self, other: "PointMultiset") -> "PointMultiset":
        if other.dim != self.dim:
            raise DimensionMismatch("union of multisets of different dimension")
        return PointMultiset(self.entries + other.entries, dim=self.dim)

    def bounding_box(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """Per-coordinate (min, max); error on an empty multiset."""
        if not self.entries:
            raise InputError("bounding box of an empty multiset")
        los = list(self.entries[0][0])
        his = list(self.entries[0][0])
        for p, _ in self.entries[1:]:
            for i, c in enumerate(p):
                if c < los[i]:
                    los[i] = c
                if c > his[i]:
                    his[i] = c
        return tuple(zip(los, his))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PointMultiset)
            and self.dim == other.dim
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.entries))

    def __iter__(self) -> Iterator[tuple[Point, int]]:
        return iter(self.entries)

    def __repr__(self) -> str:
        inner = ", ".join(
            f"{tuple(str(c) for c in p)}x{m}" if m > 1 else f"{tuple(str(c) for c in p)}"
            for p, m in self.entries
        )
        return f"PointMultiset[{inner}]"


class HalfSpace:
    """Closed half-space {x : normal . x >= offset} with coprime integer data."""

    __slots__ = ("normal", "offset")

    def __init__(self, normal: Sequence[Fraction | int], offset: Fraction | int):
        fracs = [Fraction(v) for v in normal]
        off = Fraction(offset)
        if all(f == 0 for f in fracs):
            raise InputError("half-space normal must be nonzero")
        denom_lcm = 1
        for f in list(fracs) + [off]:
            denom_lcm = denom_lcm * f.denominator // gcd(denom_lcm, f.denominator)
        ints = [int(f * denom_lcm) for f in fracs]
        oi = int(off * denom_lcm)
        g = abs(oi)
        for v in ints:
            g = gcd(g, abs(v))
        object.__setattr__(self, "normal", tuple(v // g for v in ints))
        object.__setattr__(self, "offset", oi // g)

    def __setattr__(self, name, value):
        raise AttributeError("HalfSpace is immutable")

    @property
    def dim(self) -> int:
        return len(self.normal)

    def contains(self, p: Point) -> bool:
        return dot(self.normal, p) >= self.offset

    def boundary_contains(self, p: Point) -> bool:
        return dot(self.normal, p) == self.offset

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HalfSpace)
            and self.normal == other.normal
            and self.offset == other.offset
        )

    def __hash__(self) -> int:
        return hash((self.normal, self.offset))

    def __repr__(self) -> str:
        return f"HalfSpace({self.normal}.x >= {self.offset})"


class ConvexCoefficients:
    """Exact convex-combination weights over the entries of a multiset.

    ``weights`` maps entry index -> Fraction weight; weights are >= 0 and
    sum to exactly 1.  Entry indices refer to the canonically sorted
    entries of the multiset the coefficients were computed against.
    """

    __slots__ = ("weights",)

    def __init__(self, weights: Iterable[tuple[int, Fraction]]):
        cleaned = tuple(
            (int(i), Fraction(w)) for i, w in sorted(weights) if Fraction(w) != 0
        )
        for i, w in cleaned:
            if i < 0:
                raise InputError("negative entry index in coefficients")
            if w < 0:
                raise InputError("negative convex coefficient")
        if sum((w for _, w in cleaned), Fraction(0)) != 1:
            raise InputError("convex coefficients must sum to exactly 1")
        object.__setattr__(self, "weights", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("ConvexCoefficients is immutable")

    def combination(self, multiset: PointMultiset) -> Point:
        """Evaluate the combination against a multiset's entries."""
        total = tuple(Fraction(0) for _ in range(multiset.dim))
        for i, w in self.weights:
            if i >= len(multiset.entries):
                raise InputError(f"coefficient entry index {i} out of range")
            total = add(total, scale(w, multiset.entries[i][0]))
        return total

    def __eq__(self, other) -> bool:
        return isinstance(other, ConvexCoefficients) and self.weights == other.weights

    def __hash__(self) -> int:
        return hash(self.weights)

    def __repr__(self) -> str:
        return "ConvexCoefficients(%s)" % ", ".join(f"{i}:{w}" for i, w in self.weights)
