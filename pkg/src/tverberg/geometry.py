"""Exact convex-hull primitives.

Four operations carry the whole geometric load of the library:

* ``hull_membership``: is q a convex combination of a multiset's points?
  Decided as an exact feasibility system (weights >= 0, summing to 1,
  combining to q) by the phase-1 simplex; returns the weights or None.

* ``caratheodory_reduce``: shrink membership weights to an affinely
  independent support of at most d+1 points with strictly positive
  weights, by repeatedly cancelling exact affine dependences.  Such a
  support is minimal: no proper subset's hull contains the point.

* ``polytope_intersection_point``: one exact common point of several
  hulls, as the joint convex-combination system.

* ``lattice_points_in_intersection``: all points of a discrete ambient
  set inside an intersection of hulls (bounding-box scan for Z^d, filter
  for finite sets, integer-prefix enumeration plus real fiber
  feasibility for Z^j x R^k).

Degenerate hulls (segments, repeated points, lower-dimensional inputs)
need no special casing anywhere: the feasibility formulation covers them
uniformly.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, Sequence

from .ambient import AmbientSet, FiniteSet, Lattice, MixedLattice, RealSpace
from .errors import (
    DimensionMismatch,
    InputError,
    PreconditionViolated,
    UnsupportedAmbient,
)
from .linprog import nullspace, solve_phase1
from .points import ConvexCoefficients, Point, PointMultiset, add, scale


def hull_membership(q: Point, hull: PointMultiset) -> ConvexCoefficients | None:
    """Exact convex weights expressing q over hull's entries, or None.

    Identical inputs give identical outputs: the multiset is canonically
    ordered and the simplex pivots by Bland's rule.
    """
    if len(q) != hull.dim:
        raise DimensionMismatch(f"point of dimension {len(q)} against hull of dimension {hull.dim}")
    support = hull.support()
    if not support:
        return None
    d = hull.dim
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for c in range(d):
        rows.append([p[c] for p in support])
        rhs.append(q[c])
    rows.append([Fraction(1)] * len(support))
    rhs.append(Fraction(1))
    gap, x = solve_phase1(rows, rhs)
    if gap != 0:
        return None
    return ConvexCoefficients((i, w) for i, w in enumerate(x) if w != 0)


def membership_gap(q: Point, hull: PointMultiset) -> Fraction:
    """Exact phase-1 infeasibility mass of the membership system.

    Zero iff q is in the hull; used as a rational score by searches.
    """
    if len(q) != hull.dim:
        raise DimensionMismatch("dimension mismatch in membership gap")
    support = hull.support()
    if not support:
        return Fraction(1)
    d = hull.dim
    rows = [[p[c] for p in support] for c in range(d)]
    rows.append([Fraction(1)] * len(support))
    rhs = [q[c] for c in range(d)] + [Fraction(1)]
    gap, _ = solve_phase1(rows, rhs)
    return gap


def caratheodory_reduce(
    q: Point, hull: PointMultiset, coeffs: ConvexCoefficients
) -> ConvexCoefficients:
    """Reduce membership weights to a minimal affinely independent support.

    The result has at most dim+1 strictly positive weights; because the
    support is affinely independent and all weights positive, no proper
    subset of it contains q in its hull.
    """
    if coeffs.combination(hull) != q:
        raise InputError("coefficients do not combine to the claimed point")
    d = hull.dim
    active: list[tuple[int, Fraction]] = list(coeffs.weights)
    while True:
        points = [hull.entries[i][0] for i, _ in active]
        s = len(points)
        if s <= 1:
            break
        # Affine dependence: mu with sum(mu)=0 and sum(mu_i x_i)=0.
        rows = [[p[c] for p in points] for c in range(d)]
        rows.append([Fraction(1)] * s)
        deps = nullspace(rows, s)
        if not deps:
            break  # affinely independent
        mu = deps[0]
        if all(v <= 0 for v in mu):
            mu = [-v for v in mu]
        t: Fraction | None = None
        pivot = -1
        for i in range(s):
            if mu[i] > 0:
                ratio = active[i][1] / mu[i]
                if t is None or ratio < t:
                    t = ratio
                    pivot = i
        new_active = []
        for i in range(s):
            w = active[i][1] - t * mu[i]
            if w < 0:
                raise ArithmeticError("negative weight during Caratheodory reduction")
            if w > 0 and i != pivot:
                new_active.append((active[i][0], w))
        active = new_active
    result = ConvexCoefficients(active)
    if len(result.weights) > d + 1:
        raise ArithmeticError("Caratheodory reduction exceeded dim+1 support")
    if result.combination(hull) != q:
        raise ArithmeticError("Caratheodory reduction broke the combination")
    return result


def polytope_intersection_point(
    hulls: Sequence[PointMultiset],
) -> tuple[Point, tuple[ConvexCoefficients, ...]] | None:
    """One exact point common to all hulls, with per-hull weights, or None.

    Solves the joint system: per-hull convex weights, all combining to
    the same point.  The returned point is the canonical basic solution
    of the feasibility system (Bland pivoting), so it is deterministic.
    """
    if not hulls:
        raise InputError("need at least one hull")
    d = hulls[0].dim
    for h in hulls:
        if h.dim != d:
            raise DimensionMismatch("hulls of mixed dimension")
        if not h.entries:
            return None
    supports = [h.support() for h in hulls]
    offsets = [0]
    for sup in supports:
        offsets.append(offsets[-1] + len(sup))
    nvars = offsets[-1]
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for idx in range(len(hulls)):
        row = [Fraction(0)] * nvars
        for j in range(len(supports[idx])):
            row[offsets[idx] + j] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1))
    for idx in range(1, len(hulls)):
        for c in range(d):
            row = [Fraction(0)] * nvars
            for j, p in enumerate(supports[0]):
                row[offsets[0] + j] = p[c]
            for j, p in enumerate(supports[idx]):
                row[offsets[idx] + j] = -p[c]
            rows.append(row)
            rhs.append(Fraction(0))
    gap, x = solve_phase1(rows, rhs)
    if gap != 0:
        return None
    coeffs = []
    for idx in range(len(hulls)):
        coeffs.append(
            ConvexCoefficients(
                (j, x[offsets[idx] + j])
                for j in range(len(supports[idx]))
                if x[offsets[idx] + j] != 0
            )
        )
    pt = tuple(Fraction(0) for _ in range(d))
    for j, p in enumerate(supports[0]):
        if x[j] != 0:
            pt = add(pt, scale(x[j], p))
    return pt, tuple(coeffs)


def _integer_box(hulls: Sequence[PointMultiset], coords: range) -> list[range] | None:
    """Integer ranges of the intersection of the hulls' bounding boxes."""
    ranges: list[range] = []
    for c in coords:
        lo: Fraction | None = None
        hi: Fraction | None = None
        for h in hulls:
            vals = [p[c] for p in h.support()]
            hmin, hmax = min(vals), max(vals)
            lo = hmin if lo is None or hmin > lo else lo
            hi = hmax if hi is None or hmax < hi else hi
        lo_i = -((-lo.numerator) // lo.denominator)  # ceil
        hi_i = hi.numerator // hi.denominator  # floor
        if lo_i > hi_i:
            return None
        ranges.append(range(lo_i, hi_i + 1))
    return ranges


def _mixed_fiber_point(
    hulls: Sequence[PointMultiset], prefix: tuple[int, ...], j: int
) -> Point | None:
    """A common point of the hulls whose first j coordinates equal prefix."""
    d = hulls[0].dim
    supports = [h.support() for h in hulls]
    offsets = [0]
    for sup in supports:
        offsets.append(offsets[-1] + len(sup))
    nvars = offsets[-1]
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for idx in range(len(hulls)):
        row = [Fraction(0)] * nvars
        for jj in range(len(supports[idx])):
            row[offsets[idx] + jj] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1))
    for idx in range(1, len(hulls)):
        for c in range(d):
            row = [Fraction(0)] * nvars
            for jj, p in enumerate(supports[0]):
                row[jj] = p[c]
            for jj, p in enumerate(supports[idx]):
                row[offsets[idx] + jj] = -p[c]
            rows.append(row)
            rhs.append(Fraction(0))
    for c in range(j):
        row = [Fraction(0)] * nvars
        for jj, p in enumerate(supports[0]):
            row[jj] = p[c]
        rows.append(row)
        rhs.append(Fraction(prefix[c]))
    gap, x = solve_phase1(rows, rhs)
    if gap != 0:
        return None
    pt = tuple(Fraction(0) for _ in range(d))
    for jj, p in enumerate(supports[0]):
        if x[jj] != 0:
            pt = add(pt, scale(x[jj], p))
    return pt


def iter_common_ambient_points(
    hulls: Sequence[PointMultiset], ambient: AmbientSet
) -> Iterator[Point]:
    """Lazily yield ambient-set points lying in every hull, in canonical order."""
    if not hulls:
        raise InputError("need at least one hull")
    d = hulls[0].dim
    if ambient.dim != d:
        raise DimensionMismatch("ambient dimension differs from hull dimension")
    for h in hulls:
        if not h.entries:
            return
    if isinstance(ambient, FiniteSet):
        for s in ambient.points:
            if all(hull_membership(s, h) is not None for h in hulls):
                yield s
        return
    if isinstance(ambient, Lattice):
        box = _integer_box(hulls, range(d))
        if box is None:
            return
        for tup in itertools.product(*box):
            p = tuple(Fraction(v) for v in tup)
            if all(hull_membership(p, h) is not None for h in hulls):
                yield p
        return
    if isinstance(ambient, MixedLattice):
        box = _integer_box(hulls, range(ambient.j))
        if box is None:
            return
        for prefix in itertools.product(*box):
            pt = _mixed_fiber_point(hulls, prefix, ambient.j)
            if pt is not None:
                yield pt
        return
    if isinstance(ambient, RealSpace):
        raise UnsupportedAmbient("R^d has no lattice to enumerate; use polytope_intersection_point")
    raise UnsupportedAmbient(f"unsupported ambient descriptor {ambient!r}")


def lattice_points_in_intersection(
    hulls: Sequence[PointMultiset], ambient: AmbientSet
) -> list[Point]:
    """All ambient-set points inside every hull, in canonical order.

    For Z^j x R^k there are one or infinitely many ambient points over
    each feasible integer prefix; one exact representative per feasible
    prefix is returned.
    """
    return list(iter_common_ambient_points(hulls, ambient))
