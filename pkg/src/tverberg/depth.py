"""Half-space depth over multisets, exactly, with witnesses.

The depth of q in A is the smallest number of A-instances (multiplicity
counted) in a closed half-space containing q.  The minimum is attained
by a half-space whose boundary passes through q, so everything reduces
to counting instances a with u.(a - q) >= 0 over nonzero directions u.

The count is minimised recursively.  Directions that are generic for
the difference vectors give the strict count alone; the interesting
candidates are normals vanishing on a spanning subset of differences,
and for those the instances on the boundary hyperplane form a strictly
lower-dimensional subproblem.  Concretely, with V the nonzero
difference vectors and l = dim span(V):

  l = 1: the minimum of the two one-sided counts;
  l >= 2: over each (l-1)-subset of V with a one-dimensional orthogonal
          complement +-u0 in span(V), the strict count of u0 plus the
          recursive minimum over {v : u0.v = 0}.

Working coordinates are the restriction to pivot columns of span(V), so
integer inputs stay integer all the way down.  A witness functional is
reassembled on the way up as N*u0 + u_inner with N large enough that
u0's strict signs dominate.

The centerpoint searches scan candidate points and reuse the recursion
with an abort threshold: a scan candidate is abandoned as soon as some
half-space already caps its depth below the best found.  The integer
scan is restricted to the box between the m-th smallest and m-th
largest instance value per coordinate, outside of which an axis
half-space alone refutes depth m.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .ambient import FiniteSet
from .errors import (
    AssertionFailed,
    CenterpointNotFound,
    DimensionMismatch,
    InputError,
    PreconditionViolated,
)
from .linprog import nullspace
from .points import HalfSpace, Point, PointMultiset, dot


def _dot_int(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def _reduce_int(vec: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for v in vec:
        g = gcd(g, abs(v))
    return tuple(v // g for v in vec)


def _int_pivot_columns(vecs: Sequence[Sequence[int]], dim: int) -> list[int]:
    """Pivot columns of the span of integer row vectors, fraction-free."""
    rows = [list(v) for v in vecs]
    pivots: list[int] = []
    r = 0
    for col in range(dim):
        sel = -1
        for i in range(r, len(rows)):
            if rows[i][col] != 0:
                sel = i
                break
        if sel < 0:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        head = rows[r][col]
        for i in range(r + 1, len(rows)):
            f = rows[i][col]
            if f != 0:
                rows[i] = [a * head - b * f for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return pivots


def _normal_direction(sub: list[tuple[int, ...]], dim: int) -> tuple[int, ...] | None:
    """A nonzero integer direction orthogonal to all of sub, unique up to
    sign when sub spans a hyperplane of the dim-space; None otherwise."""
    if dim == 1:
        return (1,) if not sub else None
    if dim == 2:
        (a, b) = sub[0]
        if a == 0 and b == 0:
            return None
        return (-b, a)
    if dim == 3:
        (a1, a2, a3), (b1, b2, b3) = sub[0], sub[1]
        c = (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
        if c == (0, 0, 0):
            return None
        return c
    rows = [[Fraction(v) for v in s] for s in sub]
    basis = nullspace(rows, dim)
    if len(basis) != 1:
        return None
    denom = 1
    for v in basis[0]:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    return tuple(int(v * denom) for v in basis[0])


def _canonical_sign(vec: tuple[int, ...]) -> tuple[int, ...]:
    for v in vec:
        if v != 0:
            return vec if v > 0 else tuple(-x for x in vec)
    return vec


def _min_halfspace_count(
    vecs: list[tuple[int, ...]],
    weights: list[int],
    abort_at: int | None,
    want_witness: bool,
) -> tuple[int, tuple[int, ...] | None]:
    """Minimum over nonzero u of the weighted count of v with u.v >= 0.

    Returns (count, functional); the functional is in the coordinates of
    the input vectors and attains the count, or None when not requested
    (or when vecs is empty).  With abort_at set, the search stops once
    the running minimum is <= abort_at; the returned count is then still
    an upper bound achieved by an actual direction.
    """
    if not vecs:
        return 0, None
    dim = len(vecs[0])
    pivots = _int_pivot_columns(vecs, dim)
    ell = len(pivots)
    coords = [tuple(v[p] for p in pivots) for v in vecs]

    best: int | None = None
    best_phi: tuple[int, ...] | None = None
    if ell == 1:
        pos = sum(w for c, w in zip(coords, weights) if c[0] > 0)
        neg = sum(w for c, w in zip(coords, weights) if c[0] < 0)
        if pos <= neg:
            best, best_phi = pos, (1,)
        else:
            best, best_phi = neg, (-1,)
    else:
        seen: set[tuple[int, ...]] = set()
        done = False
        for subset in itertools.combinations(range(len(coords)), ell - 1):
            u0 = _normal_direction([coords[i] for i in subset], ell)
            if u0 is None:
                continue
            u0 = _canonical_sign(_reduce_int(u0))
            if u0 in seen:
                continue
            seen.add(u0)
            for sgn in (1, -1):
                u = u0 if sgn == 1 else tuple(-x for x in u0)
                strict = 0
                inner_idx: list[int] = []
                for i, c in enumerate(coords):
                    s = _dot_int(u, c)
                    if s > 0:
                        strict += weights[i]
                    elif s == 0:
                        inner_idx.append(i)
                if best is not None and strict >= best:
                    continue
                inner_vecs = [coords[i] for i in inner_idx]
                inner_w = [weights[i] for i in inner_idx]
                # the inner threshold is residual: strict instances are
                # already committed, so only abort_at - strict remains
                inner_abort = None
                if abort_at is not None and not want_witness:
                    inner_abort = abort_at - strict
                inner_count, inner_phi = _min_halfspace_count(
                    inner_vecs, inner_w, inner_abort, want_witness
                )
                cand = strict + inner_count
                if best is None or cand < best:
                    best = cand
                    if want_witness:
                        if inner_phi is None:
                            best_phi = u
                        else:
                            bound = 1 + max(abs(_dot_int(inner_phi, c)) for c in coords)
                            best_phi = tuple(
                                bound * a + b for a, b in zip(u, inner_phi)
                            )
                    if abort_at is not None and best <= abort_at:
                        done = True
                        break
            if done:
                break
        if best is None:
            # Vectors span ell >= 2 but every subset was degenerate; cannot
            # happen, since some ell-1 of them are linearly independent.
            raise AssertionFailed("no admissible direction found")

    if best_phi is not None:
        lifted = [0] * dim
        for t, p in enumerate(pivots):
            lifted[p] = best_phi[t]
        best_phi = tuple(lifted)
    return best, best_phi


def _scaled_instances(points: Iterable[Point], dim: int) -> tuple[list[tuple[tuple[int, ...], int]], int]:
    """Integer-scaled entry coordinates with multiplicities, and the scale."""
    entries = list(points)
    scale = 1
    for p, _ in entries:
        for c in p:
            scale = scale * c.denominator // gcd(scale, c.denominator)
    scaled = [(tuple(int(c * scale) for c in p), mult) for p, mult in entries]
    return scaled, scale


def _difference_profile(
    scaled: list[tuple[tuple[int, ...], int]], origin: tuple[int, ...]
) -> tuple[dict[tuple[int, ...], int], int]:
    """Primitive difference directions with merged weights, plus the
    multiplicity sitting exactly at the origin."""
    at_origin = 0
    profile: dict[tuple[int, ...], int] = {}
    for p, mult in scaled:
        v = tuple(a - b for a, b in zip(p, origin))
        if all(x == 0 for x in v):
            at_origin += mult
            continue
        key = _reduce_int(v)
        profile[key] = profile.get(key, 0) + mult
    return profile, at_origin


@dataclass(frozen=True)
class DepthWitness:
    """A depth value together with a half-space attaining it.

    The half-space boundary passes through the queried point and the
    closed side contains exactly ``depth`` instances of the multiset.
    """

    point: Point
    depth: int
    halfspace: HalfSpace


def depth_value(q: Point, points: PointMultiset) -> int:
    """Exact half-space depth of q in the multiset, without a witness."""
    if len(q) != points.dim:
        raise DimensionMismatch("query dimension differs from multiset dimension")
    scaled, scale = _scaled_instances(points.entries, points.dim)
    denom = 1
    for c in q:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    if scale % denom != 0:
        scaled = [(tuple(v * denom for v in p), m) for p, m in scaled]
        scale *= denom
    origin = tuple(int(c * scale) for c in q)
    profile, at_origin = _difference_profile(scaled, origin)
    vecs = list(profile.keys())
    ws = [profile[v] for v in vecs]
    count, _ = _min_halfspace_count(vecs, ws, None, False)
    return at_origin + count


def halfspace_depth(q: Point, points: PointMultiset) -> DepthWitness:
    """Exact depth of q with a minimising closed half-space through q.

    The witness is recounted against the raw multiset before returning.
    """
    if len(q) != points.dim:
        raise DimensionMismatch("query dimension differs from multiset dimension")
    if not points.entries:
        normal = tuple(Fraction(1) if i == 0 else Fraction(0) for i in range(points.dim))
        return DepthWitness(q, 0, HalfSpace(normal, dot(normal, q)))
    scaled, scale = _scaled_instances(points.entries, points.dim)
    denom = 1
    for c in q:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    if scale % denom != 0:
        scaled = [(tuple(v * denom for v in p), m) for p, m in scaled]
        scale *= denom
    origin = tuple(int(c * scale) for c in q)
    profile, at_origin = _difference_profile(scaled, origin)
    vecs = list(profile.keys())
    ws = [profile[v] for v in vecs]
    count, phi = _min_halfspace_count(vecs, ws, None, True)
    depth = at_origin + count
    if phi is None:
        phi = tuple(1 if i == 0 else 0 for i in range(points.dim))
    normal = tuple(Fraction(v) for v in phi)
    witness = HalfSpace(normal, dot(normal, q))
    check = sum(m for p, m in points.entries if witness.contains(p))
    if check != depth:
        raise AssertionFailed(
            f"witness half-space counts {check} instances, claimed depth {depth}"
        )
    return DepthWitness(q, depth, witness)


def _coordinate_order_statistics(points: PointMultiset, m: int) -> list[tuple[int, int]] | None:
    """Per-coordinate integer range [ceil(m-th smallest), floor(m-th largest)].

    Any point of depth >= m must land in this box: the axis half-space
    beyond the m-th order statistic contains fewer than m instances.
    """
    n = points.size
    if m > n:
        return None
    box: list[tuple[int, int]] = []
    for c in range(points.dim):
        vals: list[Fraction] = []
        for p, mult in points.entries:
            vals.extend([p[c]] * mult)
        vals.sort()
        lo, hi = vals[m - 1], vals[n - m]
        lo_i = -((-lo.numerator) // lo.denominator)
        hi_i = hi.numerator // hi.denominator
        if lo_i > hi_i:
            return None
        box.append((lo_i, hi_i))
    return box


def _best_candidate(
    points: PointMultiset,
    candidates: Iterable[Point],
    m: int,
) -> tuple[Point | None, int]:
    """Deepest candidate of depth >= m, earliest on ties, with its depth."""
    scaled, scale = _scaled_instances(points.entries, points.dim)
    mult_at: dict[Point, int] = {p: mult for p, mult in points.entries}
    best_depth = m - 1
    best_point: Point | None = None
    for cand in candidates:
        denom = 1
        for c in cand:
            denom = denom * c.denominator // gcd(denom, c.denominator)
        if scale % denom == 0:
            local, local_scale = scaled, scale
        else:
            f = denom // gcd(scale, denom)
            local = [(tuple(v * f for v in p), mult) for p, mult in scaled]
            local_scale = scale * f
        origin = tuple(int(c * local_scale) for c in cand)
        profile, at_origin = _difference_profile(local, origin)
        base = mult_at.get(cand, 0)
        if base != at_origin:
            raise AssertionFailed("multiplicity bookkeeping out of step")
        vecs = list(profile.keys())
        ws = [profile[v] for v in vecs]
        count, _ = _min_halfspace_count(vecs, ws, best_depth - at_origin, False)
        depth = at_origin + count
        if depth > best_depth:
            best_depth = depth
            best_point = cand
    return best_point, best_depth


def integer_centerpoint(points: PointMultiset, m: int) -> Point:
    """Lexicographically first deepest integer point of depth >= m.

    Scans the integer box between the m-th order statistics of each
    coordinate; raises CenterpointNotFound when no integer point reaches
    depth m.  All instances must themselves be integral.
    """
    if m < 1:
        raise PreconditionViolated("depth target must be at least 1")
    if not points.entries:
        raise InputError("cannot scan an empty multiset")
    for p, _ in points.entries:
        for c in p:
            if c.denominator != 1:
                raise PreconditionViolated("integer centerpoint scan over non-integral instances")
    box = _coordinate_order_statistics(points, m)
    if box is None:
        raise CenterpointNotFound(f"no integer point of depth {m}: order-statistic box is empty")
    ranges = [range(lo, hi + 1) for lo, hi in box]
    candidates = (
        tuple(Fraction(v) for v in tup) for tup in itertools.product(*ranges)
    )
    best_point, _ = _best_candidate(points, candidates, m)
    if best_point is None:
        raise CenterpointNotFound(f"no integer point of depth {m} in the scan box")
    return best_point


def finite_set_centerpoint(points: PointMultiset, ambient: FiniteSet, m: int) -> Point:
    """Lexicographically first deepest ambient-set point of depth >= m."""
    if m < 1:
        raise PreconditionViolated("depth target must be at least 1")
    if ambient.dim != points.dim:
        raise DimensionMismatch("ambient dimension differs from multiset dimension")
    best_point, _ = _best_candidate(points, ambient.points, m)
    if best_point is None:
        raise CenterpointNotFound(f"no ambient point of depth {m}")
    return best_point
