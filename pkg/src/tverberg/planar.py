"""Planar discrete partitions around a deep point.

The Z^2 driver finds an integer point p of half-space depth >= m, peels
off copies of p sitting in the multiset, and labels the remaining
instances in radial order around p so that every label class captures p
in its hull.  Two labelings cover all remaining cases:

* ``tverberg_labeling`` (m >= 3): with n = qm + r, 0 <= r < q, and
  e = ceil(r/q), instances in clockwise order receive blocks 1..m
  separated by filler gaps 1..g (g <= e).  When p is deep (depth >=
  m + e) any placement of the r fillers works and the gaps are packed
  greedily from the front.  Otherwise p is shallow: a minimising open
  half-plane misses the long closed arc x_1..x_l (l >= 2m) and the
  labeling starts inside that arc with the shifted prefix r+1..m, 1..r,
  then continues 1..m cyclically.

* ``radon_labeling`` (m = 2): alternation for even n; for odd n either
  the doubled start 1,1,2,1,2,... (depth >= 3) or the arc-anchored
  2,1,1,2,1,2,... (depth exactly 2).

Finite ambient sets go through the Helly number of the set: He <= 3
reduces to a real partition whose intersection polygon has its
lexicographically least vertex inside the set, and He >= 4 admits a
set-valued centerpoint deep enough for the radial machinery above.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ambient import AmbientSet, FiniteSet, Lattice
from .certificates import (
    RawWeights,
    TverbergCertificate,
    assemble_certificate,
    peel_by_multiplicity,
    singleton_part,
    weights_of,
)
from .depth import (
    DepthWitness,
    finite_set_centerpoint,
    halfspace_depth,
    integer_centerpoint,
)
from .errors import (
    AssertionFailed,
    DimensionMismatch,
    InputError,
    PreconditionViolated,
    UnsupportedAmbient,
)
from .geometry import hull_membership
from .points import Point, PointMultiset, is_integral, primitive, sub


def _cross(u: Sequence, v: Sequence):
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class RadialOrder:
    """Instances of a planar multiset in clockwise order around a center.

    The sweep starts at the lexicographically least primitive direction
    present; instances on a common ray are ordered by distance.  ``rays``
    groups sequence positions sharing a direction, in sweep order, and
    ``directions`` holds the primitive direction of each position.
    """

    center: Point
    sequence: tuple[Point, ...]
    directions: tuple[tuple[int, int], ...]
    rays: tuple[tuple[int, ...], ...]


def _clockwise_key(start: tuple[int, int]):
    """Sort key factory: clockwise sweep position from the start direction."""

    def bucket(direction: tuple[int, int]) -> int:
        c = _cross(start, direction)
        if c == 0:
            s = start[0] * direction[0] + start[1] * direction[1]
            return 0 if s > 0 else 2
        return 1 if c < 0 else 3

    def compare(a, b) -> int:
        # a, b: (direction, dist2, point)
        ba, bb = bucket(a[0]), bucket(b[0])
        if ba != bb:
            return -1 if ba < bb else 1
        if a[0] != b[0]:
            c = _cross(a[0], b[0])
            if c != 0:
                return -1 if c < 0 else 1
        if a[1] != b[1]:
            return -1 if a[1] < b[1] else 1
        return 0

    return functools.cmp_to_key(compare)


def _instance_data(points: PointMultiset, center: Point):
    data = []
    for p in points.instances():
        v = sub(p, center)
        if all(x == 0 for x in v):
            raise PreconditionViolated("radial order needs the center outside the multiset")
        d = primitive(v)
        dist2 = v[0] * v[0] + v[1] * v[1]
        data.append((d, dist2, p))
    return data


def radial_order(points: PointMultiset, center: Point) -> RadialOrder:
    """Clockwise radial order of all instances around the center."""
    if points.dim != 2:
        raise DimensionMismatch("radial order is a planar notion")
    if len(center) != 2:
        raise DimensionMismatch("center must be planar")
    if points.size == 0:
        raise InputError("cannot order an empty multiset")
    data = _instance_data(points, center)
    start = min(d for d, _, _ in data)
    data.sort(key=_clockwise_key(start))
    sequence = tuple(p for _, _, p in data)
    directions = tuple(d for d, _, _ in data)
    rays: list[tuple[int, ...]] = []
    i = 0
    while i < len(data):
        j = i
        while j < len(data) and directions[j] == directions[i]:
            j += 1
        rays.append(tuple(range(i, j)))
        i = j
    return RadialOrder(center, sequence, directions, tuple(rays))


@dataclass(frozen=True)
class LabelingState:
    """Bookkeeping of the circular labeling: n = quot*m + rem, the gap
    ceiling e = ceil(rem/quot), the realized final gap length, and which
    branch ran."""

    quot: int
    rem: int
    e: int
    tail: int
    shallow: bool


def _arc_positions(order: RadialOrder, witness: DepthWitness) -> tuple[list[int], int]:
    """Sequence positions re-swept clockwise from the witness boundary.

    The boundary of the witness half-plane passes through the center;
    sweeping clockwise from the entry ray w0 = (n_y, -n_x) lists the
    closed complement arc first.  Returns the permutation of sequence
    positions and the arc length l.
    """
    n_vec = witness.halfspace.normal
    w0 = (int(n_vec[1]), int(-n_vec[0]))
    enriched = []
    for i in range(len(order.sequence)):
        v = sub(order.sequence[i], order.center)
        enriched.append((order.directions[i], v[0] * v[0] + v[1] * v[1], i))
    enriched.sort(key=_clockwise_key(w0))
    perm = [i for _, _, i in enriched]
    arc_len = 0
    c = witness.halfspace.offset
    for i in perm:
        val = n_vec[0] * order.sequence[i][0] + n_vec[1] * order.sequence[i][1]
        if val <= c:
            arc_len += 1
    # The closed complement side occupies exactly the first arc_len slots.
    for k, i in enumerate(perm):
        val = n_vec[0] * order.sequence[i][0] + n_vec[1] * order.sequence[i][1]
        if (val <= c) != (k < arc_len):
            raise AssertionFailed("arc extraction out of order")
    return perm, arc_len


def _coverage_proofs(
    order: RadialOrder, labels: Sequence[int], m: int
) -> tuple[list[PointMultiset], list[RawWeights]]:
    classes: list[PointMultiset] = []
    proofs: list[RawWeights] = []
    for label in range(1, m + 1):
        members = [order.sequence[i] for i in range(len(labels)) if labels[i] == label]
        if not members:
            raise PreconditionViolated(f"label {label} received no instances")
        part = PointMultiset.from_points(members, dim=2)
        coeffs = hull_membership(order.center, part)
        if coeffs is None:
            raise PreconditionViolated(
                f"label class {label} does not capture the center in its hull"
            )
        classes.append(part)
        proofs.append(weights_of(coeffs))
    return classes, proofs


def tverberg_labeling(
    order: RadialOrder, m: int, witness: DepthWitness
) -> tuple[tuple[int, ...], LabelingState]:
    """Labels 1..m for the ordered instances so every class hull holds the center."""
    labels, state, _, _ = _tverberg_labeling_full(order, m, witness)
    return labels, state


def _tverberg_labeling_full(order: RadialOrder, m: int, witness: DepthWitness):
    n = len(order.sequence)
    if m < 3:
        raise PreconditionViolated("circular labeling needs m >= 3")
    if n < 4 * m - 3:
        raise PreconditionViolated(f"need at least {4 * m - 3} instances, got {n}")
    if witness.point != order.center:
        raise PreconditionViolated("witness must be anchored at the ordering center")
    if witness.depth < m:
        raise PreconditionViolated(f"center depth {witness.depth} below target {m}")
    quot, rem = divmod(n, m)
    e = 0 if rem == 0 else -(-rem // quot)
    if quot < 3:
        raise AssertionFailed("n >= 4m-3 forces at least three full blocks")
    if e > -(-(m - 1) // 3):
        raise AssertionFailed("gap ceiling exceeded ceil((m-1)/3)")
    labels = [0] * n
    if witness.depth >= m + e:
        # Deep: blocks 1..m with greedily front-packed gaps, any placement works.
        gaps = []
        left = rem
        for _ in range(quot):
            g = min(e, left)
            gaps.append(g)
            left -= g
        tail = 0
        for g in gaps:
            if g:
                tail = g
        pos = 0
        for g in gaps:
            for lab in range(1, m + 1):
                labels[pos] = lab
                pos += 1
            for lab in range(1, g + 1):
                labels[pos] = lab
                pos += 1
        if pos != n:
            raise AssertionFailed("labeling did not exhaust the sequence")
        state = LabelingState(quot, rem, e, tail, shallow=False)
    else:
        if rem == 0:
            raise AssertionFailed("zero remainder makes every deep threshold m")
        perm, arc_len = _arc_positions(order, witness)
        if arc_len < 2 * m:
            raise AssertionFailed(
                f"shallow arc has {arc_len} instances, expected at least {2 * m}"
            )
        for k, i in enumerate(perm):
            pos = k + 1
            if pos <= m - rem:
                labels[i] = rem + pos
            elif pos <= m:
                labels[i] = pos - (m - rem)
            else:
                labels[i] = (pos - m - 1) % m + 1
        state = LabelingState(quot, rem, e, rem, shallow=True)
    classes, proofs = _coverage_proofs(order, labels, m)
    return tuple(labels), state, classes, proofs


def radon_labeling(
    order: RadialOrder, witness: DepthWitness
) -> tuple[int, ...]:
    """Two labels for the ordered instances so both class hulls hold the center."""
    labels, _, _ = _radon_labeling_full(order, witness)
    return labels


def _radon_labeling_full(order: RadialOrder, witness: DepthWitness):
    n = len(order.sequence)
    if n < 6:
        raise PreconditionViolated(f"two-part labeling needs at least 6 instances, got {n}")
    if witness.point != order.center:
        raise PreconditionViolated("witness must be anchored at the ordering center")
    if witness.depth < 2:
        raise PreconditionViolated(f"center depth {witness.depth} below 2")
    labels = [0] * n
    if n % 2 == 0:
        for i in range(n):
            labels[i] = 1 if i % 2 == 0 else 2
    elif witness.depth >= 3:
        labels[0] = 1
        labels[1] = 1
        for i in range(2, n):
            labels[i] = 2 if i % 2 == 0 else 1
    else:
        perm, arc_len = _arc_positions(order, witness)
        if arc_len < n - 2:
            raise AssertionFailed(
                "depth-2 witness must leave at most 2 instances strictly outside"
            )
        head = (2, 1, 1, 2)
        for k, i in enumerate(perm):
            pos = k + 1
            if pos <= 4:
                labels[i] = head[pos - 1]
            else:
                labels[i] = 1 if pos % 2 == 1 else 2
    classes, proofs = _coverage_proofs(order, labels, 2)
    return tuple(labels), classes, proofs


def _labeled_parts(
    points: PointMultiset, p: Point, m: int
) -> tuple[list[PointMultiset], list[RawWeights]]:
    """Peel the p-copies, label the remainder radially, return all parts."""
    direct = peel_by_multiplicity(points, p, m)
    if direct is not None:
        return direct
    mu = points.multiplicity(p)
    rest = points.remove(p, mu) if mu else points
    target = m - mu
    order = radial_order(rest, p)
    witness = halfspace_depth(p, rest)
    if target == 2:
        _, classes, proofs = _radon_labeling_full(order, witness)
    else:
        _, _, classes, proofs = _tverberg_labeling_full(order, target, witness)
    parts = [singleton_part(p) for _ in range(mu)] + classes
    all_proofs: list[RawWeights] = [((0, Fraction(1)),) for _ in range(mu)] + proofs
    return parts, all_proofs


def plane_tverberg(
    points: PointMultiset, m: int, ambient: AmbientSet
) -> TverbergCertificate:
    """A verified m-part partition of a planar discrete multiset.

    Over Z^2 the size gates are 6 (m = 2) and 4m-3 (m >= 3).  Over a
    finite ambient set the gate is He(m-1)+1, one more for m = 2 when
    He >= 4, and Helly numbers up to 3 take the intersection-vertex
    route instead of the radial one.
    """
    if m < 2:
        raise PreconditionViolated("partitions need m >= 2")
    if points.dim != 2:
        raise DimensionMismatch("planar driver requires dimension 2")
    n = points.size
    if isinstance(ambient, Lattice):
        if ambient.d != 2:
            raise DimensionMismatch("planar driver requires Z^2")
        for p, _ in points.entries:
            if not is_integral(p):
                raise PreconditionViolated(f"instance {p} is not an integer point")
        needed = 6 if m == 2 else 4 * m - 3
        if n < needed:
            raise PreconditionViolated(f"need at least {needed} instances for m={m}, got {n}")
        center = integer_centerpoint(points, m)
        parts, proofs = _labeled_parts(points, center, m)
        return assemble_certificate(m, center, parts, proofs, ambient, points)
    if isinstance(ambient, FiniteSet):
        if ambient.dim != 2:
            raise DimensionMismatch("planar driver requires a planar ambient set")
        for p, _ in points.entries:
            if not ambient.contains(p):
                raise PreconditionViolated(f"instance {p} lies outside the ambient set")
        he = helly_number(ambient)
        if he.number <= 3:
            return helly3_tverberg(points, m, ambient)
        needed = he.number * (m - 1) + 1 + (1 if m == 2 else 0)
        if n < needed:
            raise PreconditionViolated(f"need at least {needed} instances for m={m}, got {n}")
        center = finite_set_centerpoint(points, ambient, m)
        parts, proofs = _labeled_parts(points, center, m)
        return assemble_certificate(m, center, parts, proofs, ambient, points)
    raise UnsupportedAmbient(f"planar driver does not handle {ambient.describe()}")


@dataclass(frozen=True)
class HellyWitness:
    """The Helly number of a finite set with a maximum witness subset.

    The witness is in convex position and its hull meets the set in the
    witness alone; no larger subset has both properties.
    """

    number: int
    points: tuple[Point, ...]


def _qualifies(subset: tuple[Point, ...], ambient: FiniteSet) -> bool:
    ms = PointMultiset.from_points(subset, dim=ambient.dim)
    for p in subset:
        rest = ms.remove(p)
        if rest.size and hull_membership(p, rest) is not None:
            return False
    for s in ambient.points:
        if s in ms:
            continue
        if hull_membership(s, ms) is not None:
            return False
    return True


@functools.lru_cache(maxsize=256)
def helly_number(ambient: FiniteSet) -> HellyWitness:
    """Largest hull-independent subset of a finite set, by level search.

    Hull-independence is hereditary, so each level only extends
    qualifying sets of the previous one; the search stops at the first
    empty level.
    """
    pts = ambient.points
    if not pts:
        raise InputError("the empty set has no Helly number")
    level: list[tuple[int, ...]] = [(i,) for i in range(len(pts))]
    best = level[0]
    while True:
        nxt: list[tuple[int, ...]] = []
        for idx in level:
            for j in range(idx[-1] + 1, len(pts)):
                cand = idx + (j,)
                if _qualifies(tuple(pts[i] for i in cand), ambient):
                    nxt.append(cand)
        if not nxt:
            break
        level = nxt
        best = level[0]
    return HellyWitness(len(best), tuple(pts[i] for i in best))


def _convex_hull_ccw(pts: Sequence[Point]) -> list[Point]:
    """Counterclockwise hull vertices of distinct planar points."""
    unique = sorted(set(pts))
    if len(unique) <= 2:
        return unique
    lower: list[Point] = []
    for p in unique:
        while len(lower) >= 2 and _cross(sub(lower[-1], lower[-2]), sub(p, lower[-2])) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(unique):
        while len(upper) >= 2 and _cross(sub(upper[-1], upper[-2]), sub(p, upper[-2])) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _hull_edges(pts: Sequence[Point]) -> list[tuple[Point, Point]]:
    hull = _convex_hull_ccw(pts)
    if len(hull) < 2:
        return []
    if len(hull) == 2:
        return [(hull[0], hull[1])]
    return [(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))]


def _line_intersection(a: Point, b: Point, c: Point, d: Point) -> Point | None:
    r = sub(b, a)
    s = sub(d, c)
    denom = _cross(r, s)
    if denom == 0:
        return None
    t = _cross(sub(c, a), s) / denom
    return (a[0] + t * r[0], a[1] + t * r[1])


def helly3_tverberg(
    points: PointMultiset, m: int, ambient: FiniteSet
) -> TverbergCertificate:
    """Partition over a finite planar set of Helly number at most 3.

    A real partition always exists at the He(m-1)+1 gate; the
    lexicographically least vertex of the intersection of the part hulls
    is then a point of the ambient set and certifies the partition.
    """
    if m < 2:
        raise PreconditionViolated("partitions need m >= 2")
    if points.dim != 2 or ambient.dim != 2:
        raise DimensionMismatch("this route is planar")
    for p, _ in points.entries:
        if not ambient.contains(p):
            raise PreconditionViolated(f"instance {p} lies outside the ambient set")
    he = helly_number(ambient)
    if he.number > 3:
        raise PreconditionViolated(f"ambient set has Helly number {he.number} > 3")
    n = points.size
    needed = he.number * (m - 1) + 1
    if n < needed:
        raise PreconditionViolated(f"need at least {needed} instances for m={m}, got {n}")

    if he.number == 1:
        q = ambient.points[0]
        parts, proofs = peel_by_multiplicity(points, q, m)
        return assemble_certificate(m, q, parts, proofs, ambient, points)

    if he.number == 2:
        inst = sorted(points.instances())
        q = inst[m - 1]
        parts = []
        for i in range(m - 1):
            parts.append(PointMultiset.from_points([inst[i], inst[n - 1 - i]], dim=2))
        parts.append(PointMultiset.from_points(inst[m - 1 : n - m + 1], dim=2))
        proofs = []
        for part in parts:
            coeffs = hull_membership(q, part)
            if coeffs is None:
                raise AssertionFailed("median point escaped a nested pair")
            proofs.append(weights_of(coeffs))
        return assemble_certificate(m, q, parts, proofs, ambient, points)

    from .product import real_tverberg_bruteforce

    real_cert = real_tverberg_bruteforce(points, m)
    part_supports = [part.support() for part in real_cert.parts]
    candidates: set[Point] = set(points.support())
    edge_lists = [_hull_edges(sup) for sup in part_supports]
    for i, j in itertools.combinations(range(m), 2):
        for a, b in edge_lists[i]:
            for c, d in edge_lists[j]:
                x = _line_intersection(a, b, c, d)
                if x is not None:
                    candidates.add(x)
    feasible: list[tuple[Point, tuple]] = []
    for cand in sorted(candidates):
        coeff_list = []
        for part in real_cert.parts:
            cc = hull_membership(cand, part)
            if cc is None:
                break
            coeff_list.append(cc)
        else:
            feasible.append((cand, tuple(coeff_list)))
            break  # sorted scan: the first feasible candidate is the lex-min vertex
    if not feasible:
        raise AssertionFailed("real partition produced an empty intersection")
    q, coeffs = feasible[0]
    if not ambient.contains(q):
        raise AssertionFailed(
            "least intersection vertex escaped an ambient set of Helly number <= 3"
        )
    proofs = [weights_of(c) for c in coeffs]
    return assemble_certificate(m, q, list(real_cert.parts), proofs, ambient, points)
