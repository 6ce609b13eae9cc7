"""Partitions in Z^3 by peeling and bipartition.

The driver rests on three facts.  A multiset of 24m-31 integer points
has an integer point p of depth 3m-3 (the d = 3 centerpoint bound with
target 3m-3).  Around such a point one can repeatedly split off a
minimal subset whose hull holds p; minimality forces the subset to have
at most 4 points, at most 3 of which lie in any closed half-space whose
boundary passes through p, so each peel lowers the depth of p by at
most 3.  After m - mu - 2 peels (mu copies of p go out as singletons) the
remainder keeps at least 17 instances and depth at least 3, which is
enough for a final two-part split around p.

Minimal subsets are found by direct predicates in increasing size:
p itself, then segments, then triangles, each by exact arithmetic; only
when all of those fail does a general membership certificate get
reduced, which then necessarily lands on an affinely independent
4-point support.

The final bipartition has no one-line construction.  Seeds with a
guaranteed or likely complement (a segment through p leaves complement
depth >= 1; a minimal subset usually does too) are tried first, then a
first-improvement local search over single-instance moves scored by the
exact infeasibility gaps of the two membership systems, then, for small
remainders, full enumeration.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .ambient import Lattice
from .certificates import (
    RawWeights,
    TverbergCertificate,
    assemble_certificate,
    peel_by_multiplicity,
    singleton_part,
    weights_of,
)
from .depth import depth_value, integer_centerpoint
from .errors import (
    AssertionFailed,
    DimensionMismatch,
    ExtractionFailed,
    PreconditionViolated,
    SearchExhausted,
)
from .geometry import caratheodory_reduce, hull_membership, membership_gap
from .linprog import solve_linear
from .points import Point, PointMultiset, is_integral, sub


@dataclass(frozen=True)
class PeelRecord:
    """Minimal subsets peeled around a point, plus what is left over."""

    center: Point
    subsets: tuple[PointMultiset, ...]
    remainder: PointMultiset


def _cross3(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    """p on the closed segment ab, exactly."""
    u = sub(p, a)
    v = sub(b, a)
    if _cross3(u, v) != (0, 0, 0):
        return False
    num = sum(x * y for x, y in zip(u, v))
    den = sum(y * y for y in v)
    if den == 0:
        return all(x == 0 for x in u)
    return 0 <= num <= den


def _in_triangle(p: Point, a: Point, b: Point, c: Point) -> bool:
    """p in the closed triangle abc, abc affinely independent."""
    u = sub(b, a)
    v = sub(c, a)
    if _cross3(u, v) == (0, 0, 0):
        return False
    w = sub(p, a)
    rows = [[u[i], v[i]] for i in range(3)]
    sol = solve_linear([[Fraction(x) for x in r] for r in rows], [Fraction(x) for x in w])
    if sol is None:
        return False
    s, t = sol
    return s >= 0 and t >= 0 and s + t <= 1


def _minimal_subset(points: PointMultiset, p: Point) -> PointMultiset:
    """First minimal subset (canonical order) whose hull holds p."""
    support = points.support()
    if p in points:
        return singleton_part(p)
    for i, j in itertools.combinations(range(len(support)), 2):
        if _on_segment(p, support[i], support[j]):
            return PointMultiset.from_points([support[i], support[j]], dim=3)
    for i, j, k in itertools.combinations(range(len(support)), 3):
        if _in_triangle(p, support[i], support[j], support[k]):
            return PointMultiset.from_points(
                [support[i], support[j], support[k]], dim=3
            )
    coeffs = hull_membership(p, points)
    if coeffs is None:
        raise ExtractionFailed("the point left the hull during peeling")
    reduced = caratheodory_reduce(p, points, coeffs)
    chosen = [points.entries[i][0] for i, _ in reduced.weights]
    if len(chosen) != 4:
        raise AssertionFailed(
            "with no minimal segment or triangle the reduced support must have 4 points"
        )
    return PointMultiset.from_points(chosen, dim=3)


def peel_caratheodory_sets(
    points: PointMultiset, p: Point, count: int
) -> PeelRecord:
    """Peel ``count`` minimal subsets around p, each hull holding p.

    Requires depth(p) >= 3*count + 3, which keeps p inside the hull of
    every intermediate remainder: a peel removes at most 4 points, at
    most 3 of them from any closed half-space anchored at p.
    """
    if points.dim != 3:
        raise DimensionMismatch("peeling is the d = 3 routine")
    if count < 0:
        raise PreconditionViolated("cannot peel a negative number of subsets")
    if depth_value(p, points) < 3 * count + 3:
        raise PreconditionViolated(
            f"peeling {count} subsets needs depth at least {3 * count + 3}"
        )
    current = points
    subsets: list[PointMultiset] = []
    for _ in range(count):
        x = _minimal_subset(current, p)
        for q, mult in x.entries:
            current = current.remove(q, mult)
        subsets.append(x)
    return PeelRecord(p, tuple(subsets), current)


def _split_by_entries(
    points: PointMultiset, first: PointMultiset
) -> PointMultiset:
    rest = points
    for q, mult in first.entries:
        rest = rest.remove(q, mult)
    return rest


def bipartition_search(
    points: PointMultiset,
    p: Point,
    seed: int = 0,
    max_evals: int = 4000,
) -> tuple[PointMultiset, PointMultiset]:
    """Two nonempty parts of the multiset, both hulls holding p.

    Deterministic seeds first: a copy of p splits off alone; a segment
    through p leaves a complement of depth >= 1 by counting; a minimal
    subset usually does as well.  Failing those, local search over
    single moves scored by exact infeasibility gaps, and below 23
    instances full enumeration as a last resort.
    """
    if points.dim != 3:
        raise DimensionMismatch("bipartition is the d = 3 routine")
    if points.size < 17:
        raise PreconditionViolated(f"need at least 17 instances, got {points.size}")
    if depth_value(p, points) < 3:
        raise PreconditionViolated("bipartition needs a point of depth at least 3")

    def settled(a: PointMultiset, b: PointMultiset) -> bool:
        return (
            a.size > 0
            and b.size > 0
            and hull_membership(p, a) is not None
            and hull_membership(p, b) is not None
        )

    if p in points:
        first = singleton_part(p)
        rest = points.remove(p)
        if hull_membership(p, rest) is None:
            raise AssertionFailed("depth 3 leaves the complement of one copy nonempty in every half-space")
        return first, rest

    support = points.support()
    for i, j in itertools.combinations(range(len(support)), 2):
        if _on_segment(p, support[i], support[j]):
            first = PointMultiset.from_points([support[i], support[j]], dim=3)
            rest = _split_by_entries(points, first)
            if hull_membership(p, rest) is None:
                raise AssertionFailed("segment through p must leave depth >= 1 behind")
            return first, rest

    x = _minimal_subset(points, p)
    rest = _split_by_entries(points, x)
    if rest.size and hull_membership(p, rest) is not None:
        return x, rest

    instances = points.instances()
    n = len(instances)
    rng = random.Random(seed)

    def gap_of(side: list[int], flag: bool) -> Fraction:
        chosen = [instances[i] for i in range(n) if side[i] == flag]
        if not chosen:
            return Fraction(10 ** 9)
        return membership_gap(p, PointMultiset.from_points(chosen, dim=3))

    def score(side: list[int]) -> Fraction:
        return gap_of(side, False) + gap_of(side, True)

    start = [False] * n
    marked = dict(x.entries)
    left = dict(marked)
    for i, q in enumerate(instances):
        if left.get(q, 0) > 0:
            start[i] = True
            left[q] -= 1

    evals = 0
    best_score = None
    side = start
    current = score(side)
    evals += 2
    while evals < max_evals:
        if current == 0:
            a = PointMultiset.from_points(
                [instances[i] for i in range(n) if side[i]], dim=3
            )
            b = PointMultiset.from_points(
                [instances[i] for i in range(n) if not side[i]], dim=3
            )
            if settled(a, b):
                return a, b
            raise AssertionFailed("zero gap must mean both memberships hold")
        improved = False
        order = list(range(n))
        rng.shuffle(order)
        for i in order:
            side[i] = not side[i]
            trial = score(side)
            evals += 2
            if trial < current:
                current = trial
                improved = True
                break
            side[i] = not side[i]
            if evals >= max_evals:
                break
        if not improved:
            if best_score is None or current < best_score:
                best_score = current
            side = [rng.random() < 0.5 for _ in range(n)]
            if not any(side):
                side[0] = True
            if all(side):
                side[0] = False
            current = score(side)
            evals += 2

    if best_score is None or current < best_score:
        best_score = current

    if n <= 22:
        for mask in range(1, 1 << (n - 1)):
            chosen = [bool(mask >> i & 1) for i in range(n - 1)] + [False]
            a = PointMultiset.from_points(
                [instances[i] for i in range(n) if chosen[i]], dim=3
            )
            if hull_membership(p, a) is None:
                continue
            b = PointMultiset.from_points(
                [instances[i] for i in range(n) if not chosen[i]], dim=3
            )
            if hull_membership(p, b) is not None:
                return a, b
    raise SearchExhausted(
        "no bipartition found",
        diagnostics={"instances": n, "evaluations": evals, "best_gap": str(best_score)},
    )


def z3_tverberg(
    points: PointMultiset, m: int, seed: int = 0
) -> TverbergCertificate:
    """A verified m-part partition of at least 24m-31 points of Z^3."""
    if m < 2:
        raise PreconditionViolated("partitions need m >= 2")
    if points.dim != 3:
        raise DimensionMismatch("this driver works in Z^3")
    for q, _ in points.entries:
        if not is_integral(q):
            raise PreconditionViolated(f"instance {q} is not an integer point")
    n = points.size
    needed = 24 * m - 31
    if n < needed:
        raise PreconditionViolated(f"need at least {needed} instances for m={m}, got {n}")
    center = integer_centerpoint(points, 3 * m - 3)
    direct = peel_by_multiplicity(points, center, m)
    if direct is not None:
        parts, proofs = direct
        return assemble_certificate(m, center, parts, proofs, Lattice(3), points)
    mu = points.multiplicity(center)
    body = points.remove(center, mu) if mu else points
    target = m - mu
    record = peel_caratheodory_sets(body, center, target - 2)
    remainder = record.remainder
    if remainder.size < 17:
        raise AssertionFailed("size bookkeeping guarantees at least 17 remaining")
    if depth_value(center, remainder) < 3:
        raise AssertionFailed("peeling cannot push the center below depth 3")
    b1, b2 = bipartition_search(remainder, center, seed=seed)
    parts = [singleton_part(center) for _ in range(mu)]
    parts.extend(record.subsets)
    parts.extend([b1, b2])
    proofs: list[RawWeights] = [((0, Fraction(1)),) for _ in range(mu)]
    for part in list(record.subsets) + [b1, b2]:
        coeffs = hull_membership(center, part)
        if coeffs is None:
            raise AssertionFailed("constructed part lost the center")
        proofs.append(weights_of(coeffs))
    return assemble_certificate(m, center, parts, proofs, Lattice(3), points)
