from __future__ import annotations

import random
from fractions import Fraction

import pytest

from tverberg.ambient import FiniteSet, Lattice, MixedLattice
from tverberg.errors import UnsupportedAmbient
from tverberg.geometry import (
    caratheodory_reduce,
    hull_membership,
    iter_common_ambient_points,
    lattice_points_in_intersection,
    membership_gap,
    polytope_intersection_point,
)
from tverberg.points import PointMultiset, point

from conftest import random_lattice_multiset


def test_hull_membership_triangle():
    tri = PointMultiset.from_points([point(0, 0), point(4, 0), point(0, 4)])
    inside = hull_membership(point(1, 1), tri)
    assert inside is not None
    assert inside.combination(tri) == point(1, 1)
    assert hull_membership(point(3, 3), tri) is None
    on_edge = hull_membership(point(2, 2), tri)
    assert on_edge is not None


def test_hull_membership_single_point_and_segment():
    single = PointMultiset.from_points([point(5, -1)])
    assert hull_membership(point(5, -1), single) is not None
    assert hull_membership(point(5, 0), single) is None
    seg = PointMultiset.from_points([point(0, 0), point(6, 3)])
    mid = hull_membership(point(2, 1), seg)
    assert mid is not None and mid.combination(seg) == point(2, 1)
    assert hull_membership(point(2, 2), seg) is None


def test_membership_gap_signs():
    tri = PointMultiset.from_points([point(0, 0), point(4, 0), point(0, 4)])
    assert membership_gap(point(1, 1), tri) == 0
    assert membership_gap(point(9, 9), tri) > 0


def test_caratheodory_reduce_support_bound(rng):
    for _ in range(120):
        d = rng.choice([2, 3])
        n = rng.randint(d + 2, 9)
        hull = random_lattice_multiset(rng, n, d, 5)
        # aim at a convex combination so membership is guaranteed
        weights = [rng.randint(0, 3) for _ in range(hull.size)]
        if sum(weights) == 0:
            weights[0] = 1
        total = sum(weights)
        inst = hull.instances()
        q = tuple(
            sum(Fraction(w) * p[c] for w, p in zip(weights, inst)) / total
            for c in range(d)
        )
        coeffs = hull_membership(q, hull)
        assert coeffs is not None
        small = caratheodory_reduce(q, hull, coeffs)
        assert len(small.weights) <= d + 1
        assert small.combination(hull) == q


def test_polytope_intersection_point_segments():
    a = PointMultiset.from_points([point(0, 0), point(2, 2)])
    b = PointMultiset.from_points([point(0, 2), point(2, 0)])
    found = polytope_intersection_point((a, b))
    assert found is not None
    pt, proofs = found
    assert pt == point(1, 1)
    assert proofs[0].combination(a) == pt and proofs[1].combination(b) == pt
    c = PointMultiset.from_points([point(5, 5), point(6, 6)])
    assert polytope_intersection_point((a, c)) is None


def test_lattice_points_in_intersection_box():
    sq = PointMultiset.from_points(
        [point(0, 0), point(3, 0), point(0, 3), point(3, 3)]
    )
    tri = PointMultiset.from_points([point(1, 1), point(7, 1), point(1, 7)])
    pts = lattice_points_in_intersection((sq, tri), Lattice(2))
    assert point(1, 1) in pts and point(2, 1) in pts
    assert all(0 <= p[0] <= 3 and 0 <= p[1] <= 3 for p in pts)
    assert sorted(pts) == pts  # deterministic scan order
    expected = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)]
    assert [(int(p[0]), int(p[1])) for p in pts] == expected


def test_iter_common_points_finite_ambient():
    amb = FiniteSet((point(0, 0), point(1, 1), point(9, 9)), 2)
    a = PointMultiset.from_points([point(0, 0), point(2, 2)])
    b = PointMultiset.from_points([point(1, 0), point(1, 3)])
    got = list(iter_common_ambient_points((a, b), amb))
    assert got == [point(1, 1)]


def test_iter_common_points_mixed_fibers():
    # two triangles in Z x R overlapping over integer first coordinates 1..2
    a = PointMultiset.from_points(
        [point(0, 0), point(3, 0), point(1, 4)]
    )
    b = PointMultiset.from_points(
        [point(0, 1), point(3, 1), point(2, -3)]
    )
    amb = MixedLattice(1, 1)
    got = list(iter_common_ambient_points((a, b), amb))
    assert got, "overlap is plainly nonempty"
    for p in got:
        assert p[0].denominator == 1
        assert hull_membership(p, a) is not None
        assert hull_membership(p, b) is not None
    # one witness per integer fiber, no duplicates
    assert len({p[0] for p in got}) == len(got)


def test_iter_common_points_real_ambient_rejected():
    from tverberg.ambient import RealSpace

    a = PointMultiset.from_points([point(0, 0), point(1, 1)])
    with pytest.raises(UnsupportedAmbient):
        list(iter_common_ambient_points((a,), RealSpace(2)))


def test_random_agreement_between_scan_and_joint_lp(rng):
    # when the lattice scan finds nothing inside the bounding box, the
    # joint feasibility problem must still be allowed to disagree only
    # by producing a non-integer point
    for _ in range(60):
        a = random_lattice_multiset(rng, rng.randint(2, 5), 2, 4)
        b = random_lattice_multiset(rng, rng.randint(2, 5), 2, 4)
        scan = lattice_points_in_intersection((a, b), Lattice(2))
        joint = polytope_intersection_point((a, b))
        if scan:
            assert joint is not None
            for p in scan:
                assert hull_membership(p, a) is not None
                assert hull_membership(p, b) is not None
        if joint is None:
            assert not scan
