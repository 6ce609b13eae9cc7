from __future__ import annotations

import random
from fractions import Fraction

import pytest

from tverberg.ambient import FiniteSet
from tverberg.depth import (
    depth_value,
    finite_set_centerpoint,
    halfspace_depth,
    integer_centerpoint,
)
from tverberg.errors import CenterpointNotFound, PreconditionViolated
from tverberg.points import PointMultiset, point

from conftest import random_lattice_multiset
from depth_oracles import oracle_depth


def test_depth_known_line():
    pts = PointMultiset.from_points([point(i) for i in range(5)])
    assert [depth_value(point(i), pts) for i in range(5)] == [1, 2, 3, 2, 1]
    assert depth_value(point(-1), pts) == 0
    assert depth_value((Fraction(1, 2),), pts) == 1


def test_depth_known_plane():
    # square with its center: the center sees at least one point in
    # every closed half-plane through it, plus itself
    pts = PointMultiset.from_points(
        [point(0, 0), point(2, 0), point(0, 2), point(2, 2), point(1, 1)]
    )
    # any closed half-plane through the center keeps two corners plus
    # the center itself
    assert depth_value(point(1, 1), pts) == 3
    assert depth_value(point(0, 0), pts) == 1
    assert depth_value(point(3, 3), pts) == 0


def test_depth_counts_multiplicity():
    pts = PointMultiset.from_points([point(0, 0)] * 4 + [point(1, 0)])
    assert depth_value(point(0, 0), pts) == 4


def test_witness_halfspace_recounts(rng):
    for _ in range(150):
        d = rng.choice([2, 3])
        pts = random_lattice_multiset(rng, rng.randint(1, 8), d, 6)
        q = tuple(Fraction(rng.randint(-6, 6)) for _ in range(d))
        wit = halfspace_depth(q, pts)
        assert wit.point == q
        # the returned half-space must pass through q and attain the count
        assert wit.halfspace.boundary_contains(q)
        count = sum(
            mult for p, mult in pts.entries if wit.halfspace.contains(p)
        )
        assert count == wit.depth


def test_depth_matches_direction_enumeration_oracle(rng):
    for _ in range(200):
        d = rng.choice([1, 2, 3])
        pts = random_lattice_multiset(rng, rng.randint(1, 8), d, 6)
        if rng.random() < 0.25:
            q = tuple(Fraction(rng.randint(-12, 12), 2) for _ in range(d))
        else:
            q = tuple(Fraction(rng.randint(-6, 6)) for _ in range(d))
        assert halfspace_depth(q, pts).depth == oracle_depth(q, pts)


def test_depth_translation_equivariance(rng):
    for _ in range(60):
        d = rng.choice([2, 3])
        pts = random_lattice_multiset(rng, rng.randint(2, 7), d, 5)
        q = tuple(Fraction(rng.randint(-5, 5)) for _ in range(d))
        shift = tuple(Fraction(rng.randint(-9, 9)) for _ in range(d))
        moved = PointMultiset.from_points(
            [tuple(a + s for a, s in zip(p, shift)) for p in pts.instances()]
        )
        q2 = tuple(a + s for a, s in zip(q, shift))
        assert depth_value(q, pts) == depth_value(q2, moved)


def test_integer_centerpoint_existence_guarantee(rng):
    # 2^d (m-1) + 1 points always leave an integer point of depth m
    for _ in range(150):
        d = rng.choice([1, 2, 3])
        m = rng.choice([2, 3, 4])
        n = 2**d * (m - 1) + 1 + rng.randint(0, 3)
        pts = random_lattice_multiset(rng, n, d, 7)
        c = integer_centerpoint(pts, m)
        assert all(x.denominator == 1 for x in c)
        assert depth_value(c, pts) >= m


def test_integer_centerpoint_is_deepest_then_lex_first(rng):
    for _ in range(40):
        pts = random_lattice_multiset(rng, 9, 2, 3)
        c = integer_centerpoint(pts, 2)
        got = depth_value(c, pts)
        assert got >= 2
        # brute scan of every integer point that could reach depth 2
        brute = max(
            ((point(x, y), depth_value(point(x, y), pts))
             for x in range(-3, 4) for y in range(-3, 4)),
            key=lambda t: (t[1], tuple(-v for v in t[0])),
        )
        assert brute[1] == got
        assert brute[0] == c  # earliest among the deepest


def test_integer_centerpoint_failure():
    pts = PointMultiset.from_points([point(0, 0), point(10, 0)])
    with pytest.raises(CenterpointNotFound):
        integer_centerpoint(pts, 2)


def test_integer_centerpoint_rejects_fractional_input():
    pts = PointMultiset.from_points([(Fraction(1, 2), Fraction(0)), point(1, 1)])
    with pytest.raises(PreconditionViolated):
        integer_centerpoint(pts, 1)


def test_finite_set_centerpoint_picks_member():
    amb = FiniteSet((point(0, 0), point(1, 0), point(2, 0), point(1, 1)), 2)
    pts = PointMultiset.from_points(
        [point(0, 0), point(2, 0), point(1, 1), point(1, 0), point(1, 0)]
    )
    c = finite_set_centerpoint(pts, amb, 2)
    assert amb.contains(c)
    assert depth_value(c, pts) >= 2
