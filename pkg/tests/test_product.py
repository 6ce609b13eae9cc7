from __future__ import annotations

from fractions import Fraction

import pytest

from tverberg.ambient import Lattice, MixedLattice, RealSpace
from tverberg.certificates import verify_certificate
from tverberg.errors import Infeasible, PreconditionViolated, UnsupportedAmbient
from tverberg.geometry import hull_membership
from tverberg.oracle import verify_no_partition
from tverberg.points import PointMultiset, point
from tverberg.product import (
    double_witness,
    fiber_lift,
    product_tverberg,
    real_tverberg_bruteforce,
)

from conftest import random_rational


def _mixed_multiset(rng, n, j, k, box=6):
    pts = []
    for _ in range(n):
        coords = [Fraction(rng.randint(-box, box)) for _ in range(j)]
        coords += [random_rational(rng, box) for _ in range(k)]
        pts.append(tuple(coords))
    return PointMultiset.from_points(pts)


def test_real_bruteforce_radon():
    pts = PointMultiset.from_points(
        [point(0, 0), point(4, 0), point(0, 4), point(1, 1)]
    )
    cert = real_tverberg_bruteforce(pts, 2)
    assert verify_certificate(cert, pts).ok


def test_real_bruteforce_gate():
    pts = PointMultiset.from_points([point(0, 0), point(1, 0), point(0, 1)])
    with pytest.raises(PreconditionViolated):
        real_tverberg_bruteforce(pts, 2)  # 3 < (2-1)(2+1)+1


def test_real_bruteforce_three_parts(rng):
    for _ in range(10):
        pts = PointMultiset.from_points(
            [(random_rational(rng, 5), random_rational(rng, 5)) for _ in range(7)]
        )
        cert = real_tverberg_bruteforce(pts, 3)
        assert verify_certificate(cert, pts).ok


def test_fiber_lift_matches_prefix(rng):
    for _ in range(40):
        part = _mixed_multiset(rng, rng.randint(2, 5), 1, 2)
        # an instance's own first coordinate is always liftable
        anchor = part.instances()[rng.randrange(part.size)]
        lifted, coeffs = fiber_lift(part, (anchor[0],))
        assert lifted[0] == anchor[0]
        assert coeffs.combination(part) == lifted
        # far outside the projected hull it must refuse
        with pytest.raises(Infeasible):
            fiber_lift(part, (Fraction(99),))


def test_product_tverberg_line_base(rng):
    amb = MixedLattice(1, 1)
    for m in (2, 3):
        t = (m - 1) * 2 + 1
        n = 2 * t - 1
        for _ in range(20):
            pts = _mixed_multiset(rng, n, 1, 1)
            cert, record = product_tverberg(pts, m, amb)
            assert verify_certificate(cert, pts).ok
            assert cert.point[0].denominator == 1
            assert len(record.groups) == m


def test_product_tverberg_plane_base(rng):
    amb = MixedLattice(2, 1)
    m = 2
    t = (m - 1) * 2 + 1
    n = 4 * t - 3
    for _ in range(15):
        pts = _mixed_multiset(rng, n, 2, 1)
        cert, _ = product_tverberg(pts, m, amb)
        assert verify_certificate(cert, pts).ok
        assert cert.point[0].denominator == 1
        assert cert.point[1].denominator == 1


def test_product_tverberg_two_real_coordinates(rng):
    amb = MixedLattice(1, 2)
    m = 2
    t = (m - 1) * 3 + 1
    n = 2 * t - 1
    for _ in range(15):
        pts = _mixed_multiset(rng, n, 1, 2)
        cert, _ = product_tverberg(pts, m, amb)
        assert verify_certificate(cert, pts).ok


def test_product_gates_and_ambient_checks(rng):
    amb = MixedLattice(1, 1)
    pts = _mixed_multiset(rng, 4, 1, 1)
    with pytest.raises(PreconditionViolated):
        product_tverberg(pts, 2, amb)  # 4 < 2t-1 = 5
    deep = MixedLattice(4, 1)
    pts5 = _mixed_multiset(rng, 40, 4, 1)
    with pytest.raises(UnsupportedAmbient):
        product_tverberg(pts5, 2, deep)
    frac = PointMultiset.from_points(
        [(Fraction(1, 2), Fraction(0))] + [point(i, 0) for i in range(6)]
    )
    with pytest.raises(PreconditionViolated):
        product_tverberg(frac, 2, amb)  # non-integer first coordinate


def test_double_witness_lattice():
    base = PointMultiset.from_points([point(1, 2), point(3, 4)])
    doubled, amb = double_witness(base, Lattice(2))
    assert amb == Lattice(3)
    assert doubled.size == 4
    assert doubled.multiplicity(point(1, 2, 0)) == 1
    assert doubled.multiplicity(point(1, 2, 1)) == 1
    assert doubled.multiplicity(point(3, 4, 1)) == 1


def test_double_witness_real_goes_mixed():
    base = PointMultiset.from_points([(Fraction(0),), (Fraction(1),)])
    doubled, amb = double_witness(base, RealSpace(1))
    assert amb == MixedLattice(1, 1)
    # level coordinate sits in front, original value behind
    assert doubled.multiplicity(point(0, 0)) == 1
    assert doubled.multiplicity(point(1, 0)) == 1
    assert doubled.multiplicity(point(0, 1)) == 1
    assert doubled.multiplicity(point(1, 1)) == 1


def test_double_witness_preserves_multiplicity():
    base = PointMultiset.from_points([point(5, 5)] * 3)
    doubled, _ = double_witness(base, Lattice(2))
    assert doubled.multiplicity(point(5, 5, 0)) == 3
    assert doubled.multiplicity(point(5, 5, 1)) == 3


def test_doubled_pair_refutes_in_mixed_ambient():
    base = PointMultiset.from_points([(Fraction(0),), (Fraction(1),)])
    doubled, amb = double_witness(base, RealSpace(1))
    assert verify_no_partition(doubled, 2, amb)


def test_lift_record_partitions_base_parts(rng):
    amb = MixedLattice(1, 1)
    pts = _mixed_multiset(rng, 5, 1, 1)
    cert, record = product_tverberg(pts, 2, amb)
    # groups index the base parts and every base part lands somewhere
    seen = sorted(i for grp in record.groups for i in grp)
    assert seen == list(range(len(record.lifted)))
    assert len(record.groups) == len(cert.parts)
    for grp in record.groups:
        assert grp
    # each lifted point shares the base point's leading coordinate
    for lifted in record.lifted:
        assert lifted[: len(record.base_point)] == record.base_point
    assert cert.point[: len(record.base_point)] == record.base_point
    assert hull_membership(cert.point, cert.parts[0]) is not None
