from __future__ import annotations

import random
from fractions import Fraction

from tverberg.linprog import nullspace, pivot_columns, rref, solve_linear, solve_phase1


def F(x):
    return Fraction(x)


def test_rref_identity():
    rows = [[F(2), F(0)], [F(0), F(3)]]
    reduced, pivots = rref(rows)
    assert reduced == [[F(1), F(0)], [F(0), F(1)]]
    assert pivots == [0, 1]


def test_pivot_columns_rank_deficient():
    rows = [[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(0), F(0), F(1)]]
    assert pivot_columns(rows, 3) == [0, 2]


def test_nullspace_dimensions():
    rows = [[F(1), F(1), F(1)]]
    basis = nullspace(rows, 3)
    assert len(basis) == 2
    for vec in basis:
        assert sum(vec) == 0


def test_solve_linear_consistent_and_not():
    rows = [[F(1), F(2)], [F(3), F(4)]]
    x = solve_linear(rows, [F(5), F(6)])
    assert x is not None
    assert [sum(a * b for a, b in zip(r, x)) for r in rows] == [F(5), F(6)]
    assert solve_linear([[F(1), F(1)], [F(2), F(2)]], [F(1), F(3)]) is None


def test_solve_linear_underdetermined_random():
    rng = random.Random(4)
    for _ in range(60):
        rows_n = rng.randint(1, 3)
        cols_n = rng.randint(rows_n, 5)
        rows = [
            [F(rng.randint(-4, 4)) for _ in range(cols_n)] for _ in range(rows_n)
        ]
        target = [F(rng.randint(-3, 3)) for _ in range(cols_n)]
        rhs = [sum(a * b for a, b in zip(r, target)) for r in rows]
        x = solve_linear(rows, rhs)
        assert x is not None  # consistent by construction
        assert [sum(a * b for a, b in zip(r, x)) for r in rows] == rhs


def test_phase1_feasible_by_construction():
    rng = random.Random(11)
    for _ in range(80):
        rows_n = rng.randint(1, 4)
        cols_n = rng.randint(1, 6)
        a = [[F(rng.randint(-5, 5)) for _ in range(cols_n)] for _ in range(rows_n)]
        hidden = [F(rng.randint(0, 4)) for _ in range(cols_n)]
        b = [sum(c * x for c, x in zip(row, hidden)) for row in a]
        gap, x = solve_phase1(a, b)
        assert gap == 0
        assert all(v >= 0 for v in x)
        assert [sum(c * v for c, v in zip(row, x)) for row in a] == b


def test_phase1_infeasible():
    # x1 + x2 = -1 has no nonnegative solution
    gap, _ = solve_phase1([[F(1), F(1)]], [F(-1)])
    assert gap > 0
    # x1 - x2 = 3 and x1 + x2 = 1 forces x1 = 2, x2 = -1
    gap, _ = solve_phase1([[F(1), F(-1)], [F(1), F(1)]], [F(3), F(1)])
    assert gap > 0


def test_phase1_gap_is_exact_distance_witness():
    # the reported gap never understates: re-adding it as slack succeeds
    rng = random.Random(7)
    for _ in range(40):
        rows_n = rng.randint(1, 3)
        cols_n = rng.randint(1, 4)
        a = [[F(rng.randint(-3, 3)) for _ in range(cols_n)] for _ in range(rows_n)]
        b = [F(rng.randint(-6, 6)) for _ in range(rows_n)]
        gap, x = solve_phase1(a, b)
        assert gap >= 0
        if gap == 0:
            assert [sum(c * v for c, v in zip(row, x)) for row in a] == b
            assert all(v >= 0 for v in x)
