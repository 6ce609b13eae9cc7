"""Exact linear algebra and an exact-pivot phase-1 simplex.

Everything here runs over ``fractions.Fraction``.  The simplex solves
only feasibility systems (find x >= 0 with Ax = b), which is all the
geometry layer ever needs: convex-hull membership, joint intersection
points, and fiber feasibility are all convex-combination systems.  The
phase-1 optimum doubles as an exact infeasibility gap for search scoring.

Pivoting uses Bland's rule (lowest-index entering variable, lowest-index
leaving variable among minimum ratios), which guarantees termination and
makes every answer deterministic for a given system, independent of any
hashing or iteration-order accidents.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def rref(rows: Sequence[Sequence[Fraction]], width: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot column list)."""
    mat: Matrix = [list(map(Fraction, r)) for r in rows]
    if width is None:
        width = len(mat[0]) if mat else 0
    pivots: list[int] = []
    row = 0
    for col in range(width):
        sel = None
        for r in range(row, len(mat)):
            if mat[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        mat[row], mat[sel] = mat[sel], mat[row]
        inv = Fraction(1) / mat[row][col]
        mat[row] = [v * inv for v in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
        if row == len(mat):
            break
    return mat[:row], pivots


def pivot_columns(rows: Sequence[Sequence[Fraction]], width: int) -> list[int]:
    """Pivot columns of the row space; restriction to them is injective
    on the row space, so they serve as exact intrinsic coordinates."""
    _, pivots = rref(rows, width)
    return pivots


def nullspace(rows: Sequence[Sequence[Fraction]], width: int) -> Matrix:
    """Basis of {x : Rx = 0 for every row R}, free variables set to 1."""
    reduced, pivots = rref(rows, width)
    pivot_set = set(pivots)
    basis: Matrix = []
    for free in range(width):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * width
        vec[free] = Fraction(1)
        for r, pcol in zip(reduced, pivots):
            vec[pcol] = -r[free]
        basis.append(vec)
    return basis


def solve_linear(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """One exact solution of Rx = rhs (free variables zero), or None."""
    if not rows:
        return []
    width = len(rows[0])
    aug = [list(map(Fraction, r)) + [Fraction(v)] for r, v in zip(rows, rhs)]
    reduced, pivots = rref(aug, width + 1)
    for r, pcol in zip(reduced, pivots):
        if pcol == width:  # pivot in the rhs column: inconsistent
            return None
    x = [Fraction(0)] * width
    for r, pcol in zip(reduced, pivots):
        x[pcol] = r[width]
    return x


def solve_phase1(
    a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]
) -> tuple[Fraction, list[Fraction] | None]:
    """Minimize the total artificial mass of Ax = b, x >= 0.

    Returns (gap, x): gap == 0 means the system is feasible and x is an
    exact basic feasible solution; gap > 0 is the exact l1 distance to
    feasibility of the right-hand side (and x is None).
    """
    m = len(a)
    n = len(a[0]) if m else 0
    rows: Matrix = []
    rhs: list[Fraction] = []
    for i in range(m):
        r = [Fraction(v) for v in a[i]]
        bv = Fraction(b[i])
        if bv < 0:
            r = [-v for v in r]
            bv = -bv
        rows.append(r)
        rhs.append(bv)
    if m == 0:
        return Fraction(0), [Fraction(0)] * n

    # Tableau columns: n original variables then m artificials.
    tableau = [rows[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    # Reduced costs for minimizing the artificial sum.
    cost = [Fraction(0)] * (n + m + 1)
    for j in range(n):
        cost[j] = -sum(tableau[i][j] for i in range(m))
    cost[n + m] = -sum(rhs)  # negative of current objective value

    total_cols = n + m
    while True:
        enter = -1
        for j in range(total_cols):
            if cost[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best_ratio: Fraction | None = None
        for i in range(m):
            coeff = tableau[i][enter]
            if coeff > 0:
                ratio = tableau[i][total_cols] / coeff
                if best_ratio is None or ratio < best_ratio or (
                    ratio == best_ratio and basis[i] < basis[leave]
                ):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            # Unbounded phase-1 cannot happen (objective bounded below by 0).
            raise ArithmeticError("phase-1 simplex detected unboundedness")
        piv = tableau[leave][enter]
        tableau[leave] = [v / piv for v in tableau[leave]]
        for i in range(m):
            if i != leave and tableau[i][enter] != 0:
                f = tableau[i][enter]
                tableau[i] = [v - f * w for v, w in zip(tableau[i], tableau[leave])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [v - f * w for v, w in zip(cost, tableau[leave])]
        basis[leave] = enter

    gap = -cost[n + m]
    if gap != 0:
        return gap, None
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tableau[i][total_cols]
    return Fraction(0), x
