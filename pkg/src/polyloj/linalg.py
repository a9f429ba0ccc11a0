"""Exact rational linear algebra helpers.

Everything here works over Fraction (or int) entries and is deliberately
dependency-free: ranks, determinants and LP feasibility answers feed
correctness-critical geometric decisions, so no floating point is allowed.
Matrices are plain lists of row sequences; sizes stay small (n <= 8 or so
rows) throughout the package, so dense textbook algorithms are fine.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

Row = Sequence[Fraction | int]


def _to_fraction_rows(rows: Sequence[Row]) -> list[list[Fraction]]:
    return [[Fraction(v) for v in row] for row in rows]


def rref(rows: Sequence[Row]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot column indices)."""
    mat = _to_fraction_rows(rows)
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = Fraction(1) / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                factor = mat[i][c]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Row]) -> int:
    return len(rref(rows)[1])


def det(rows: Sequence[Row]) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination."""
    mat = _to_fraction_rows(rows)
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if mat[i][c] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            mat[c], mat[pivot_row] = mat[pivot_row], mat[c]
            sign = -sign
        result *= mat[c][c]
        inv = Fraction(1) / mat[c][c]
        for i in range(c + 1, n):
            if mat[i][c] != 0:
                factor = mat[i][c] * inv
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[c])]
    return sign * result


def solve(rows: Sequence[Row], rhs: Row) -> Optional[list[Fraction]]:
    """One solution of A x = b, or None if inconsistent.

    Free variables are set to zero.
    """
    mat = [list(row) + [rhs[i]] for i, row in enumerate(rows)]
    reduced, pivots = rref(mat)
    ncols = len(rows[0]) if rows else 0
    for row in reduced:
        if all(v == 0 for v in row[:ncols]) and row[ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        if c == ncols:
            return None
        x[c] = reduced[r][ncols]
    return x


def primitive_vector(vec: Sequence[Fraction | int]) -> tuple[int, ...]:
    """Scale a nonzero rational vector by a positive rational to a primitive
    integer vector (gcd of entries = 1, direction preserved)."""
    fracs = [Fraction(v) for v in vec]
    if all(v == 0 for v in fracs):
        raise ValueError("zero vector has no primitive form")
    denom_lcm = 1
    for v in fracs:
        denom_lcm = denom_lcm * v.denominator // math.gcd(denom_lcm, v.denominator)
    ints = [int(v * denom_lcm) for v in fracs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return tuple(v // g for v in ints)


def kernel_basis(rows: Sequence[Row], ncols: int) -> list[tuple[int, ...]]:
    """Primitive integer basis of {x : A x = 0}, one vector per free column.

    Deterministic: standard RREF back-substitution, vectors ordered by free
    column and sign-normalized so the first nonzero entry is positive.
    """
    reduced, pivots = rref(rows) if rows else ([], [])
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -reduced[r][free]
        prim = primitive_vector(vec)
        first = next(v for v in prim if v != 0)
        if first < 0:
            prim = tuple(-v for v in prim)
        basis.append(prim)
    return basis


def lp_feasible(
    eq_rows: Sequence[Row], eq_rhs: Sequence[Fraction | int], num_vars: int
) -> Optional[list[Fraction]]:
    """Exact phase-1 simplex: find x >= 0 with A x = b, or None.

    Bland's rule, so termination is guaranteed. Intended for the small
    systems produced by vertex pruning and normal-cone feasibility tests.
    """
    m = len(eq_rows)
    if m == 0:
        return [Fraction(0)] * num_vars
    # Tableau columns: num_vars structural + m artificial + rhs.
    width = num_vars + m + 1
    tableau: list[list[Fraction]] = []
    for i, row in enumerate(eq_rows):
        r = [Fraction(v) for v in row]
        rhs = Fraction(eq_rhs[i])
        if len(r) != num_vars:
            raise ValueError("row length mismatch")
        if rhs < 0:
            r = [-v for v in r]
            rhs = -rhs
        line = r + [Fraction(0)] * m + [rhs]
        line[num_vars + i] = Fraction(1)
        tableau.append(line)
    basis = [num_vars + i for i in range(m)]
    # Objective: minimize sum of artificials. cost[j] = reduced cost, i.e.
    # c_j minus the sum of column j over the rows (the artificial basis is
    # priced out); the artificial columns carry c_j = 1.
    cost = [Fraction(0)] * width
    for j in range(num_vars, num_vars + m):
        cost[j] = Fraction(1)
    for line in tableau:
        for j in range(width):
            cost[j] -= line[j]
    while True:
        entering = next(
            (j for j in range(num_vars + m) if cost[j] < 0),
            None,
        )
        if entering is None:
            break
        pivot_row = None
        best_ratio: Optional[Fraction] = None
        for i in range(m):
            coeff = tableau[i][entering]
            if coeff > 0:
                ratio = tableau[i][-1] / coeff
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[pivot_row])
                ):
                    best_ratio = ratio
                    pivot_row = i
        if pivot_row is None:
            # Unbounded phase-1 objective cannot happen (bounded below by 0);
            # defensive guard.
            raise ArithmeticError("phase-1 simplex lost boundedness")
        piv = tableau[pivot_row][entering]
        tableau[pivot_row] = [v / piv for v in tableau[pivot_row]]
        for i in range(m):
            if i != pivot_row and tableau[i][entering] != 0:
                f = tableau[i][entering]
                tableau[i] = [
                    a - f * b for a, b in zip(tableau[i], tableau[pivot_row])
                ]
        if cost[entering] != 0:
            f = cost[entering]
            cost = [a - f * b for a, b in zip(cost, tableau[pivot_row])]
        basis[pivot_row] = entering
    objective = -cost[-1]
    if objective != 0:
        return None
    x = [Fraction(0)] * num_vars
    for i, bvar in enumerate(basis):
        if bvar < num_vars:
            x[bvar] = tableau[i][-1]
    return x


def dot(a: Sequence[Fraction | int], b: Sequence[Fraction | int]) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))
