"""Exact rational linear programming, two-phase tableau simplex.

Small helper used for acyclicity certificates of partition multisets and for
bounding cone walks.  Bland's anti-cycling rule throughout, every pivot in
Fraction arithmetic, so results are exact and termination is guaranteed.
Problem form: maximize c.x subject to A x <= b, x >= 0.
"""

from __future__ import annotations

from fractions import Fraction


class Unbounded(RuntimeError):
    """The objective is unbounded above over the feasible region."""


class Infeasible(RuntimeError):
    """No point satisfies the constraints."""


def _pivot(tableau, basis, row, col):
    piv = tableau[row][col]
    tableau[row] = [v / piv for v in tableau[row]]
    for r, line in enumerate(tableau):
        if r != row and line[col] != 0:
            factor = line[col]
            tableau[r] = [v - factor * w for v, w in zip(line, tableau[row])]
    basis[row] = col


def _run_simplex(tableau, basis, cost):
    """cost: objective row (reduced costs get recomputed here).  Mutates."""
    ncols = len(tableau[0]) - 1
    while True:
        # reduced costs for nonbasic columns
        z = [Fraction(0)] * (ncols + 1)
        for r, bi in enumerate(basis):
            cb = cost[bi]
            if cb != 0:
                for j in range(ncols + 1):
                    z[j] += cb * tableau[r][j]
        entering = -1
        for j in range(ncols):
            if cost[j] - z[j] > 0:
                entering = j  # Bland: smallest eligible index
                break
        if entering < 0:
            return z[ncols]
        leaving = -1
        best = None
        for r in range(len(tableau)):
            a = tableau[r][entering]
            if a > 0:
                ratio = tableau[r][ncols] / a
                if best is None or ratio < best or (
                    ratio == best and basis[r] < basis[leaving]
                ):
                    best = ratio
                    leaving = r
        if leaving < 0:
            raise Unbounded("no leaving row for entering column")
        _pivot(tableau, basis, leaving, entering)


def maximize(c, A, b):
    """Returns (optimal value, x) for max c.x st A x <= b, x >= 0.

    Raises Infeasible or Unbounded.  All inputs coerced to Fraction.
    """
    m = len(A)
    n = len(c)
    c = [Fraction(v) for v in c]
    b = [Fraction(v) for v in b]
    rows = [[Fraction(v) for v in row] for row in A]
    if any(len(row) != n for row in rows):
        raise ValueError("ragged constraint matrix")

    # columns: n structural, m slack, then artificials as needed
    art_rows = [i for i in range(m) if b[i] < 0]
    nart = len(art_rows)
    width = n + m + nart
    tableau = []
    basis = []
    art_col = {r: n + m + k for k, r in enumerate(art_rows)}
    for i in range(m):
        line = [Fraction(0)] * (width + 1)
        sign = -1 if b[i] < 0 else 1
        for j in range(n):
            line[j] = sign * rows[i][j]
        line[n + i] = Fraction(sign)
        if i in art_col:
            line[art_col[i]] = Fraction(1)
        line[width] = sign * b[i]
        tableau.append(line)
        basis.append(art_col.get(i, n + i))

    if nart:
        phase1 = [Fraction(0)] * width
        for col in art_col.values():
            phase1[col] = Fraction(-1)
        value = _run_simplex(tableau, basis, phase1)
        if value != 0:
            raise Infeasible("phase-1 optimum below zero")
        # drive any artificial still basic out of the basis; a row where that
        # is impossible is redundant and gets dropped with it
        drop = []
        for r, bi in enumerate(basis):
            if bi >= n + m:
                for j in range(n + m):
                    if tableau[r][j] != 0:
                        _pivot(tableau, basis, r, j)
                        break
                else:
                    drop.append(r)
        for r in reversed(drop):
            del tableau[r]
            del basis[r]
        # drop artificial columns
        keep = n + m
        tableau = [line[:keep] + [line[-1]] for line in tableau]
        width = keep

    cost = [Fraction(0)] * width
    for j in range(n):
        cost[j] = c[j]
    value = _run_simplex(tableau, basis, cost)
    x = [Fraction(0)] * n
    for r, bi in enumerate(basis):
        if bi < n:
            x[bi] = tableau[r][-1]
    return value, x
