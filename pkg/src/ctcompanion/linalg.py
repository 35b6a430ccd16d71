"""Exact integer linear algebra on lists of lists.

Everything here works over the integers or the rationals with Python's
arbitrary precision ints, so there is no overflow and no rounding.
Matrices are plain sequences of rows.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = Sequence[Sequence[int]]


def identity(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Matrix) -> list[list[int]]:
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix) -> list[list[int]]:
    if a and len(a[0]) != len(b):
        raise ValueError("dimension mismatch")
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    if a and len(a[0]) != len(v):
        raise ValueError("dimension mismatch")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def bareiss_det(m: Matrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is the Bareiss invariant
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m: Matrix) -> int:
    """Rank of an integer matrix via fraction-free elimination."""
    a = [list(map(int, row)) for row in m if any(row)]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r]
        for i in range(r + 1, len(a)):
            q = a[i][c]
            if q == 0:
                continue
            row = a[i]
            g = gcd(p[c], q)
            f1, f2 = p[c] // g, q // g
            new = [f1 * x - f2 * y for x, y in zip(row, p)]
            h = 0
            for x in new:
                h = gcd(h, x)
            if h > 1:
                new = [x // h for x in new]
            a[i] = new
        r += 1
        if r == len(a):
            break
    return r


def _rref(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    a = [[Fraction(x) for x in row] for row in m]
    if not a:
        return a, []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def primitive(v: Sequence[Fraction | int]) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    den = 1
    for x in v:
        d = Fraction(x).denominator
        den = den * d // gcd(den, d)
    w = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    return tuple(x // g for x in w) if g > 1 else tuple(w)


def nullspace(m: Matrix, ncols: int | None = None) -> list[tuple[int, ...]]:
    """Integer basis of the right kernel {x : m x = 0}.

    Basis vectors are primitive integer vectors, one per free column of the
    reduced row echelon form.  ``ncols`` is needed when ``m`` has no rows.
    """
    if ncols is None:
        if not m:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(m[0])
    a, pivots = _rref(m)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(a, pivots):
            v[pc] = -row[f]
        basis.append(primitive(v))
    return basis


def left_nullspace(m: Matrix, nrows: int) -> list[tuple[int, ...]]:
    """Integer basis of {y : y m = 0}; the rows form a cokernel projection."""
    if not m or not m[0]:
        return [tuple(int(i == j) for j in range(nrows)) for i in range(nrows)]
    return nullspace(transpose(m), nrows)


def solve_unimodular(columns: Sequence[Sequence[int]], target: Sequence[int]) -> tuple[int, ...]:
    """Solve sum_i x_i * columns[i] = target for integer x.

    ``columns`` must form a basis of Z^n with determinant +1 or -1; the
    solution is then integral.  Raises ValueError otherwise.
    """
    n = len(columns)
    if any(len(c) != n for c in columns) or len(target) != n:
        raise ValueError("dimension mismatch")
    mat = transpose(columns)
    det = bareiss_det(mat)
    if det not in (1, -1):
        raise ValueError(f"basis is not unimodular (det={det})")
    aug = [list(row) + [target[i]] for i, row in enumerate(mat)]
    red, _ = _rref(aug)
    sol = []
    for i in range(n):
        x = red[i][n]
        if x.denominator != 1:
            raise ArithmeticError("non-integral solution for a unimodular system")
        sol.append(int(x))
    return tuple(sol)


def inverse_unimodular(m: Matrix) -> tuple[tuple[int, ...], ...]:
    """Integer inverse of a square matrix with determinant +1 or -1."""
    n = len(m)
    det = bareiss_det(m)
    if det not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det={det})")
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    red, _ = _rref(aug)
    out = []
    for i in range(n):
        row = red[i][n:]
        if any(x.denominator != 1 for x in row):
            raise ArithmeticError("non-integral inverse for a unimodular matrix")
        out.append(tuple(int(x) for x in row))
    return tuple(out)
