"""Polynomials and matrices over GF(2^m).

A polynomial is a list of coefficients, index i holding the coefficient of
X^i, with no trailing zeros; the zero polynomial is ``[]``. A matrix is a list
of equal-length rows.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .gf2m import FieldContext

Poly = list[int]
Matrix = list[list[int]]


def trim(p: Sequence[int]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence[int]) -> Optional[int]:
    """Degree of ``p``; None for the zero polynomial."""
    p = trim(p)
    return len(p) - 1 if p else None


def poly_add(p: Sequence[int], r: Sequence[int]) -> Poly:
    if len(p) < len(r):
        p, r = r, p
    out = list(p)
    for i, c in enumerate(r):
        out[i] ^= c
    return trim(out)


def poly_scale(ctx: FieldContext, p: Sequence[int], c: int) -> Poly:
    return trim(ctx.mul(a, c) for a in p)


def poly_mul(ctx: FieldContext, p: Sequence[int], r: Sequence[int]) -> Poly:
    if not p or not r:
        return []
    out = [0] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(r):
                out[i + j] ^= ctx.mul(a, b)
    return trim(out)


def expand_roots(ctx: FieldContext, roots: Sequence[int]) -> Poly:
    """Coefficients of prod (X - r) over ``roots``, built one linear factor at a time.

    The coefficients are the elementary symmetric functions of the roots.
    """
    p = [1]
    for r in roots:
        # (X + r) * p: shift up, then add r * p.
        nxt = [0] + p
        for i, c in enumerate(p):
            nxt[i] ^= ctx.mul(r, c)
        p = nxt
    return p


def eval_poly(ctx: FieldContext, p: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = ctx.mul(acc, x) ^ c
    return acc


def formal_derivative(p: Sequence[int]) -> Poly:
    # In characteristic 2, i * p_i vanishes for even i.
    return trim(p[i] if i % 2 else 0 for i in range(1, len(p)))


def synthetic_div(ctx: FieldContext, p: Sequence[int], r: int) -> Poly:
    """Quotient of ``p`` by (X - r), assuming r is a root."""
    n = len(p) - 1
    if n < 1:
        return []
    q = [0] * n
    acc = 0
    for i in range(n, 0, -1):
        acc = ctx.mul(acc, r) ^ p[i]
        q[i - 1] = acc
    return q


def interpolate(ctx: FieldContext, points: Sequence[tuple[int, int]]) -> Poly:
    """The unique polynomial of degree < len(points) through ``points`` (Lagrange)."""
    xs = [x for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation abscissae must be pairwise distinct")
    master = expand_roots(ctx, xs)
    out = [0] * len(points)
    for x, y in points:
        if not y:
            continue
        basis = synthetic_div(ctx, master, x)
        scale = ctx.div(y, eval_poly(ctx, basis, x))
        for i, c in enumerate(basis):
            out[i] ^= ctx.mul(scale, c)
    return trim(out)


# -- matrices ---------------------------------------------------------------------


def shape(M: Matrix) -> tuple[int, int]:
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if any(len(row) != cols for row in M):
        raise ValueError("ragged matrix")
    return rows, cols


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M: Matrix) -> Matrix:
    return [list(col) for col in zip(*M)]


def power_matrix(ctx: FieldContext, xs: Sequence[int], rows: int) -> Matrix:
    """``rows`` x len(xs) matrix with entry (i, j) = xs[j]**i; row 0 is all ones."""
    if rows < 1:
        raise ValueError("power matrix needs at least one row")
    out = [[1] * len(xs)]
    for _ in range(rows - 1):
        out.append([ctx.mul(a, x) for a, x in zip(out[-1], xs)])
    return out


def mat_mul(ctx: FieldContext, A: Matrix, B: Matrix) -> Matrix:
    ra, ca = shape(A)
    rb, cb = shape(B)
    if ca != rb:
        raise ValueError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    Bt = transpose(B)
    return [[ctx.sum(ctx.mul(a, b) for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_vec(ctx: FieldContext, A: Matrix, v: Sequence[int]) -> list[int]:
    _, cols = shape(A)
    if cols != len(v):
        raise ValueError(f"matrix has {cols} columns, vector has length {len(v)}")
    return [ctx.sum(ctx.mul(a, b) for a, b in zip(row, v)) for row in A]


def det_gauss(ctx: FieldContext, M: Matrix) -> int:
    """Determinant by Gaussian elimination (first nonzero pivot in row order)."""
    n, cols = shape(M)
    if n != cols:
        raise ValueError(f"determinant of a non-square {n}x{cols} matrix")
    A = [list(row) for row in M]
    det = 1
    for c in range(n):
        pivot = next((r for r in range(c, n) if A[r][c]), None)
        if pivot is None:
            return 0
        # Row swaps flip the sign, which is invisible in characteristic 2.
        A[c], A[pivot] = A[pivot], A[c]
        det = ctx.mul(det, A[c][c])
        inv = ctx.inv(A[c][c])
        for r in range(c + 1, n):
            if A[r][c]:
                f = ctx.mul(A[r][c], inv)
                A[r] = [a ^ ctx.mul(f, b) for a, b in zip(A[r], A[c])]
    return det


def rref(ctx: FieldContext, M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    rows, cols = shape(M)
    A = [list(row) for row in M]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = next((i for i in range(r, rows) if A[i][c]), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        inv = ctx.inv(A[r][c])
        A[r] = [ctx.mul(inv, a) for a in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a ^ ctx.mul(f, b) for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def nullspace_vector(ctx: FieldContext, M: Matrix) -> Optional[list[int]]:
    """A nonzero kernel vector with the lowest-index free variable set to 1.

    Other free variables are 0. Returns None when the kernel is trivial.
    """
    _, cols = shape(M)
    R, pivots = rref(ctx, M)
    free = [c for c in range(cols) if c not in set(pivots)]
    if not free:
        return None
    f = free[0]
    v = [0] * cols
    v[f] = 1
    for row, c in zip(R, pivots):
        v[c] = row[f]  # -row[f], char 2
    return v


def solve(ctx: FieldContext, M: Matrix, b: Sequence[int]) -> Optional[list[int]]:
    """Some solution of M v = b (free variables zero), or None if inconsistent."""
    rows, cols = shape(M)
    if len(b) != rows:
        raise ValueError("right-hand side length mismatch")
    R, pivots = rref(ctx, [list(row) + [bi] for row, bi in zip(M, b)])
    if cols in pivots:
        return None
    v = [0] * cols
    for row, c in zip(R, pivots):
        v[c] = row[cols]
    return v
