"""Dense linear algebra over the rationals.

Matrices are plain lists of rows of :class:`fractions.Fraction`.  Every
routine returns fresh lists and never mutates its input.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction
Row = list[Fraction]
Matrix = list[list[Fraction]]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(value) -> Fraction:
    """Coerce ints, strings like ``"3/4"`` and Fractions; reject floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    out = [[to_fraction(x) for x in row] for row in rows]
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def zeros(rows: int, cols: int) -> Matrix:
    return [[ZERO] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def shape(M: Sequence[Sequence]) -> tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


def transpose(M: Sequence[Sequence[Fraction]], cols: int | None = None) -> Matrix:
    if not M:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence[Fraction]], B: Sequence[Sequence[Fraction]]) -> Matrix:
    inner = len(B)
    if A and len(A[0]) != inner:
        raise ValueError("inner dimensions differ")
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [ZERO] * cols
        for k, a in enumerate(row):
            if a:
                bk = B[k]
                for j in range(cols):
                    if bk[j]:
                        acc[j] += a * bk[j]
        out.append(acc)
    return out


def matvec(M: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Row:
    return [sum((a * b for a, b in zip(row, v) if a and b), ZERO) for row in M]


def is_zero(M: Sequence[Sequence[Fraction]]) -> bool:
    return not any(x for row in M for x in row)


def rref(M: Sequence[Sequence]) -> tuple[Matrix, int]:
    """Reduced row echelon form and rank.

    The result has the same shape as ``M``; zero rows sit at the bottom.
    """
    R = as_matrix(M)
    nrows, ncols = shape(R)
    pivot_row = 0
    for col in range(ncols):
        if pivot_row == nrows:
            break
        pr = next((r for r in range(pivot_row, nrows) if R[r][col]), None)
        if pr is None:
            continue
        R[pivot_row], R[pr] = R[pr], R[pivot_row]
        piv = R[pivot_row][col]
        if piv != ONE:
            R[pivot_row] = [x / piv for x in R[pivot_row]]
        prow = R[pivot_row]
        for r in range(nrows):
            if r != pivot_row:
                f = R[r][col]
                if f:
                    R[r] = [x - f * p if p else x for x, p in zip(R[r], prow)]
        pivot_row += 1
    return R, pivot_row


def _integer_row(row: Sequence) -> list[int]:
    row = [to_fraction(x) for x in row]
    scale = math.lcm(*(x.denominator for x in row)) if row else 1
    return [x.numerator * (scale // x.denominator) for x in row]


def _integer_echelon(rows: Iterable[Sequence[int]]) -> list[list[int]]:
    """Independent integer rows spanning the same space (fraction-free).

    Each kept row is zero left of its pivot; rows are divided by their gcd
    so entries stay small.
    """
    basis: list[tuple[int, list[int]]] = []
    for r in rows:
        r = list(r)
        for p, b in basis:
            f = r[p]
            if f:
                g = b[p]
                r = [g * x - f * y for x, y in zip(r, b)]
        lead = next((j for j, x in enumerate(r) if x), None)
        if lead is None:
            continue
        g = math.gcd(*r)
        if g > 1:
            r = [x // g for x in r]
        basis.append((lead, r))
        basis.sort(key=lambda t: t[0])
    return [b for _, b in basis]


def rank(M: Sequence[Sequence]) -> int:
    return len(_integer_echelon(_integer_row(row) for row in M))


def pivot_columns(R: Sequence[Sequence[Fraction]]) -> list[int]:
    """Pivot columns of a matrix already in rref."""
    cols = []
    for row in R:
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is None:
            break
        cols.append(lead)
    return cols


def row_basis(rows: Iterable[Sequence], ncols: int) -> Matrix:
    """Canonical basis (nonzero rref rows) of the span of ``rows``."""
    rows = [list(r) for r in rows]
    if not rows:
        return []
    R, r = rref(rows)
    if R and len(R[0]) != ncols:
        raise ValueError("row length does not match ambient dimension")
    return R[:r]


def kernel(M: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of ``{v : M v = 0}`` as rows, returned in rref.

    ``ncols`` is only needed for a matrix with no rows.
    """
    if not M:
        return identity(ncols or 0)
    R, r = rref(M)
    ncols = shape(R)[1]
    pivots = pivot_columns(R[:r])
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(v)
    if not basis:
        return []
    return row_basis(basis, ncols)


def kernel_dim(M: Sequence[Sequence]) -> int:
    return shape(M)[1] - rank(M)


def inverse(M: Sequence[Sequence]) -> Matrix:
    n, c = shape(M)
    if n != c:
        raise ValueError("inverse of a non-square matrix")
    aug = [list(row) + e for row, e in zip(as_matrix(M), identity(n))]
    R, _ = rref(aug)
    if any(R[i][i] != ONE for i in range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def is_invertible(M: Sequence[Sequence]) -> bool:
    n, c = shape(M)
    return n == c and rank(M) == n


def rank_power_sequence(M: Sequence[Sequence]) -> list[int]:
    """``[rank(M^0), rank(M^1), ...]`` up to and including the first repeat.

    A sequence ending in 0 means ``M`` is nilpotent; a stable nonzero tail
    means it is not.
    """
    n, c = shape(M)
    if n != c:
        raise ValueError(f"rank_power_sequence needs a square matrix, got {n}x{c}")
    # ranks are unchanged by scaling M, so work with an integer multiple;
    # im(M^k) = M im(M^(k-1)) is tracked by a basis instead of forming powers
    M = [[to_fraction(x) for x in row] for row in M]
    scale = math.lcm(*(x.denominator for row in M for x in row)) if n else 1
    Mi = [[x.numerator * (scale // x.denominator) if x else 0 for x in row] for row in M]
    seq = [n]
    image = [list(col) for col in zip(*Mi)]
    while True:
        basis = _integer_echelon(image)
        r = len(basis)
        seq.append(r)
        if r == seq[-2] or r == 0:
            return seq
        image = [[sum(a * b for a, b in zip(row, v) if a) for row in Mi] for v in basis]


def in_row_space(basis: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> bool:
    """Membership test against a basis that is already in rref."""
    v = list(v)
    for row in basis:
        lead = next(j for j, x in enumerate(row) if x)
        f = v[lead]
        if f:
            v = [a - f * b if b else a for a, b in zip(v, row)]
    return not any(v)


def format_matrix(M: Sequence[Sequence[Fraction]]) -> str:
    cells = [[str(x) for x in row] for row in M]
    width = max((len(s) for row in cells for s in row), default=1)
    return "\n".join(" ".join(s.rjust(width) for s in row) for row in cells)
