"""Exact linear algebra over the rationals.

Matrices are plain lists of lists of Fraction.  Everything here is exact;
float matrices never enter these routines.  Rank is computed by
fraction-free (Bareiss) elimination on a denominator-cleared integer copy,
kernels by back-substitution from the integer echelon form.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

Vec = list  # list[Fraction]
Mat = list  # list[list[Fraction]]

ZERO = Fraction(0)
ONE = Fraction(1)


def zeros(rows: int, cols: int) -> Mat:
    return [[ZERO] * cols for _ in range(rows)]


def identity(n: int) -> Mat:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def copy_matrix(m: Mat) -> Mat:
    return [row[:] for row in m]


def transpose(m: Mat) -> Mat:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def matmul(a: Mat, b: Mat) -> Mat:
    if a and b and len(a[0]) != len(b):
        raise ValueError("matmul: inner dimensions disagree")
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), ZERO) for col in bt] for row in a]


def matvec(m: Mat, v: Vec) -> Vec:
    if m and len(m[0]) != len(v):
        raise ValueError("matvec: dimensions disagree")
    return [sum((c * x for c, x in zip(row, v)), ZERO) for row in m]


def mat_eq(a: Mat, b: Mat) -> bool:
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def is_zero_matrix(m: Mat) -> bool:
    return all(all(x == 0 for x in row) for row in m)


def scale(m: Mat, c: Fraction) -> Mat:
    return [[c * x for x in row] for row in m]


def add(a: Mat, b: Mat) -> Mat:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _integer_rows(m: Mat) -> list[list[int]]:
    # row-wise denominator clearing preserves row space and kernel
    out = []
    for row in m:
        mult = 1
        for x in row:
            mult = lcm(mult, Fraction(x).denominator)
        out.append([int(x * mult) for x in row])
    return out


def _bareiss_echelon(m: Mat) -> tuple[list[list[int]], list[int]]:
    """Fraction-free echelon form of a denominator-cleared copy.

    Returns the integer echelon matrix together with its pivot columns.
    """
    a = _integer_rows(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if a[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Mat) -> int:
    if not m or not m[0]:
        return 0
    _, pivots = _bareiss_echelon(m)
    return len(pivots)


def normalize_primitive(v: Vec) -> Vec:
    """Scale to a primitive integer vector whose first nonzero entry is positive."""
    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return [ZERO] * len(v)
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        g = -g
    return [Fraction(x, g) for x in ints]


def kernel_basis(m: Mat) -> list[Vec]:
    """Basis of the right kernel, one vector per free column.

    Vectors are normalized to primitive integer form with positive leading
    entry, ordered by free column index.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if cols == 0:
        return []
    if rows == 0:
        return [[ONE if i == j else ZERO for i in range(cols)] for j in range(cols)]
    ech, pivots = _bareiss_echelon(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * cols
        v[f] = ONE
        # back-substitute through pivot rows, bottom up
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            s = sum((Fraction(ech[r][j]) * v[j] for j in range(c + 1, cols)), ZERO)
            v[c] = -s / Fraction(ech[r][c])
        basis.append(normalize_primitive(v))
    return basis


def rank_kernel(m: Mat) -> tuple[int, list[Vec]]:
    """Rank and kernel basis by fraction-free elimination."""
    return rank(m), kernel_basis(m)


def rref(m: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form over Fraction with pivot columns."""
    a = copy_matrix(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if a[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        inv = ONE / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def solve(m: Mat, b: Vec) -> Vec | None:
    """One exact solution of m x = b, or None when inconsistent."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    aug = [m[i][:] + [b[i]] for i in range(rows)]
    red, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [ZERO] * cols
    for r, c in enumerate(pivots):
        x[c] = red[r][cols]
    return x


def column_space_basis(m: Mat) -> list[Vec]:
    """The pivot columns of m, as vectors."""
    if not m:
        return []
    _, pivots = rref(m)
    cols = transpose(m)
    return [cols[c][:] for c in pivots]


def columns_matrix(vectors: list[Vec], dim: int) -> Mat:
    """Matrix whose columns are the given vectors (dim rows)."""
    return [[v[i] for v in vectors] for i in range(dim)]


def det(m: Mat) -> Fraction:
    n = len(m)
    if n == 0:
        return ONE
    if any(len(row) != n for row in m):
        raise ValueError("det: matrix not square")
    a = copy_matrix(m)
    sign = 1
    result = ONE
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if a[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            return ZERO
        if pivot_row != c:
            a[c], a[pivot_row] = a[pivot_row], a[c]
            sign = -sign
        result *= a[c][c]
        inv = ONE / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result * sign


def invert(m: Mat) -> Mat:
    n = len(m)
    aug = [m[i][:] + identity(n)[i] for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("invert: matrix is singular")
    return [row[n:] for row in red]
