"""Exact linear algebra over the rationals.

Matrices are lists of rows of :class:`fractions.Fraction`.  Everything here is
exact; nothing takes a tolerance.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = list[Fraction]
Matrix = list[list[Fraction]]


def to_scalar(value) -> Fraction:
    """Coerce ints, Fractions and rational strings ("-1/2", "3") to Fraction.

    Floats are rejected: exact data must never pass through binary floating point.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip().replace("−", "-")
        return Fraction(text)
    raise TypeError(f"cannot use {value!r} ({type(value).__name__}) as an exact scalar")


def format_scalar(value: Fraction) -> str:
    value = to_scalar(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[to_scalar(x) for x in row] for row in rows]


def transpose(a: Matrix) -> Matrix:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence[Fraction]) -> Vector:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(c, a: Matrix) -> Matrix:
    c = to_scalar(c)
    return [[c * x for x in row] for row in a]


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return sub(matmul(a, b), matmul(b, a))


def is_zero(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns, scanning columns left to right."""
    m = [list(row) for row in a]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def nullspace(a: Matrix, n_cols: int | None = None) -> list[Vector]:
    """Basis of {v : a v = 0}; one vector per free column, free entry set to 1."""
    if n_cols is None:
        n_cols = len(a[0]) if a else 0
    if not a:
        return [[Fraction(int(i == j)) for i in range(n_cols)] for j in range(n_cols)]
    r, pivots = rref(a)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for row, p in zip(r, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Sequence[Fraction]) -> Vector:
    """Unique solution of a x = b for square nonsingular a."""
    n = len(a)
    aug = [list(row) + [to_scalar(bi)] for row, bi in zip(a, b)]
    r, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [r[i][n] for i in range(n)]


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, identity(n))]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in r]


def independent_subset(vectors: Sequence[Vector], start: Sequence[Vector] = ()) -> list[int]:
    """Indices of `vectors` that, greedily added in order, raise the rank of `start`."""
    current = [list(v) for v in start]
    base_rank = rank(current) if current else 0
    kept = []
    for idx, v in enumerate(vectors):
        trial = current + [list(v)]
        r = rank(trial)
        if r > base_rank:
            current = trial
            base_rank = r
            kept.append(idx)
    return kept


def in_span(v: Vector, vectors: Sequence[Vector]) -> bool:
    if not vectors:
        return all(x == 0 for x in v)
    return rank([list(w) for w in vectors] + [list(v)]) == rank([list(w) for w in vectors])


def inertia(a: Matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric rational matrix.

    Symmetric Gaussian elimination (congruence).  A zero pivot with a nonzero
    off-diagonal entry is repaired by adding the partner row/column, which never
    changes the inertia.
    """
    m = [list(row) for row in a]
    n = len(m)
    for i in range(n):
        for j in range(n):
            if m[i][j] != m[j][i]:
                raise ValueError("inertia requires a symmetric matrix")
    pos = neg = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if m[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active if i != j and m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row/col i += row/col j; new m[i][i] = 2 m[i][j] != 0
            for c in range(n):
                m[i][c] += m[j][c]
            for r in range(n):
                m[r][i] += m[r][j]
            k = i
        piv = m[k][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        active.remove(k)
        for i in active:
            f = m[i][k] / piv
            if f == 0:
                continue
            for c in range(n):
                m[i][c] -= f * m[k][c]
            for r in range(n):
                m[r][i] -= f * m[r][k]
    return pos, neg, n - pos - neg
