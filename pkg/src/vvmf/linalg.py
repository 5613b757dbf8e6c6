"""Dense linear algebra over the rationals.

Matrices are tuples of row tuples of Fractions. Everything here is exact;
sizes are small (rank at most a handful, principal-part systems a few dozen),
so plain Gaussian elimination is adequate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(d: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))


def zeros(r: int, c: int | None = None) -> Matrix:
    c = r if c is None else c
    return tuple(tuple(Fraction(0) for _ in range(c)) for _ in range(r))


def diag(values: Sequence) -> Matrix:
    d = len(values)
    return tuple(
        tuple(Fraction(values[i]) if i == j else Fraction(0) for j in range(d))
        for i in range(d)
    )


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(a: Matrix, s) -> Matrix:
    s = Fraction(s)
    return tuple(tuple(s * x for x in row) for row in a)


def mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols)
        for row in a
    )


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return sub(mul(a, b), mul(b, a))


def is_zero(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def _echelon(a: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(row) for row in a]
    pivots: list[int] = []
    if not m:
        return m, pivots
    r = 0
    for c in range(len(m[0])):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(a: Matrix) -> int:
    return len(_echelon(a)[1])


def kernel(a: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of the right null space {v : a v = 0}."""
    n = len(a[0]) if a else (ncols or 0)
    if not a:
        return [tuple(Fraction(int(i == k)) for i in range(n)) for k in range(n)]
    m, pivots = _echelon(a)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -m[r][f]
        basis.append(tuple(v))
    return basis


def det(a: Matrix) -> Fraction:
    m = [list(row) for row in a]
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        result *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = tuple(tuple(row) + identity(n)[i] for i, row in enumerate(a))
    m, pivots = _echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in m)


def solve(a: Matrix, b: Sequence) -> Vector | None:
    """One solution of a x = b, or None when the system is inconsistent."""
    n = len(a[0]) if a else 0
    aug = tuple(tuple(row) + (Fraction(rhs),) for row, rhs in zip(a, b))
    m, pivots = _echelon(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, p in enumerate(pivots):
        x[p] = m[r][n]
    return tuple(x)


def pivot_rows(vectors: Sequence[Vector]) -> list[int]:
    """Row indices at which the given column vectors are linearly independent.

    Rows are chosen greedily from the top, so the result is the
    lexicographically first set of rows on which the vectors restrict to an
    invertible square block.
    """
    if not vectors:
        return []
    return _echelon(tuple(tuple(v) for v in vectors))[1]
