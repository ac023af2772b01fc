"""Exact linear algebra over the rationals.

Matrices are plain lists of rows holding ``Fraction`` (ints are accepted and
promoted). Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

Matrix = list[list[Fraction]]
Vector = tuple[Fraction, ...]


def as_fraction(value) -> Fraction:
    """Parse ``value`` into a Fraction.

    Accepts ints, Fractions and strings of the form ``"p/q"`` or ``"p"``.
    Floats are rejected so that no rounded value sneaks into exact code.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"rational must be written as p/q, got {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def rref(matrix: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns (zero rows dropped)."""
    m = [[as_fraction(x) for x in row] for row in matrix]
    if not m:
        return [], []
    cols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _integer_rows(matrix: Sequence[Sequence]) -> list[list[int]]:
    rows = []
    for row in matrix:
        fr = [as_fraction(x) for x in row]
        scale = lcm(*(x.denominator for x in fr)) if fr else 1
        rows.append([int(x * scale) for x in fr])
    return rows


def rank(matrix: Sequence[Sequence]) -> int:
    """Exact rank by fraction-free (Bareiss) elimination on integer rows."""
    m = _integer_rows(matrix)
    if not m or not m[0]:
        return 0
    rows, cols = len(m), len(m[0])
    prev = 1
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][c]
        for i in range(r + 1, rows):
            mic = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c + 1, cols):
                # Bareiss: division is exact by construction
                row_i[j] = (p * row_i[j] - mic * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
        if r == rows:
            break
    return r


def nullspace(matrix: Sequence[Sequence], cols: int | None = None) -> list[Vector]:
    """Basis of {x : M x = 0}, returned in reduced echelon order."""
    if cols is None:
        if not matrix:
            raise ValueError("column count needed for an empty matrix")
        cols = len(matrix[0])
    reduced, pivots = rref(matrix) if matrix else ([], [])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return canonical_basis(basis, cols)


def canonical_basis(vectors: Iterable[Sequence], dim: int) -> list[Vector]:
    """Reduced echelon basis of the span of ``vectors``."""
    vecs = [list(v) for v in vectors]
    if not vecs:
        return []
    reduced, _ = rref(vecs)
    return [tuple(row) for row in reduced]


def solve_in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    """True iff ``v`` lies in the span of ``basis``."""
    if not basis:
        return all(as_fraction(x) == 0 for x in v)
    return rank(list(basis) + [list(v)]) == rank(basis)


def inverse(matrix: Sequence[Sequence]) -> Matrix:
    n = len(matrix)
    aug = [[as_fraction(x) for x in row] + e for row, e in zip(matrix, identity(n))]
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(reduced) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in reduced]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


# --------------------------------------------------------------------------
# Polynomials in a few variables, used by the deterministic rank route.
# A polynomial is a dict mapping exponent tuples to nonzero Fractions.
# --------------------------------------------------------------------------

Poly = dict[tuple[int, ...], Fraction]


def poly_const(c, nvars: int) -> Poly:
    c = as_fraction(c)
    return {(0,) * nvars: c} if c != 0 else {}


def poly_var(i: int, nvars: int) -> Poly:
    exp = [0] * nvars
    exp[i] = 1
    return {tuple(exp): Fraction(1)}


def poly_add(p: Poly, q: Poly, sign: int = 1) -> Poly:
    out = dict(p)
    for k, v in q.items():
        s = out.get(k, 0) + sign * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for k1, v1 in p.items():
        for k2, v2 in q.items():
            k = tuple(x + y for x, y in zip(k1, k2))
            s = out.get(k, 0) + v1 * v2
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def pfaffian(m: Sequence[Sequence[Poly]], idx: Sequence[int] | None = None) -> Poly:
    """Pfaffian of the principal skew submatrix on rows/cols ``idx``.

    Expansion along the first row; only meant for sizes up to about 6.
    """
    if idx is None:
        idx = list(range(len(m)))
    if len(idx) == 0:
        nvars = _nvars(m)
        return poly_const(1, nvars)
    if len(idx) % 2:
        return {}
    first = idx[0]
    total: Poly = {}
    for pos in range(1, len(idx)):
        j = idx[pos]
        entry = m[first][j]
        if not entry:
            continue
        rest = [k for k in idx[1:] if k != j]
        sub = pfaffian(m, rest)
        if not sub:
            continue
        term = poly_mul(entry, sub)
        total = poly_add(total, term, 1 if pos % 2 == 1 else -1)
    return total


def _nvars(m) -> int:
    for row in m:
        for p in row:
            for k in p:
                return len(k)
    return 0


def generic_skew_rank(m: Sequence[Sequence[Poly]]) -> int:
    """Rank of a skew matrix of polynomials over the rational function field.

    A skew matrix has rank 2k exactly when some principal 2k x 2k
    sub-Pfaffian is a nonzero polynomial and none of size 2k+2 is.
    """
    n = len(m)
    best = 0
    for size in range(2, n + 1, 2):
        if any(pfaffian(m, list(sub)) for sub in combinations(range(n), size)):
            best = size
        else:
            break
    return best
