"""Exact controllability decisions for integer symmetric systems.

Everything here runs over arbitrary-precision Python integers (no tolerances,
no rounding): Krylov/Kalman matrices, fraction-free Bareiss rank and
determinant, Faddeev-LeVerrier characteristic polynomials, and the
square-free test for distinct eigenvalues.

Krylov entries grow like ``norm(A)**n``, so the exact path is capped at
``DEFAULT_EXACT_CAP`` dimensions by default; pass ``cap=None`` (or a larger
cap) to override for fixtures.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

__all__ = [
    "DEFAULT_EXACT_CAP",
    "DimensionCapError",
    "kalman_matrix",
    "rank_exact",
    "det_exact",
    "charpoly_exact",
    "has_simple_spectrum_exact",
    "is_controllable_exact",
]

DEFAULT_EXACT_CAP = 24


class DimensionCapError(ValueError):
    """Exact-path dimension cap exceeded; use the float PBH path instead."""


def _as_int_rows(m) -> list[list[int]]:
    a = np.asarray(m)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={a.ndim}")
    if a.dtype.kind == "f":
        if not np.all(a == np.round(a)):
            raise ValueError("exact path requires integer entries")
    elif a.dtype.kind not in "iubO":
        raise ValueError(f"exact path requires integer entries, got dtype {a.dtype}")
    return [[int(x) for x in row] for row in a]


def _as_int_vector(v) -> list[int]:
    a = np.asarray(v)
    if a.ndim != 1:
        raise ValueError(f"expected a vector, got ndim={a.ndim}")
    if a.dtype.kind == "f" and not np.all(a == np.round(a)):
        raise ValueError("exact path requires integer entries")
    return [int(x) for x in a]


def _check_symmetric(rows: list[list[int]]) -> None:
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i},{j})")


def kalman_matrix(a, b) -> np.ndarray:
    """Exact Kalman matrix with columns b, Ab, ..., A^(n-1) b.

    Returns an object-dtype array of Python ints, so entries never overflow.
    """
    rows = _as_int_rows(a)
    vec = _as_int_vector(b)
    n = len(rows)
    if any(len(r) != n for r in rows) or len(vec) != n:
        raise ValueError(f"dimension mismatch: A is {len(rows)}x{len(rows[0]) if rows else 0}, b has {len(vec)}")
    cols = [vec]
    for _ in range(n - 1):
        prev = cols[-1]
        cols.append([sum(rows[i][j] * prev[j] for j in range(n)) for i in range(n)])
    out = np.empty((n, n), dtype=object)
    for k, col in enumerate(cols):
        for i in range(n):
            out[i, k] = col[i]
    return out


def _bareiss(rows: list[list[int]]) -> tuple[int, int, int]:
    """Fraction-free elimination; returns (rank, det_sign, last_pivot).

    Pivots are searched per column among the remaining rows; columns with no
    nonzero entry are skipped.  Each update divides by the previous pivot,
    which is exact by Sylvester's determinant identity.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    rank = 0
    sign = 1
    prev = 1
    pivot = 1
    row = 0
    for col in range(n):
        if row == m:
            break
        piv = next((r for r in range(row, m) if rows[r][col] != 0), None)
        if piv is None:
            continue
        if piv != row:
            rows[row], rows[piv] = rows[piv], rows[row]
            sign = -sign
        pivot = rows[row][col]
        for r in range(row + 1, m):
            factor = rows[r][col]
            rr, pr = rows[r], rows[row]
            for c in range(col + 1, n):
                rr[c] = (rr[c] * pivot - factor * pr[c]) // prev
            rr[col] = 0
        prev = pivot
        rank += 1
        row += 1
    return rank, sign, pivot


def rank_exact(m) -> int:
    """Exact rank over the rationals of an integer matrix."""
    rows = _as_int_rows(m)
    if not rows:
        return 0
    rank, _, _ = _bareiss(rows)
    return rank


def det_exact(m) -> int:
    """Exact determinant of a square integer matrix (Bareiss final pivot)."""
    rows = _as_int_rows(m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    rank, sign, pivot = _bareiss(rows)
    return sign * pivot if rank == n else 0


def charpoly_exact(a) -> list[int]:
    """Characteristic polynomial det(xI - A), ascending coefficients.

    Faddeev-LeVerrier recursion; every division by the step index is exact
    for integer input.  The leading coefficient is always 1.
    """
    rows = _as_int_rows(a)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("characteristic polynomial needs a square matrix")
    coeffs = [1]  # descending: x^n, x^(n-1), ...
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]  # M_0 = I
    for k in range(1, n + 1):
        am = [[sum(rows[i][t] * m[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        trace = sum(am[i][i] for i in range(n))
        q, r = divmod(-trace, k)
        if r:
            raise ArithmeticError("Faddeev-LeVerrier trace not divisible; non-integer input?")
        coeffs.append(q)
        m = [[am[i][j] + (q if i == j else 0) for j in range(n)] for i in range(n)]
    return coeffs[::-1]


def _poly_normalize(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = a[:]
    while a and len(a) >= len(b):
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] -= factor * bc
        a.pop()  # leading term cancels exactly
        a = _poly_normalize(a)
    return a


def has_simple_spectrum_exact(a) -> bool:
    """True iff all eigenvalues of the integer symmetric matrix are distinct.

    Decided exactly: the spectrum is simple iff gcd(p, p') is constant for
    the characteristic polynomial p, computed by a Euclidean remainder
    sequence over rationals.
    """
    rows = _as_int_rows(a)
    _check_symmetric(rows)
    p = [Fraction(c) for c in charpoly_exact(rows)]
    q = _poly_normalize([Fraction(i * c) for i, c in enumerate(p)][1:])
    p = _poly_normalize(p)
    while q:
        p, q = q, _poly_mod(p, q)
    return len(p) == 1


def is_controllable_exact(a, b, cap: int | None = DEFAULT_EXACT_CAP) -> bool:
    """Kalman rank test, decided exactly: rank [b, Ab, ..., A^(n-1)b] == n.

    The zero vector is never controllable and short-circuits before any
    elimination.  Dimensions beyond `cap` raise :class:`DimensionCapError`.
    """
    rows = _as_int_rows(a)
    _check_symmetric(rows)
    vec = _as_int_vector(b)
    n = len(rows)
    if len(vec) != n:
        raise ValueError(f"dimension mismatch: A is {n}x{n}, b has {len(vec)}")
    if cap is not None and n > cap:
        raise DimensionCapError(f"n={n} exceeds exact cap {cap}; use the float PBH path")
    if all(x == 0 for x in vec):
        return False
    return rank_exact(kalman_matrix(rows, vec)) == n
