"""Exact determinants over commutative rings.

Two independent backends:

* :func:`det_bareiss` -- fraction-free elimination; needs an exact division
  in the ring (integers, rationals, or :func:`~bocrs.algebra.poly_exact_div`).
* :func:`det_cofactor` -- Laplace expansion along columns with the minors
  memoized by row subset.  Only ring addition and multiplication are used,
  and zero entries are skipped, so banded matrices stay cheap.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, Sequence

from .algebra import ExactDivisionFailure, SparsePoly, poly_exact_div


def exact_div(a, b):
    """``a / b`` for ints, Fractions or SparsePolys, failing loudly if inexact."""
    if isinstance(a, SparsePoly):
        if isinstance(b, int):
            b = SparsePoly.const(a.vars, b)
        return poly_exact_div(a, b)
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ExactDivisionFailure(f"{a} is not divisible by {b}")
        return q
    return Fraction(a) / Fraction(b)


def det_bareiss(matrix: Sequence[Sequence], div: Callable = exact_div):
    n = len(matrix)
    if n == 0:
        return 1
    a = [list(row) for row in matrix]
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    zero = a[0][0] * 0
    sign = 1
    prev = None
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return zero
        pivot = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                v = ri[j] * pivot - aik * rk[j] if aik else ri[j] * pivot
                ri[j] = v if prev is None else div(v, prev)
            ri[k] = zero
        prev = pivot
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def det_cofactor(matrix: Sequence[Sequence]):
    n = len(matrix)
    if n == 0:
        return 1
    a = [list(row) for row in matrix]
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    zero = a[0][0] * 0
    memo: dict[int, object] = {}

    def minor(mask: int):
        # rows in ``mask`` against the last popcount(mask) columns
        hit = memo.get(mask)
        if hit is not None:
            return hit
        rows = [r for r in range(n) if mask >> r & 1]
        col = n - len(rows)
        if len(rows) == 1:
            val = a[rows[0]][col]
        else:
            val = zero
            for idx, r in enumerate(rows):
                entry = a[r][col]
                if not entry:
                    continue
                sub = minor(mask & ~(1 << r))
                if not sub:
                    continue
                term = entry * sub
                val = val - term if idx & 1 else val + term
        memo[mask] = val
        return val

    return minor((1 << n) - 1)


def _int_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ExactDivisionFailure(f"{a} is not divisible by {b}")
    return q


def det_rational(matrix: Sequence[Sequence]) -> Fraction:
    """Determinant of a rational matrix via integer Bareiss on a scaled copy."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    rows = [[Fraction(v) for v in row] for row in matrix]
    den = 1
    for row in rows:
        for v in row:
            d = v.denominator
            if d != 1:
                den = den * d // gcd(den, d)
    scaled = [[v.numerator * (den // v.denominator) for v in row] for row in rows]
    return Fraction(det_bareiss(scaled, _int_div), den ** n)
