"""Independent reference implementations used only to cross-check the package.

Everything here works on plain lists of Fractions and deliberately avoids
importing qscaling, so a bug in the package cannot hide inside its own
oracle.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations


def leibniz_determinant(rows) -> Fraction:
    """Permutation-sum determinant; fine up to n = 6 or so."""
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        seen = [False] * n
        for i in range(n):
            if seen[i]:
                continue
            j = i
            length = 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
        term = Fraction(1)
        for i in range(n):
            term *= rows[i][perm[i]]
        total += sign * term
    return total


def two_by_two_determinant(rows) -> Fraction:
    (a, b), (c, d) = rows
    return a * d - b * c


def submatrix(rows, row_idx, col_idx):
    """Extract rows/columns by 0-based index lists."""
    return [[rows[i][j] for j in col_idx] for i in row_idx]


def brute_force_minor(rows, row_idx, col_idx) -> Fraction:
    if not row_idx:
        return Fraction(1)
    return leibniz_determinant(submatrix(rows, row_idx, col_idx))


def list_matmul(a, b):
    n = len(a)
    return [
        [sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)]
        for i in range(n)
    ]


def list_trace(rows) -> Fraction:
    return sum((rows[i][i] for i in range(len(rows))), Fraction(0))


def faddeev_leverrier(rows) -> list[Fraction]:
    """Principal-minor sums e_1..e_n via the classical matrix recurrence.

    With det(x*I - A) = x^n + c_{n-1} x^{n-1} + ... + c_0 produced by
    M_k = A*M_{k-1} + c_{n-k+1}*I and c_{n-k} = -trace(A*M_k)/k, the sums
    of order-k principal minors are e_k = (-1)^k * c_{n-k}.
    """
    n = len(rows)
    identity = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    m = [[Fraction(0)] * n for _ in range(n)]
    coeffs = {n: Fraction(1)}
    for k in range(1, n + 1):
        shift = coeffs[n - k + 1]
        m = list_matmul(rows, m)
        for i in range(n):
            m[i][i] += shift
        am = list_matmul(rows, m)
        coeffs[n - k] = -list_trace(am) / k
    return [(-1) ** k * coeffs[n - k] for k in range(1, n + 1)]
