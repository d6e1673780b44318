"""Small dense linear algebra over exact scalars.

Entries may be Fraction, GaussianRational or Jet; anything with field
operations works.  Gauss-Jordan pivots on entries that are invertible in
their ring (nonzero constant term for jets), which covers every use here:
SPD metrics, change-of-frame matrices, and their jet-valued analogues.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Sequence

from .scalars import Jet, is_exact_zero


def _invertible(x) -> bool:
    if isinstance(x, Jet):
        return not is_exact_zero(x.value())
    return not is_exact_zero(x)


def identity(n: int, one=Fraction(1), zero=Fraction(0)) -> List[list]:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> List[list]:
    return [list(col) for col in zip(*a)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[list]:
    n, k = len(a), len(b)
    m = len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in a:
        acc = row[0] * v[0]
        for x, y in zip(row[1:], v[1:]):
            acc = acc + x * y
        out.append(acc)
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(s, a):
    return [[s * x for x in row] for row in a]


def invert(a: Sequence[Sequence]) -> List[list]:
    """Gauss-Jordan inverse; raises on a ring-singular pivot column."""
    n = len(a)
    work = [list(row) for row in a]
    inv = identity(n)
    for col in range(n):
        pivot = next(
            (r for r in range(col, n) if _invertible(work[r][col])), None
        )
        if pivot is None:
            raise ZeroDivisionError("matrix not invertible over its ring")
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
        p = work[col][col]
        work[col] = [x / p for x in work[col]]
        inv[col] = [x / p for x in inv[col]]
        for r in range(n):
            if r == col:
                continue
            f = work[r][col]
            if is_exact_zero(f):
                continue
            work[r] = [x - f * y for x, y in zip(work[r], work[col])]
            inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def det(a: Sequence[Sequence]):
    """Determinant by elimination with ring-invertible pivots."""
    n = len(a)
    work = [list(row) for row in a]
    result = None
    sign = 1
    for col in range(n):
        pivot = next(
            (r for r in range(col, n) if _invertible(work[r][col])), None
        )
        if pivot is None:
            zero = work[col][col] * 0
            return zero
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            sign = -sign
        p = work[col][col]
        result = p if result is None else result * p
        for r in range(col + 1, n):
            f = work[r][col] / p
            if is_exact_zero(f):
                continue
            work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return result * sign if sign < 0 else result


def is_symmetric(a: Sequence[Sequence]) -> bool:
    n = len(a)
    return all(
        is_exact_zero(a[i][j] - a[j][i]) for i in range(n) for j in range(i + 1, n)
    )


def spd_minors_positive(a: Sequence[Sequence[Fraction]]) -> bool:
    """Sylvester criterion on the constant part: leading minors positive."""
    n = len(a)
    for k in range(1, n + 1):
        sub = [row[:k] for row in a[:k]]
        d = det(sub)
        d0 = d.value() if isinstance(d, Jet) else d
        if not d0 > 0:
            return False
    return True
