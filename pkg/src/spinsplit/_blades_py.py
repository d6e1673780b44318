"""Pure Python blade kernel.

Blades are bitmasks: bit i stands for the basis vector e_{i+1}.  A
multivector is a dict mapping masks to coefficients; coefficients are opaque
ring elements (Fraction, GaussianRational, float, complex, Jet).

Sign bookkeeping follows the convention X.Y + Y.X = -2 g(X, Y), so a basis
vector squares to -g(e_i, e_i): -1 on the first p indices of Cl(p, q) and +1
on the remaining q.  Metric contraction carries g(e_i, e_i) itself.

The compiled twin `_blades_c` mirrors this module function for function; keep
the two in sync.
"""

from __future__ import annotations


def reorder_sign(a: int, b: int) -> int:
    """Sign from sorting the concatenation of two increasing index lists.

    Counts pairs (i in a, j in b) with j < i; each is one transposition.
    """
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


def gp(A: dict, B: dict, p: int) -> dict:
    """Geometric product of blade dicts in Cl(p, q)."""
    low = (1 << p) - 1
    out: dict = {}
    for ma, ca in A.items():
        for mb, cb in B.items():
            s = reorder_sign(ma, mb)
            common = ma & mb
            if common and (common & low).bit_count() & 1:
                s = -s
            m = ma ^ mb
            c = ca * cb
            acc = out.get(m)
            if acc is None:
                out[m] = c if s > 0 else -c
            else:
                out[m] = acc + c if s > 0 else acc - c
    return out


def wedge(A: dict, B: dict) -> dict:
    """Exterior product of blade dicts; metric-free."""
    out: dict = {}
    for ma, ca in A.items():
        for mb, cb in B.items():
            if ma & mb:
                continue
            s = reorder_sign(ma, mb)
            m = ma | mb
            c = ca * cb
            acc = out.get(m)
            if acc is None:
                out[m] = c if s > 0 else -c
            else:
                out[m] = acc + c if s > 0 else acc - c
    return out


def contract(A: dict, B: dict, p: int, metric: bool) -> dict:
    """Left interior product A _| B, the adjoint of (A wedge .).

    With metric=True each contracted index i carries g(e_i, e_i) (+1 below p,
    -1 from p up); metric=False is the dual-pairing evaluation used on the
    split-signature side, where no metric factors appear.
    """
    low = (1 << p) - 1
    out: dict = {}
    for ma, ca in A.items():
        for mb, cb in B.items():
            if ma & ~mb:
                continue
            m = mb ^ ma
            s = reorder_sign(ma, m)
            if metric and (ma & ~low).bit_count() & 1:
                s = -s
            c = ca * cb
            acc = out.get(m)
            if acc is None:
                out[m] = c if s > 0 else -c
            else:
                out[m] = acc + c if s > 0 else acc - c
    return out
