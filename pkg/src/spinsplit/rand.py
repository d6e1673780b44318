"""Deterministic random generators for trials.

Every suite seeds `random.Random` with a string derived from (seed, suite,
check, trial); CPython hashes str seeds via SHA-512 independently of
PYTHONHASHSEED, so draws reproduce across processes.

The `tower` argument selects coefficients: "exact" draws Fractions and
GaussianRationals, "float" draws floats (complex where the exact tower would
use GaussianRational).
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List

from .clifford import Multivector, Signature
from .scalars import GaussianRational, Jet
from .spinrep import SpinorDelta


def trial_rng(seed: int, *path) -> random.Random:
    return random.Random(":".join([str(seed), *map(str, path)]))


def fraction(rng: random.Random, num: int = 6, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def nonzero_fraction(rng: random.Random, num: int = 6, den: int = 4) -> Fraction:
    while True:
        f = fraction(rng, num, den)
        if f:
            return f


def scalar(rng: random.Random, tower: str = "exact", complex_ok: bool = False):
    if tower == "float":
        re = rng.uniform(-2.0, 2.0)
        if complex_ok:
            return complex(re, rng.uniform(-2.0, 2.0))
        return re
    if complex_ok:
        return GaussianRational(fraction(rng), fraction(rng))
    return fraction(rng)


def multivector(
    sig: Signature,
    rng: random.Random,
    tower: str = "exact",
    max_terms: int = 6,
    grades=None,
    complex_ok: bool = False,
) -> Multivector:
    terms = {}
    masks = range(1 << sig.n)
    if grades is not None:
        masks = [m for m in masks if m.bit_count() in grades]
        if not masks:
            return Multivector(sig)
    for _ in range(min(max_terms, 1 << sig.n)):
        m = rng.choice(masks) if grades is not None else rng.randrange(1 << sig.n)
        terms[m] = scalar(rng, tower, complex_ok)
    return Multivector(sig, terms)


def vector(sig: Signature, rng: random.Random, tower: str = "exact") -> Multivector:
    return Multivector.from_vector(
        sig, [scalar(rng, tower) for _ in range(sig.n)]
    )


def components(n: int, rng: random.Random, tower: str = "exact") -> List:
    return [scalar(rng, tower) for _ in range(n)]


def two_form(n: int, rng: random.Random, tower: str = "exact", max_terms: int = 4) -> Multivector:
    return multivector(Signature(n, 0), rng, tower, max_terms, grades={2})


def three_form(n: int, rng: random.Random, tower: str = "exact", max_terms: int = 4) -> Multivector:
    return multivector(Signature(n, 0), rng, tower, max_terms, grades={3})


def spinor(
    m: int,
    rng: random.Random,
    tower: str = "exact",
    parity=None,
    max_terms: int = 4,
) -> SpinorDelta:
    coeffs = {}
    masks = [
        s for s in range(1 << m) if parity is None or s.bit_count() & 1 == parity
    ]
    for _ in range(min(max_terms, len(masks))):
        coeffs[rng.choice(masks)] = scalar(rng, tower, complex_ok=True)
    return SpinorDelta(m, coeffs)


def jet(
    num_vars: int,
    order: int,
    rng: random.Random,
    tower: str = "exact",
    max_terms: int = 6,
    complex_ok: bool = False,
    min_degree: int = 0,
) -> Jet:
    idxs = []

    def fill(prefix, remaining, budget):
        if remaining == 0:
            if sum(prefix) >= min_degree:
                idxs.append(tuple(prefix))
            return
        for e in range(budget + 1):
            fill(prefix + [e], remaining - 1, budget - e)

    fill([], num_vars, order)
    coeffs = {}
    for _ in range(min(max_terms, len(idxs))):
        coeffs[rng.choice(idxs)] = scalar(rng, tower, complex_ok)
    return Jet(num_vars, order, coeffs)


def invertible_matrix(n: int, rng: random.Random, bound: int = 3) -> List[List[Fraction]]:
    """Random rational matrix with nonzero determinant (exact)."""
    while True:
        rows = [
            [Fraction(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)
        ]
        if _det(rows):
            return rows


def _det(rows) -> Fraction:
    n = len(rows)
    m = [row[:] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = Fraction(1) / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det
