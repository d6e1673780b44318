"""Differential forms with jet coefficients on one chart.

A jet form is a `Multivector` over the definite signature whose blade
coefficients are `Jet`s in the chart coordinates; chart dimension and algebra
dimension coincide, and the base point is always the origin.  The same chart
dictionary also hosts the point-level cocycle data used to glue charts: GL
transitions block-lifted to W + W* composed with shears by difference
potentials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import random

from .. import linalg, rand
from ..clifford import Multivector, euclidean, exp_two_form
from ..scalars import Jet, is_exact_zero

JetForm = Multivector  # blade bitmask -> Jet


# -- coefficient plumbing ----------------------------------------------------


def constant_form(form: Multivector, order: int) -> JetForm:
    """Promote a plain-coefficient form to constant jets of the given order."""
    n = form.sig.n
    return Multivector(
        form.sig, {m: Jet.constant(c, n, order) for m, c in form.terms.items()}
    )


def form_value(rho: JetForm) -> Multivector:
    """Value at the base point, as a plain-coefficient form."""
    return Multivector(rho.sig, {m: c.value() for m, c in rho.terms.items()})


def form_order(rho: JetForm) -> int | None:
    """Effective jet order; None for the zero form, error on mixed orders."""
    orders = {c.order for c in rho.terms.values()}
    if not orders:
        return None
    if len(orders) > 1:
        raise ValueError("mixed jet orders across coefficients")
    return orders.pop()


def form_partial(rho: JetForm, i: int) -> JetForm:
    """Coefficientwise d/dx_i; drops the effective order by one."""
    return Multivector(rho.sig, {m: c.partial(i) for m, c in rho.terms.items()})


def form_truncate(rho: JetForm, order: int) -> JetForm:
    return Multivector(rho.sig, {m: c.truncate(order) for m, c in rho.terms.items()})


# -- differentials -----------------------------------------------------------


def exterior_d(rho: JetForm) -> JetForm:
    """Coordinate exterior derivative sum_i e^i ^ (d rho / dx_i)."""
    out = Multivector(rho.sig)
    for i in range(rho.sig.n):
        der = form_partial(rho, i)
        if der.is_zero():
            continue
        out = out + Multivector(rho.sig, {1 << i: 1}).wedge(der)
    return out


def twisted_d(rho: JetForm, h: JetForm) -> JetForm:
    """Flux-twisted differential d + h^; nilpotent exactly when dh = 0."""
    if not h.grades() <= {3}:
        raise ValueError("twist requires a 3-form")
    return exterior_d(rho) + h.wedge(rho)


@dataclass(frozen=True)
class NuTransport:
    """Both routes around the density-transport square."""

    d_nu: JetForm
    transported: JetForm  # dictionary applied after the plain derivative
    twisted: JetForm  # dB-twisted derivative of the dictionary image

    def agrees(self) -> bool:
        return (self.transported - self.twisted).is_zero()


def nu_transport(rho: JetForm, lam: Jet, b: JetForm) -> NuTransport:
    """Density-trivialised derivative and its twisted-side counterpart.

    The dictionary sends rho to e^{-b} ^ (lam . rho).  Its untwisted
    derivative lam^{-1} d(lam . rho), pushed back through the dictionary,
    must match the dB-twisted derivative of the image coefficient for
    coefficient; `agrees()` asserts that square commutes at order.
    """
    if not lam.value() > 0:
        raise ValueError("density scale must be positive at the base point")
    if not b.grades() <= {2}:
        raise ValueError("potential must be a 2-form")
    scaled = rho.scale(lam)
    d_nu = exterior_d(scaled).scale(lam.reciprocal())
    emb = exp_two_form(b.scale(-1))
    transported = emb.wedge(d_nu.scale(lam))
    twisted = twisted_d(emb.wedge(scaled), exterior_d(b))
    return NuTransport(d_nu, transported, twisted)


# -- chart gluing at a point -------------------------------------------------


def two_form_matrix(b: Multivector, n: int) -> List[List[Fraction]]:
    """Antisymmetric component matrix of a plain 2-form."""
    if not b.grades() <= {2}:
        raise ValueError("expected a 2-form")
    out = [[Fraction(0)] * n for _ in range(n)]
    for mask, c in b.terms.items():
        i = mask.bit_length() - 1
        j = (mask ^ (1 << i)).bit_length() - 1
        out[j][i] = c
        out[i][j] = -c
    return out


def matrix_two_form(mm: Sequence[Sequence], n: int) -> Multivector:
    terms = {}
    for i in range(n):
        for j in range(i + 1, n):
            if not is_exact_zero(mm[i][j]):
                terms[(1 << i) | (1 << j)] = mm[i][j]
    return Multivector(euclidean(n), terms)


def split_gl(s: Sequence[Sequence]) -> List[List[Fraction]]:
    """Block-diagonal lift (s, s^{-T}) acting on column vectors (x, xi)."""
    n = len(s)
    sinv_t = linalg.transpose(linalg.invert(s))
    out = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            out[i][j] = Fraction(s[i][j])
            out[n + i][n + j] = sinv_t[i][j]
    return out


def split_shear(mm: Sequence[Sequence]) -> List[List[Fraction]]:
    """Shear (x, xi) -> (x, xi + x _| beta) for beta with matrix mm."""
    n = len(mm)
    out = [[Fraction(1) if i == j else Fraction(0) for j in range(2 * n)] for i in range(2 * n)]
    for i in range(n):
        for j in range(n):
            out[n + j][i] = Fraction(mm[i][j])
    return out


def sigma_matrix(s: Sequence[Sequence], beta_mm: Sequence[Sequence]) -> List[List[Fraction]]:
    """Transition on W + W*: GL block after the shear by the difference potential."""
    return linalg.mat_mul(split_gl(s), split_shear(beta_mm))


def _pull_two_form(mm: Sequence[Sequence], s: Sequence[Sequence]) -> List[List[Fraction]]:
    """Components of the same 2-form in the source frame of s (v_a = s v_b)."""
    return linalg.mat_mul(linalg.transpose(s), linalg.mat_mul(mm, s))


@dataclass(frozen=True)
class CoverDatum:
    """Three-chart gluing data at one shared point.

    `s[(a, b)]` carries chart-b vector components to chart a; `potentials[a]`
    is the 2-form potential of chart a in its own frame; `beta[(a, b)]` is the
    difference potential of the pair expressed in chart b's frame.
    """

    n: int
    s: Dict[Tuple[int, int], List[List[Fraction]]]
    potentials: Dict[int, Multivector]
    beta: Dict[Tuple[int, int], Multivector]

    def expected_beta(self, a: int, b: int) -> List[List[Fraction]]:
        ma = _pull_two_form(two_form_matrix(self.potentials[a], self.n), self.s[(a, b)])
        mb = two_form_matrix(self.potentials[b], self.n)
        return [[ma[i][j] - mb[i][j] for j in range(self.n)] for i in range(self.n)]


def _mat_eq(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    return all(
        is_exact_zero(a[i][j] - b[i][j]) for i in range(len(a)) for j in range(len(a))
    )


def cocycle_check(datum: CoverDatum) -> bool:
    """Verify the shears-and-GL transitions compose as a cocycle.

    Inconsistent difference potentials are flagged before any composition;
    the check itself multiplies the 2n x 2n transition matrices around every
    ordered triple and inverse pair.
    """
    n = datum.n
    for (a, b), beta in datum.beta.items():
        if not _mat_eq(two_form_matrix(beta, n), datum.expected_beta(a, b)):
            raise ValueError(f"difference potential ({a},{b}) disagrees with the chart potentials")
    sig = {}
    for (a, b), s in datum.s.items():
        sig[(a, b)] = sigma_matrix(s, two_form_matrix(datum.beta[(a, b)], n))
    ident = linalg.identity(2 * n)
    for a, b in sig:
        if not _mat_eq(linalg.mat_mul(sig[(a, b)], sig[(b, a)]), ident):
            return False
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        if ((a, b) in sig) and ((b, c) in sig) and ((a, c) in sig):
            if not _mat_eq(linalg.mat_mul(sig[(a, b)], sig[(b, c)]), sig[(a, c)]):
                return False
    return True


def _oriented_matrix(n: int, rng: random.Random) -> List[List[Fraction]]:
    s = rand.invertible_matrix(n, rng)
    if linalg.det(s) < 0:
        s[0] = [-c for c in s[0]]
    return s


def random_cover_datum(n: int, rng: random.Random) -> CoverDatum:
    """Random rational three-chart datum, consistent by construction."""
    s01 = _oriented_matrix(n, rng)
    s12 = _oriented_matrix(n, rng)
    s: Dict[Tuple[int, int], List[List[Fraction]]] = {
        (0, 1): s01,
        (1, 2): s12,
        (0, 2): linalg.mat_mul(s01, s12),
    }
    for (a, b) in list(s):
        s[(b, a)] = linalg.invert(s[(a, b)])
    potentials = {a: rand.two_form(n, rng) for a in range(3)}
    datum = CoverDatum(n, s, potentials, {})
    beta = {
        pair: matrix_two_form(datum.expected_beta(*pair), n) for pair in s
    }
    return CoverDatum(n, s, potentials, beta)
