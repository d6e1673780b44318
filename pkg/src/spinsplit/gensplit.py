"""Split-signature spinor calculus on W + W*.

Spinors of Spin(n,n) are mixed-degree forms; we reuse `Multivector` over the
definite signature with the metric never entering except through a
generalised metric's frame.  The split inner product is
(x + xi, y + eta) = (xi(y) + eta(x))/2, and a split vector acts on forms by
(x + xi) . rho = -x _| rho + xi ^ rho with the metric-free contraction.

A generalised Riemannian structure is a pair (g, B) plus an oriented frame
that is exactly g-orthonormal; sampling constructs g = (E E^t)^{-1} from a
random rational E, which keeps every downstream quantity (lifts, the
star operator, vol_{V^-}) inside the rational tower.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from . import linalg
from .clifford import (
    Multivector,
    Signature,
    euclidean,
    exp_two_form,
    covector_substitution,
    hodge_star,
)
from .scalars import is_exact_zero
from .spinrep import SpinModule, SpinorDelta

FormSpinor = Multivector  # forms on W*, used metric-free


def form_spinor(n: int, terms=None) -> Multivector:
    return Multivector(euclidean(n), terms or {})


def form_parity(rho: Multivector) -> int | None:
    """0 for even forms, 1 for odd, None for mixed or zero."""
    ps = {m.bit_count() & 1 for m in rho.terms}
    return ps.pop() if len(ps) == 1 else None


class SplitVector:
    """x + xi in W + W*, components over any scalar tower."""

    __slots__ = ("n", "x", "xi")

    def __init__(self, x: Sequence, xi: Sequence):
        if len(x) != len(xi):
            raise ValueError("vector and covector parts disagree in dimension")
        self.n = len(x)
        self.x = list(x)
        self.xi = list(xi)

    def __add__(self, other: "SplitVector") -> "SplitVector":
        return SplitVector(
            [a + b for a, b in zip(self.x, other.x)],
            [a + b for a, b in zip(self.xi, other.xi)],
        )

    def __sub__(self, other: "SplitVector") -> "SplitVector":
        return SplitVector(
            [a - b for a, b in zip(self.x, other.x)],
            [a - b for a, b in zip(self.xi, other.xi)],
        )

    def scale(self, c) -> "SplitVector":
        return SplitVector([c * a for a in self.x], [c * a for a in self.xi])

    def __repr__(self):
        return f"SplitVector({self.x} + {self.xi})"


def split_pair(v: SplitVector, w: SplitVector):
    """(x + xi, y + eta) = (xi(y) + eta(x))/2."""
    acc = 0
    for a, b in zip(v.xi, w.x):
        acc = acc + a * b
    for a, b in zip(w.xi, v.x):
        acc = acc + a * b
    return acc * Fraction(1, 2)


def split_action(v: SplitVector, rho: Multivector) -> Multivector:
    """(x + xi) . rho = -x _| rho + xi ^ rho; squares to -(v,v)."""
    if v.n != rho.sig.n:
        raise ValueError("split vector and form live in different dimensions")
    sig = rho.sig
    xvec = Multivector(sig, {1 << i: c for i, c in enumerate(v.x) if not is_exact_zero(c)})
    xi = Multivector(sig, {1 << i: c for i, c in enumerate(v.xi) if not is_exact_zero(c)})
    return -xvec.evaluate_contract(rho) + xi.wedge(rho)


def mukai_pair(rho: Multivector, tau: Multivector):
    """<rho, tau> = top-degree coefficient of rho ^ hat(tau)."""
    if rho.sig.n != tau.sig.n:
        raise ValueError("mukai pairing needs equal dimensions")
    top = (1 << rho.sig.n) - 1
    return rho.wedge(tau.hat()).terms.get(top, 0)


def bfield_on_spinor(b: Multivector, rho: Multivector) -> Multivector:
    """e^B . rho = e^B ^ rho."""
    return exp_two_form(b).wedge(rho)


def bfield_on_vector(b: Multivector, v: SplitVector) -> SplitVector:
    """The so(n,n) exponential on W + W*: x fixed, xi shifted by (x _| B)/2."""
    sig = b.sig
    xvec = Multivector(sig, {1 << i: c for i, c in enumerate(v.x) if not is_exact_zero(c)})
    hook = xvec.evaluate_contract(b)
    shift = [hook.terms.get(1 << i, 0) for i in range(v.n)]
    return SplitVector(list(v.x), [a + Fraction(1, 2) * s for a, s in zip(v.xi, shift)])


def covering_consistency(b: Multivector, v: SplitVector):
    """pi0 of the spin-level e^B equals the so-level e^{2B}.

    Conjugating the split action of v by e^B must equal the action of
    e^{2B}(v); checked on the full blade basis.  Returns None when
    consistent, else the first falsifying basis mask.
    """
    n = b.sig.n
    moved = bfield_on_vector(b.scale(2), v)
    eb, ebinv = exp_two_form(b), exp_two_form(-b)
    for mask in range(1 << n):
        rho = Multivector(b.sig, {mask: Fraction(1)})
        lhs = eb.wedge(split_action(v, ebinv.wedge(rho)))
        rhs = split_action(moved, rho)
        if not (lhs - rhs).is_zero():
            return mask
    return None


class GenMetric:
    """Pair (g, B) with an exact, positively oriented, g-orthonormal frame.

    frame[k] holds the components of the k-th frame vector in the coordinate
    basis; g is recovered as (E E^t)^{-1} for E the matrix with those
    columns, which makes the orthonormality exact by construction.
    """

    def __init__(self, n: int, g: List[List[Fraction]], b: Multivector, frame: List[List[Fraction]]):
        self.n = n
        self.g = g
        self.B = b
        self.frame = frame  # list of column vectors
        if not linalg.is_symmetric(g):
            raise ValueError("metric must be symmetric")
        if not linalg.spd_minors_positive(g):
            raise ValueError("metric must be positive definite")
        if b.sig.n != n or not b.grades() <= {2}:
            raise ValueError("B must be a 2-form of matching dimension")
        ems = self._matrix()
        d = linalg.det(ems)
        if not d > 0:
            raise ValueError("frame must be positively oriented")
        gram = linalg.mat_mul(linalg.transpose(ems), linalg.mat_mul(g, ems))
        if any(
            not is_exact_zero(gram[i][j] - (1 if i == j else 0))
            for i in range(n)
            for j in range(n)
        ):
            raise ValueError("frame is not g-orthonormal")

    def _matrix(self) -> List[List[Fraction]]:
        """E with frame vectors as columns: E[i][k] = frame[k][i]."""
        return [[self.frame[k][i] for k in range(self.n)] for i in range(self.n)]

    @classmethod
    def straight(cls, n: int, b: Multivector | None = None) -> "GenMetric":
        ident = linalg.identity(n)
        bb = b if b is not None else Multivector(euclidean(n))
        return cls(n, ident, bb, [list(col) for col in ident])

    @classmethod
    def from_frame(cls, frame: List[List[Fraction]], b: Multivector | None = None) -> "GenMetric":
        n = len(frame)
        ems = [[Fraction(frame[k][i]) for k in range(n)] for i in range(n)]
        if linalg.det(ems) < 0:
            frame = [list(f) for f in frame]
            frame[0] = [-c for c in frame[0]]  # flip one vector to reorient
            ems = [[frame[k][i] for k in range(n)] for i in range(n)]
        g = linalg.invert(linalg.mat_mul(ems, linalg.transpose(ems)))
        bb = b if b is not None else Multivector(euclidean(n))
        return cls(n, g, bb, [list(f) for f in frame])

    # -- lifts ---------------------------------------------------------------

    def metric_covector(self, x: Sequence) -> list:
        return linalg.mat_vec(self.g, list(x))

    def lift(self, x: Sequence, sign: int) -> SplitVector:
        """x + (sign*g + B)(x) in V^+ or V^-."""
        gx = self.metric_covector(x)
        sig = euclidean(self.n)
        xvec = Multivector(sig, {1 << i: c for i, c in enumerate(x) if not is_exact_zero(c)})
        hook = xvec.evaluate_contract(self.B)
        bx = [hook.terms.get(1 << i, 0) for i in range(self.n)]
        return SplitVector(list(x), [sign * a + c for a, c in zip(gx, bx)])

    def lift_frame(self, k: int, sign: int) -> SplitVector:
        """Lift of the k-th frame vector, 1-based."""
        return self.lift(self.frame[k - 1], sign)

    def sqrt_det(self) -> Fraction:
        """sqrt(det g) = 1/|det E|, exact."""
        return Fraction(1) / abs(linalg.det(self._matrix()))

    def coframe(self) -> List[List[Fraction]]:
        """Rows are the coframe covectors d^k = g(d_k, .), i.e. E^{-1}."""
        cached = getattr(self, "_coframe", None)
        if cached is None:
            cached = linalg.invert(self._matrix())
            self._coframe = cached
        return cached

    def frame_coordinates(self, x: Sequence) -> list:
        """Components of a coordinate vector in the frame basis."""
        return linalg.mat_vec(self.coframe(), list(x))

    def is_straight(self) -> bool:
        n = self.n
        return all(
            is_exact_zero(self.frame[k][i] - (1 if i == k else 0))
            for k in range(n)
            for i in range(n)
        )


def lift(x: Sequence, gm: "GenMetric", sign: int) -> SplitVector:
    """Free-function form of GenMetric.lift."""
    return gm.lift(x, sign)


def hodge_star_metric(rho: Multivector, gm: GenMetric) -> Multivector:
    """Star of a form for the metric g, through the orthonormal coframe."""
    n = gm.n
    ems = gm._matrix()
    to_frame = covector_substitution(rho, ems)
    starred = hodge_star(to_frame)
    return covector_substitution(starred, linalg.invert(ems))


def g_tilde(rho: Multivector, gm: GenMetric) -> Multivector:
    """Clifford action of vol_{V^-} = v1^- . ... . vn^- on a form spinor."""
    out = rho
    for k in range(gm.n, 0, -1):
        out = split_action(gm.lift_frame(k, -1), out)
    return out


def g_tilde_formula(rho: Multivector, gm: GenMetric) -> Multivector:
    """The star-operator route to vol_{V^-}; must agree with g_tilde.

    Even n: e^B ^ star_g(hat(e^{-B} ^ rho)).  Odd n carries an extra degree
    involution and a global minus sign (the minus is forced already by n=1,
    rho=1: vol_{D^-} . 1 = -e^1 while star(hat(tilde(1))) = +e^1).
    """
    unb = bfield_on_spinor(-gm.B, rho)
    if gm.n % 2 == 0:
        core = hodge_star_metric(unb.hat(), gm)
    else:
        core = -hodge_star_metric(unb.tilde().hat(), gm)
    return bfield_on_spinor(gm.B, core)


# -- bispinors ----------------------------------------------------------------


def bispinor_form(
    module: SpinModule,
    psi_l: SpinorDelta,
    psi_r: SpinorDelta,
    gm: GenMetric | None = None,
    parity: int | None = None,
) -> Multivector:
    """[psi_l (x) psi_r]_B, optionally projected on a parity for odd n.

    The Fierz form comes out in the abstract orthonormal basis; the frame
    of gm re-expresses it in coordinate covectors before the B-twist, so
    Clifford arguments to the spin module must be given frame components.
    """
    f = module.fierz(psi_l, psi_r)
    if parity is not None:
        f = f.even_part() if parity == 0 else f.odd_part()
    if gm is None:
        return f
    if not gm.is_straight():
        f = covector_substitution(f, gm.coframe())
    if gm.B.is_zero():
        return f
    return bfield_on_spinor(gm.B, f)


def bispinor_volume_factor(module: SpinModule, chirality: int = 1, parity: int = 0):
    """The scalar by which vol_{V^-} acts on a bispinor form.

    Even n = 2m: +/-(-1)^{m(m-1)/2} i^m depending on the chirality of the
    right spinor.  Odd n = 2m+1: the action lands on the degree involution
    of the form, and the two ambient-parity copies of the module carry
    opposite factors (-1)^{parity+1} (-1)^{m(m-1)/2} i^{m+1}; bispinors of
    mixed ambient parity vanish identically, so the common parity of the
    pair is what selects the sign.
    """
    from .scalars import I_GAUSS

    m = module.m
    sign = -1 if (m * (m - 1) // 2) & 1 else 1
    if module.is_even:
        return I_GAUSS**m * (sign * chirality)
    flip = 1 if parity else -1
    return I_GAUSS ** (m + 1) * (sign * flip)


def volume_factor_check(
    module: SpinModule,
    psi_l: SpinorDelta,
    psi_r: SpinorDelta,
    gm: GenMetric,
) -> bool:
    """vol_{V^-} . [psi_l (x) psi_r]_B equals the stated multiple."""
    rho = bispinor_form(module, psi_l, psi_r, gm)
    lhs = g_tilde(rho, gm)
    if module.is_even:
        ch = module.chirality_of(psi_r)
        rhs = rho.scale(bispinor_volume_factor(module, ch))
    else:
        par = psi_r.parity()
        if par is None:
            raise ValueError("odd case needs an ambient-parity-pure right spinor")
        rhs = rho.tilde().scale(bispinor_volume_factor(module, parity=par))
    return (lhs - rhs).is_zero()
