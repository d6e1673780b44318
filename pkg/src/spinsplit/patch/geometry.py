"""Levi-Civita data and curvature from a jet metric.

All tensors are stored as nested lists of `Jet`s in coordinate indices unless
a name says frame; the orthonormal frame comes from Gram-Schmidt over the
coordinate vectors in index order, so frames are deterministic and, whenever
g(0) is the identity (or any rational perfect-square Gram data), exactly
rational.  Derivatives drop the trusted jet order by one each time; curvature
therefore needs order >= 2.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence

from .. import linalg
from ..clifford import Multivector, covector_substitution, euclidean, hodge_star
from ..scalars import Jet, is_exact_zero
from .forms import JetForm, exterior_d, form_partial


class JetMetric:
    """Symmetric jet matrix, positive definite at the base point."""

    __slots__ = ("n", "rows", "order")

    def __init__(self, rows: Sequence[Sequence[Jet]]):
        self.n = len(rows)
        self.rows = [list(r) for r in rows]
        orders = set()
        for i, row in enumerate(self.rows):
            if len(row) != self.n:
                raise ValueError("metric rows must be square")
            for j, entry in enumerate(row):
                if not isinstance(entry, Jet) or entry.num_vars != self.n:
                    raise ValueError("metric entries must be jets in the chart coordinates")
                orders.add(entry.order)
                if j < i and not entry == self.rows[j][i]:
                    raise ValueError("metric must be symmetric")
        if len(orders) != 1:
            raise ValueError("metric entries must share one jet order")
        self.order = orders.pop()
        if not linalg.spd_minors_positive(self.value()):
            raise ValueError("metric value at the base point is not positive definite")

    @classmethod
    def flat(cls, n: int, order: int) -> "JetMetric":
        one = Jet.constant(Fraction(1), n, order)
        zero = Jet.zero(n, order)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    def value(self) -> List[List[Fraction]]:
        return [[c.value() for c in row] for row in self.rows]

    def inverse(self) -> List[List[Jet]]:
        return linalg.invert(self.rows)


def christoffels(metric: JetMetric) -> List[List[List[Jet]]]:
    """Gamma[k][i][j] of the Levi-Civita connection; order drops by one."""
    n = metric.n
    g = metric.rows
    ginv = metric.inverse()
    dg = [[[g[i][j].partial(k) for j in range(n)] for i in range(n)] for k in range(n)]
    half = Fraction(1, 2)
    out = []
    for k in range(n):
        plane = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = Jet.zero(n, metric.order - 1)
                for l in range(n):
                    acc = acc + ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j])
                row.append(acc * half)
            plane.append(row)
        out.append(plane)
    return out


def three_form_component(h: JetForm, i: int, j: int, k: int):
    """Signed coefficient H_{ijk} of a coordinate 3-form, 0-based indices."""
    if i == j or j == k or i == k:
        return 0
    order = [i, j, k]
    sign = 1
    # three entries: sort by bubble pass, counting swaps
    for a in range(2):
        for b in range(2 - a):
            if order[b] > order[b + 1]:
                order[b], order[b + 1] = order[b + 1], order[b]
                sign = -sign
    mask = (1 << order[0]) | (1 << order[1]) | (1 << order[2])
    c = h.terms.get(mask)
    if c is None:
        return 0
    return c * sign


def christoffels_with_torsion(metric: JetMetric, h: JetForm) -> List[List[List[Jet]]]:
    """Connection coefficients of the metric connection with skew torsion h.

    The vector rule adds half the metric dual of h(X, Y, .); the matching
    quarter factor on spinors is fixed by the frame-sum cross-checks.
    """
    n = metric.n
    gamma = christoffels(metric)
    ginv = metric.inverse()
    half = Fraction(1, 2)
    out = []
    for k in range(n):
        plane = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = gamma[k][i][j]
                for l in range(n):
                    hij = three_form_component(h, i, j, l)
                    if not is_exact_zero(hij):
                        acc = acc + ginv[l][k] * hij * half
                row.append(acc)
            plane.append(row)
        out.append(plane)
    return out


def riemann_from_connection(gamma: List[List[List[Jet]]]) -> List[List[List[List[Jet]]]]:
    """R[l][k][i][j] for R(d_i, d_j)d_k = R^l_{kij} d_l; any connection."""
    n = len(gamma)
    out = []
    for l in range(n):
        bl = []
        for k in range(n):
            plane = []
            for i in range(n):
                row = []
                for j in range(n):
                    acc = gamma[l][j][k].partial(i) - gamma[l][i][k].partial(j)
                    for p in range(n):
                        acc = acc + gamma[l][i][p] * gamma[p][j][k]
                        acc = acc - gamma[l][j][p] * gamma[p][i][k]
                    row.append(acc)
                plane.append(row)
            bl.append(plane)
        out.append(bl)
    return out


def riemann(metric: JetMetric) -> List[List[List[List[Jet]]]]:
    return riemann_from_connection(christoffels(metric))


def ricci_from_riemann(riem: List[List[List[List[Jet]]]]) -> List[List[Jet]]:
    """Ric[j][k] = sum_i R^i_{kij}: trace on the first plane slot."""
    n = len(riem)
    out = []
    for j in range(n):
        row = []
        for k in range(n):
            acc = riem[0][k][0][j]
            for i in range(1, n):
                acc = acc + riem[i][k][i][j]
            row.append(acc)
        out.append(row)
    return out


def ricci(metric: JetMetric) -> List[List[Jet]]:
    return ricci_from_riemann(riemann(metric))


def scalar_curvature(metric: JetMetric) -> Jet:
    ric = ricci(metric)
    ginv = metric.inverse()
    n = metric.n
    acc = Jet.zero(n, metric.order - 2)
    for j in range(n):
        for k in range(n):
            acc = acc + ginv[j][k] * ric[j][k]
    return acc


class PatchGeometry:
    """Metric with its derived frame data, computed once and cached."""

    def __init__(self, metric: JetMetric):
        self.metric = metric
        self.n = metric.n
        self.order = metric.order

    def _inner(self, u: Sequence[Jet], v: Sequence[Jet]) -> Jet:
        acc = Jet.zero(self.n, self.order)
        for i in range(self.n):
            if is_exact_zero(u[i]):
                continue
            for j in range(self.n):
                acc = acc + u[i] * v[j] * self.metric.rows[i][j]
        return acc

    @cached_property
    def ginv(self) -> List[List[Jet]]:
        return self.metric.inverse()

    @cached_property
    def gamma(self) -> List[List[List[Jet]]]:
        return christoffels(self.metric)

    @cached_property
    def frame(self) -> List[List[Jet]]:
        """frame[a][i]: coordinate components of the a-th orthonormal vector."""
        n = self.n
        rows: List[List[Jet]] = []
        for a in range(n):
            u = [
                Jet.constant(Fraction(1), n, self.order) if i == a else Jet.zero(n, self.order)
                for i in range(n)
            ]
            for b in range(a):
                c = self._inner(u, rows[b])
                u = [ui - c * vb for ui, vb in zip(u, rows[b])]
            inv_len = self._inner(u, u).sqrt().reciprocal()
            rows.append([ui * inv_len for ui in u])
        return rows

    @cached_property
    def coframe(self) -> List[List[Jet]]:
        """coframe[a][i]: the dual covectors, rows of the inverse frame matrix."""
        return linalg.transpose(linalg.invert(self.frame))

    def frame_partial(self, f: Jet, a: int) -> Jet:
        """Directional derivative of a jet along the a-th frame vector."""
        acc = None
        for p in range(self.n):
            comp = self.frame[a][p]
            if is_exact_zero(comp):
                continue
            term = comp * f.partial(p)
            acc = term if acc is None else acc + term
        if acc is None:
            raise ValueError("frame row is zero")
        return acc

    @cached_property
    def omega(self) -> List[List[List[Jet]]]:
        """omega[a][i][j] = g(nabla_{frame a} frame i, frame j); skew in (i, j)."""
        n = self.n
        g = self.metric.rows
        out = []
        for a in range(n):
            plane = []
            for i in range(n):
                nabla = []
                for k in range(n):
                    acc = self.frame_partial(self.frame[i][k], a)
                    for p in range(n):
                        for q in range(n):
                            gpq = self.gamma[k][p][q]
                            if is_exact_zero(gpq):
                                continue
                            acc = acc + self.frame[a][p] * self.frame[i][q] * gpq
                    nabla.append(acc)
                row = []
                for j in range(n):
                    acc = Jet.zero(n, self.order - 1)
                    for k in range(n):
                        for l in range(n):
                            acc = acc + nabla[k] * g[k][l] * self.frame[j][l]
                    row.append(acc)
                plane.append(row)
            out.append(plane)
        return out

    # -- frame/coordinate moves for forms ------------------------------------

    def to_frame(self, rho: JetForm) -> JetForm:
        """Rewrite a coordinate-component form in orthonormal frame components."""
        return covector_substitution(rho, linalg.transpose(self.frame))

    def from_frame(self, rho_hat: JetForm) -> JetForm:
        return covector_substitution(rho_hat, self.coframe)

    def form_frame_partial(self, rho_hat: JetForm, a: int) -> JetForm:
        return Multivector(
            rho_hat.sig, {m: self.frame_partial(c, a) for m, c in rho_hat.terms.items()}
        )

    def form_covariant(self, rho_hat: JetForm, a: int) -> JetForm:
        """Covariant derivative along frame vector a, in frame components."""
        out = self.form_frame_partial(rho_hat, a)
        sig = rho_hat.sig
        for i in range(self.n):
            row = Multivector(
                sig,
                {
                    1 << k: self.omega[a][i][k]
                    for k in range(self.n)
                    if not is_exact_zero(self.omega[a][i][k])
                },
            )
            if row.is_zero():
                continue
            hooked = Multivector(sig, {1 << i: 1}).evaluate_contract(rho_hat)
            if hooked.is_zero():
                continue
            out = out + row.wedge(hooked)
        return out


def codifferential(rho: JetForm, geom: PatchGeometry) -> JetForm:
    """Formal adjoint of d via the frame sum -sum_a e_a _| nabla_a."""
    rho_hat = geom.to_frame(rho)
    sig = rho.sig
    out = Multivector(sig)
    for a in range(geom.n):
        ea = Multivector(sig, {1 << a: 1})
        out = out + ea.evaluate_contract(geom.form_covariant(rho_hat, a))
    return geom.from_frame(out.scale(-1))


def hodge_star_jet(rho: JetForm, geom: PatchGeometry) -> JetForm:
    """Metric star through the orthonormal frame; orientation of the frame."""
    return geom.from_frame(hodge_star(geom.to_frame(rho)))


def codifferential_routes(rho: JetForm, geom: PatchGeometry) -> Dict[str, Optional[JetForm]]:
    """Frame-sum route always; the -star d star route on even-dimensional charts.

    Odd n is flagged by a None entry: the uniform -star d star sign rule is
    an even-dimensional statement.
    """
    out: Dict[str, Optional[JetForm]] = {"frame": codifferential(rho, geom)}
    if geom.n % 2 == 0:
        out["hodge"] = hodge_star_jet(
            exterior_d(hodge_star_jet(rho, geom)), geom
        ).scale(-1)
    else:
        out["hodge"] = None
    return out


# -- flux contractions (orthonormal frame components) -------------------------


def flux_norm_sq(h_hat: JetForm, order: int = 0) -> Jet:
    """Sum over i<j<k of squared frame components; order hints the zero case."""
    acc = None
    for c in h_hat.terms.values():
        term = c * c
        acc = term if acc is None else acc + term
    if acc is None:
        return Jet.zero(h_hat.sig.n, order)
    return acc


def flux_sigma(h_hat: JetForm) -> JetForm:
    """Half the frame sum of (e_k _| h)^(e_k _| h); a 4-form."""
    sig = h_hat.sig
    out = Multivector(sig)
    for k in range(sig.n):
        hooked = Multivector(sig, {1 << k: 1}).evaluate_contract(h_hat)
        out = out + hooked.wedge(hooked)
    return out.scale(Fraction(1, 2))


def flux_gram(h_hat: JetForm, order: int = 0) -> List[List[Jet]]:
    """Frame matrix of the 2-form inner products of e_a _| h with e_b _| h."""
    n = h_hat.sig.n
    hooks = [Multivector(h_hat.sig, {1 << a: 1}).evaluate_contract(h_hat) for a in range(n)]
    out = []
    for a in range(n):
        row = []
        for b in range(n):
            acc = None
            for mask, ca in hooks[a].terms.items():
                cb = hooks[b].terms.get(mask)
                if cb is None:
                    continue
                term = ca * cb
                acc = term if acc is None else acc + term
            row.append(Jet.zero(n, order) if acc is None else acc)
        out.append(row)
    return out


def curvature(metric: JetMetric, h: Optional[JetForm] = None) -> Dict[str, object]:
    """Curvature package; with a closed flux form also the torsion variants.

    Keys: riemann, ricci, scalar, and with h: ricci_h, scalar_h, dstar_h,
    sigma_h (frame components), h_norm_sq, h_frame, geometry.
    """
    if metric.order < 2:
        raise ValueError("jet order too low for curvature")
    out: Dict[str, object] = {}
    riem = riemann(metric)
    ric = ricci_from_riemann(riem)
    ginv = metric.inverse()
    n = metric.n
    scal = Jet.zero(n, metric.order - 2)
    for j in range(n):
        for k in range(n):
            scal = scal + ginv[j][k] * ric[j][k]
    out["riemann"] = riem
    out["ricci"] = ric
    out["scalar"] = scal
    if h is None:
        return out
    if not h.grades() <= {3}:
        raise ValueError("flux form must have degree 3")
    if not exterior_d(h).is_zero():
        raise ValueError("flux form must be closed")
    geom = PatchGeometry(metric)
    gamma_h = christoffels_with_torsion(metric, h)
    ric_h = ricci_from_riemann(riemann_from_connection(gamma_h))
    scal_h = Jet.zero(n, metric.order - 2)
    for j in range(n):
        for k in range(n):
            scal_h = scal_h + ginv[j][k] * ric_h[j][k]
    h_hat = geom.to_frame(h)
    out["ricci_h"] = ric_h
    out["scalar_h"] = scal_h
    out["dstar_h"] = codifferential(h, geom)
    out["sigma_h"] = flux_sigma(h_hat)
    out["h_norm_sq"] = flux_norm_sq(h_hat, metric.order)
    out["h_frame"] = h_hat
    out["geometry"] = geom
    return out


def dilaton_package(phi: Jet, metric: JetMetric) -> Dict[str, object]:
    """Gradient 1-form, covariant Hessian and the (sign convention) Laplacian.

    The Laplacian is minus the metric trace of the Hessian, so on flat charts
    Delta(x1^2) = -2.
    """
    if metric.order < 2 or phi.order < 2:
        raise ValueError("jet order too low for second derivatives")
    n = metric.n
    gamma = christoffels(metric)
    dphi = [phi.partial(i) for i in range(n)]
    grad = Multivector(
        euclidean(n), {1 << i: dphi[i] for i in range(n) if not is_exact_zero(dphi[i])}
    )
    hess = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = phi.partial(i).partial(j)
            for k in range(n):
                acc = acc - gamma[k][i][j] * dphi[k].truncate(metric.order - 2)
            row.append(acc)
        hess.append(row)
    ginv = metric.inverse()
    lap = Jet.zero(n, metric.order - 2)
    for i in range(n):
        for j in range(n):
            lap = lap - ginv[i][j] * hess[i][j]
    return {"grad": grad, "hessian": hess, "laplacian": lap}
