"""Assembled local field backgrounds and their residual systems.

A background couples one chart's jet metric with a closed flux 3-form, a
dilaton jet, a positive density scale and a left/right pair of unit spinor
fields.  The residual families split into the spinor picture (per-direction
torsion derivatives plus the flux-shifted gradient action) and the form
picture (flux-twisted derivatives of the weighted bispinor forms and their
volume-operator companions); a background is an integrable solution at order
exactly when every family vanishes.

Manifests serialise a background as JSON with every scalar in the exact
tower written as a "p/q" string; form and spinor tables are keyed by the
decimal blade or subset mask.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import random

from .. import rand
from ..clifford import Multivector, euclidean
from ..gensplit import GenMetric, g_tilde
from ..scalars import GaussianRational, Jet, is_exact_zero
from ..spinrep import SpinModule, SpinorDelta
from ..structures import model_su
from .forms import JetForm, exterior_d, twisted_d
from .geometry import (
    JetMetric,
    PatchGeometry,
    codifferential,
    curvature,
    dilaton_package,
    flux_gram,
    flux_norm_sq,
    flux_sigma,
    three_form_component,
)
from .spinfield import (
    JetSpinorField,
    Report,
    constant_spinor_field,
    dirac,
    spinor_derivative,
    spinor_truncate,
)


class FieldBackground:
    """Chart-level field content with the construction-time invariants.

    The flux form must be exactly closed and both spinor fields must have
    unit norm at the base point; a potential, when given, must have the flux
    as its exterior derivative.
    """

    def __init__(
        self,
        metric: JetMetric,
        flux: JetForm,
        phi: Jet,
        psi_l: JetSpinorField,
        psi_r: JetSpinorField,
        potential: Optional[JetForm] = None,
        lam: Optional[Jet] = None,
    ):
        n = metric.n
        if n % 2:
            raise ValueError("spinor backgrounds need an even-dimensional chart")
        if not flux.grades() <= {3}:
            raise ValueError("flux must be a 3-form")
        if not exterior_d(flux).is_zero():
            raise ValueError("flux form must be closed")
        if potential is not None:
            if not potential.grades() <= {2}:
                raise ValueError("potential must be a 2-form")
            if not (exterior_d(potential) - flux).is_zero():
                raise ValueError("potential does not integrate the flux")
        if lam is None:
            lam = Jet.constant(Fraction(1), n, metric.order)
        if not lam.value() > 0:
            raise ValueError("density scale must be positive at the base point")
        self.metric = metric
        self.flux = flux
        self.phi = phi
        self.psi_l = psi_l
        self.psi_r = psi_r
        self.potential = potential
        self.lam = lam
        self.n = n
        self.order = metric.order
        self.module = SpinModule(n)
        self.geom = PatchGeometry(metric)
        for name, psi in (("left", psi_l), ("right", psi_r)):
            norm = self.module.herm_inner(psi, psi).value()
            if not is_exact_zero(norm - 1):
                raise ValueError(f"{name} spinor field is not unit at the base point")
        self._h_hat: Optional[JetForm] = None

    @property
    def h_hat(self) -> JetForm:
        if self._h_hat is None:
            self._h_hat = self.geom.to_frame(self.flux)
        return self._h_hat


def flat_su3_background(order: int = 2) -> FieldBackground:
    """Flat chart, zero flux, constant dilaton, parallel model spinors; n = 6."""
    n = 6
    psi = model_su(3).psi
    field = constant_spinor_field(psi, n, order)
    return FieldBackground(
        metric=JetMetric.flat(n, order),
        flux=Multivector(euclidean(n)),
        phi=Jet.zero(n, order),
        psi_l=field,
        psi_r=field,
        potential=Multivector(euclidean(n)),
    )


def _random_symmetric_identity_metric(
    n: int, order: int, rng: random.Random, tower: str, max_terms: int
) -> JetMetric:
    rows = [[Jet.zero(n, order) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        rows[i][i] = Jet.constant(Fraction(1), n, order) + rand.jet(
            n, order, rng, tower=tower, min_degree=1, max_terms=max_terms
        )
        for j in range(i + 1, n):
            p = rand.jet(n, order, rng, tower=tower, min_degree=1, max_terms=max_terms)
            rows[i][j] = p
            rows[j][i] = p
    return JetMetric(rows)


def random_background(
    n: int,
    order: int,
    rng: random.Random,
    tower: str = "exact",
    max_terms: int = 2,
) -> FieldBackground:
    """Random perturbation of the parallel-spinor chart; generically no solution.

    The metric value stays the identity so every derived quantity remains in
    the exact tower; the flux comes from a random potential one order up, so
    closure is structural rather than tolerance-based.
    """
    if n % 2 or n < 4:
        raise ValueError("random backgrounds need even n >= 4")
    metric = _random_symmetric_identity_metric(n, order, rng, tower, max_terms)
    sig = euclidean(n)
    potential = Multivector(
        sig,
        {
            (1 << i) | (1 << j): rand.jet(n, order + 1, rng, tower=tower, max_terms=max_terms)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < 0.5
        },
    )
    if potential.is_zero():
        potential = Multivector(sig, {0b011: rand.jet(n, order + 1, rng, tower=tower, max_terms=max_terms)})
    flux = exterior_d(potential)
    phi = rand.jet(n, order, rng, tower=tower, min_degree=1, max_terms=max_terms)
    base = model_su(n // 2).psi
    m = n // 2
    fields = []
    for _ in range(2):
        pert = SpinorDelta(
            m,
            {
                s: rand.jet(n, order, rng, tower=tower, complex_ok=True, min_degree=1, max_terms=max_terms)
                for s in range(1 << m)
            },
        )
        fields.append(constant_spinor_field(base, n, order) + pert)
    lam = Jet.constant(Fraction(1), n, order) + rand.jet(
        n, order, rng, tower=tower, min_degree=1, max_terms=max_terms
    )
    return FieldBackground(
        metric=metric,
        flux=flux,
        phi=phi,
        psi_l=fields[0],
        psi_r=fields[1],
        potential=potential,
        lam=lam,
    )


# -- residual systems ----------------------------------------------------------


def _grad_hat(bg: FieldBackground) -> JetForm:
    """Frame components of the dilaton gradient 1-form."""
    terms = {}
    for a in range(bg.n):
        c = bg.geom.frame_partial(bg.phi, a)
        if not is_exact_zero(c):
            terms[1 << a] = c
    return Multivector(euclidean(bg.n), terms)


def integrability_residuals(bg: FieldBackground) -> Dict[str, object]:
    """All four residual families of the coupled system, at jet order.

    Keys: gravitino_left/right (lists per frame direction, torsion -1/+1),
    dilatino_left/right (flux-shifted gradient action), form_conj/plain
    (flux-twisted derivative of the weighted bispinor forms, the conj entry
    carrying the conjugate-linear operator on the left slot) and their
    companion_* volume-operator partners.
    """
    module = bg.module
    geom = bg.geom
    h_hat = bg.h_hat
    out: Dict[str, object] = {}
    out["gravitino_left"] = [
        spinor_derivative(module, bg.psi_l, a, geom, h_hat, torsion=-1) for a in range(bg.n)
    ]
    out["gravitino_right"] = [
        spinor_derivative(module, bg.psi_r, a, geom, h_hat, torsion=+1) for a in range(bg.n)
    ]
    grad = _grad_hat(bg)
    half = Fraction(1, 2)
    out["dilatino_left"] = module.clifford_action(grad - h_hat.scale(half), bg.psi_l)
    out["dilatino_right"] = module.clifford_action(grad + h_hat.scale(half), bg.psi_r)
    weight = (-bg.phi).exp()
    straight = GenMetric.straight(bg.n)
    for label, left in (("conj", module.charge_conjugate(bg.psi_l)), ("plain", bg.psi_l)):
        rho_hat = module.fierz(left, bg.psi_r)
        rho = geom.from_frame(rho_hat).scale(weight)
        out[f"form_{label}"] = twisted_d(rho, bg.flux)
        companion = geom.from_frame(g_tilde(rho_hat, straight)).scale(weight)
        out[f"companion_{label}"] = twisted_d(companion, bg.flux)
    return out


def residual_maxima(res: Dict[str, object]) -> Dict[str, float]:
    out = {}
    for name, val in res.items():
        if isinstance(val, list):
            out[name] = max((v.max_abs() for v in val), default=0.0)
        else:
            out[name] = val.max_abs()
    return out


def picture_maxima(res: Dict[str, object]) -> Tuple[float, float]:
    """Largest residual in the spinor picture and in the form picture."""
    maxima = residual_maxima(res)
    spinor = max(
        v for k, v in maxima.items() if k.startswith(("gravitino", "dilatino"))
    )
    form = max(v for k, v in maxima.items() if k.startswith(("form", "companion")))
    return spinor, form


def dirac_commutation_identity(bg: FieldBackground, psi: Optional[JetSpinorField] = None) -> bool:
    """Unconditional frame-sum commutation of the Dirac sum with d(phi).

    D(dphi . psi) = -dphi . D(psi) + (d* dphi) . psi - 2 sum_a dphi(e_a) nabla_a psi
    holds for any background and any spinor field, solution or not.  Two
    derivative layers hit phi, so both sides are compared at order - 2.
    """
    module = bg.module
    geom = bg.geom
    if psi is None:
        psi = bg.psi_l
    grad = _grad_hat(bg)
    lhs = dirac(module, module.clifford_action(grad, psi), geom)
    dstar_grad = codifferential(geom.from_frame(grad), geom).terms.get(0)
    rhs = module.clifford_action(grad, dirac(module, psi, geom)).scale(-1)
    if dstar_grad is not None:
        rhs = rhs + psi.scale(dstar_grad)
    for a in range(bg.n):
        c = grad.terms.get(1 << a)
        if c is None:
            continue
        rhs = rhs + spinor_derivative(module, psi, a, geom).scale(c * (-2))
    trusted = max(bg.order - 2, 0)
    return (spinor_truncate(lhs, trusted) - spinor_truncate(rhs, trusted)).is_zero()


def _torsion_form_derivative(
    geom: PatchGeometry, rho_hat: JetForm, a: int, h_hat: JetForm
) -> JetForm:
    """Covariant derivative of a frame-component form under the torsion connection."""
    out = geom.form_frame_partial(rho_hat, a)
    sig = rho_hat.sig
    half = Fraction(1, 2)
    for i in range(geom.n):
        row_terms = {}
        for k in range(geom.n):
            w = geom.omega[a][i][k]
            hc = three_form_component(h_hat, a, i, k)
            entry = w if is_exact_zero(hc) else w + hc * half
            if not is_exact_zero(entry):
                row_terms[1 << k] = entry
        if not row_terms:
            continue
        hooked = Multivector(sig, {1 << i: 1}).evaluate_contract(rho_hat)
        if hooked.is_zero():
            continue
        out = out + Multivector(sig, row_terms).wedge(hooked)
    return out


def nogo_identities(bg: FieldBackground, tol: float = 0.0) -> Report:
    """Base-point identity report for integrable backgrounds.

    Refuses non-solutions: every residual family must vanish first.  On the
    classical flat solution each entry reduces to an exact 0 = 0.
    """
    res = integrability_residuals(bg)
    maxima = residual_maxima(res)
    bad = {k: v for k, v in maxima.items() if v > tol}
    if bad:
        raise ValueError(f"background is not an integrable solution at order: {bad}")
    module = bg.module
    geom = bg.geom
    n = bg.n
    h_hat = bg.h_hat
    report: Report = []

    pack = dilaton_package(bg.phi, bg.metric)
    grad = _grad_hat(bg)
    grad_sq = Jet.zero(n, bg.order - 1)
    for c in grad.terms.values():
        grad_sq = grad_sq + c * c
    hns = flux_norm_sq(h_hat, bg.order)
    balance = grad_sq * 4 + pack["laplacian"] * 2 - hns
    report.append(("scalar-balance", is_exact_zero(balance.value())))

    cur = curvature(bg.metric, bg.flux)
    e0 = [[c.value() for c in row] for row in geom.frame]
    ric0 = [[c.value() for c in row] for row in cur["ricci"]]
    hess0 = [[c.value() for c in row] for row in pack["hessian"]]
    t0 = [[c.value() for c in row] for row in flux_gram(h_hat, bg.order)]
    ok = True
    for a in range(n):
        for b in range(n):
            lhs = Fraction(0)
            rhs_h = Fraction(0)
            for i in range(n):
                for j in range(n):
                    lhs += e0[a][i] * e0[b][j] * ric0[i][j]
                    rhs_h += e0[a][i] * e0[b][j] * hess0[i][j]
            want = rhs_h * (-2) + t0[a][b] * Fraction(1, 2)
            if not is_exact_zero(lhs - want):
                ok = False
    report.append(("ricci-dilaton-flux", ok))

    scal0 = cur["scalar"].value()
    want = pack["laplacian"].value() * 2 + hns.value() * Fraction(3, 2)
    report.append(("scalar-dilaton-flux", is_exact_zero(scal0 - want)))

    psi0 = SpinorDelta(module.m, {s: c.value() for s, c in bg.psi_l.coeffs.items()})
    ric_h = cur["ricci_h"]
    ok = True
    for a in range(n):
        one_form = {}
        for b in range(n):
            acc = Fraction(0)
            for i in range(n):
                for j in range(n):
                    acc += e0[a][i] * e0[b][j] * ric_h[i][j].value()
            if not is_exact_zero(acc):
                one_form[1 << b] = acc
        lhs = module.clifford_action(Multivector(euclidean(n), one_form), psi0)
        nabla_h = _torsion_form_derivative(geom, h_hat, a, h_hat)
        nabla0 = Multivector(
            euclidean(n), {m: c.value() for m, c in nabla_h.terms.items()}
        )
        rhs = module.clifford_action(nabla0, psi0)
        if not (lhs - rhs).is_zero(tol):
            ok = False
    report.append(("torsion-ricci-spinor", ok))

    sigma_hat = flux_sigma(h_hat)
    sigma0 = Multivector(euclidean(n), {m: c.value() for m, c in sigma_hat.terms.items()})
    lhs = module.clifford_action(sigma0, psi0)
    rhs = psi0.scale(hns.value() * Fraction(1, 2))
    report.append(("flux-square-spinor", (lhs - rhs).is_zero(tol)))

    report.append(("dirac-gradient-commutation", dirac_commutation_identity(bg)))
    return report


# -- manifests -----------------------------------------------------------------


def _encode_scalar(c) -> object:
    if isinstance(c, GaussianRational):
        return {"re": str(c.re), "im": str(c.im)}
    if isinstance(c, (int, Fraction)):
        return str(Fraction(c))
    if isinstance(c, float):
        return c
    raise TypeError(f"cannot serialise scalar of type {type(c).__name__}")


def _decode_scalar(doc):
    if isinstance(doc, dict):
        return GaussianRational(Fraction(doc["re"]), Fraction(doc["im"]))
    if isinstance(doc, str):
        return Fraction(doc)
    return doc


def _encode_jet(j: Jet) -> Dict[str, object]:
    coeffs = {
        ",".join(str(e) for e in idx): _encode_scalar(c) for idx, c in j.coeffs.items()
    }
    return {"order": j.order, "coeffs": coeffs}


def _decode_jet(doc: Dict[str, object], n: int) -> Jet:
    coeffs = {}
    for key, val in doc["coeffs"].items():
        idx = tuple(int(p) for p in key.split(",")) if key else (0,) * n
        coeffs[idx] = _decode_scalar(val)
    return Jet(n, int(doc["order"]), coeffs)


def _encode_table(obj) -> Dict[str, object]:
    """Mask-keyed jet table for forms and spinor fields alike."""
    source = obj.terms if isinstance(obj, Multivector) else obj.coeffs
    return {str(mask): _encode_jet(c) for mask, c in sorted(source.items())}


def background_to_manifest(bg: FieldBackground) -> Dict[str, object]:
    doc: Dict[str, object] = {
        "schema": 1,
        "n": bg.n,
        "order": bg.order,
        "metric": [[_encode_jet(c) for c in row] for row in bg.metric.rows],
        "phi": _encode_jet(bg.phi),
        "psi_l": _encode_table(bg.psi_l),
        "psi_r": _encode_table(bg.psi_r),
        "lam": _encode_jet(bg.lam),
    }
    if bg.potential is not None:
        doc["potential"] = _encode_table(bg.potential)
    else:
        doc["flux"] = _encode_table(bg.flux)
    return doc


def background_from_manifest(doc: Dict[str, object]) -> FieldBackground:
    n = int(doc["n"])
    sig = euclidean(n)
    metric = JetMetric([[_decode_jet(c, n) for c in row] for row in doc["metric"]])

    def table_form(table) -> Multivector:
        return Multivector(sig, {int(k): _decode_jet(v, n) for k, v in table.items()})

    def table_spinor(table) -> SpinorDelta:
        return SpinorDelta(n // 2, {int(k): _decode_jet(v, n) for k, v in table.items()})

    potential = table_form(doc["potential"]) if "potential" in doc else None
    flux = exterior_d(potential) if potential is not None else table_form(doc["flux"])
    return FieldBackground(
        metric=metric,
        flux=flux,
        phi=_decode_jet(doc["phi"], n),
        psi_l=table_spinor(doc["psi_l"]),
        psi_r=table_spinor(doc["psi_r"]),
        potential=potential,
        lam=_decode_jet(doc["lam"], n),
    )


def save_manifest(bg: FieldBackground, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(background_to_manifest(bg), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_manifest(path: str) -> FieldBackground:
    with open(path, "r", encoding="utf-8") as fh:
        return background_from_manifest(json.load(fh))
