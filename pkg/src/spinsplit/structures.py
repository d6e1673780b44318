"""Model spinors and invariant forms of special generalised structures.

The catalog covers SU(m) for m = 1..4, G2 and Spin(7).  Each model packages
an exact unit spinor with the closed forms its bispinors reproduce, and
``verify_catalog`` reruns every identity of the catalog, optionally after a
B-field twist of the straight generalised metric.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

from .clifford import Multivector, euclidean, exp_two_form
from .gensplit import (
    GenMetric,
    bfield_on_spinor,
    bispinor_form,
    bispinor_volume_factor,
    g_tilde,
    hodge_star_metric,
    mukai_pair,
    split_action,
)
from .scalars import I_GAUSS, is_exact_zero
from .spinrep import SpinModule, SpinorDelta

Report = List[Tuple[str, bool]]

_HALF = Fraction(1, 2)
# Unit spinor of Delta_7 / Delta_8+ fixed by charge conjugation: the four
# monomials form two conjugation orbits, so real coefficients suffice.
_REAL_COEFFS = {0b0000: _HALF, 0b0011: _HALF, 0b1100: -_HALF, 0b1111: _HALF}


class ConventionError(Exception):
    """A model spinor failed one of its defining normalisation checks."""


class StructureModel:
    """A special unit spinor with its invariant forms and bispinor forms.

    ``closed_forms`` maps descriptive names to the forms the bispinors are
    asserted to equal; ``rho`` holds the bispinor forms themselves, in the
    order the catalog identities refer to them.
    """

    def __init__(
        self,
        kind: str,
        module: SpinModule,
        psi: SpinorDelta,
        closed_forms: Dict[str, Multivector],
        rho: Tuple[Multivector, ...],
    ) -> None:
        if module.herm_inner(psi, psi) != 1:
            raise ConventionError(f"{kind} model spinor is not unit norm")
        self.kind = kind
        self.module = module
        self.psi = psi
        self.closed_forms = closed_forms
        self.rho = rho

    def __repr__(self) -> str:
        return f"StructureModel({self.kind!r})"


def _one(n: int) -> Multivector:
    return Multivector(euclidean(n), {0: Fraction(1)})


def _volume(n: int) -> Multivector:
    return Multivector(euclidean(n), {(1 << n) - 1: Fraction(1)})


def model_su(m: int) -> StructureModel:
    """Vacuum-spinor SU(m) model on R^{2m}, m in 1..4.

    The conjugate bispinor is (-1)^{m(m+1)/2} exp(-i omega) with the Kahler
    form omega = sum_i e^i ^ e^{m+i}, and the plain bispinor is the
    decomposable form (e^1 + i e^{m+1}) ^ ... ^ (e^m + i e^{2m}); both hold
    with unit global phase.
    """
    if not 1 <= m <= 4:
        raise ValueError("SU(m) models are built for 1 <= m <= 4")
    n = 2 * m
    module = SpinModule(n)
    sig = euclidean(n)
    psi = SpinorDelta(m, {0: Fraction(1)})
    apsi = module.charge_conjugate(psi)

    # chirality pairing: equal for m even, opposite for m odd
    if module.chirality_of(psi) != 1:
        raise ConventionError("SU model spinor must have positive chirality")
    want = 1 if m % 2 == 0 else -1
    if module.chirality_of(apsi) != want:
        raise ConventionError("conjugate spinor has the wrong chirality")

    kahler = Multivector(
        sig, {(1 << i) | (1 << (m + i)): Fraction(1) for i in range(m)}
    )
    holo = _one(n)
    for k in range(m):
        holo = holo.wedge(
            Multivector(sig, {1 << k: Fraction(1), 1 << (m + k): I_GAUSS})
        )

    rho0 = module.fierz(apsi, psi)
    rho1 = module.fierz(psi, psi)
    sign = -1 if (m * (m + 1) // 2) % 2 else 1
    if not (rho0 - exp_two_form(kahler.scale(-I_GAUSS)).scale(sign)).is_zero():
        raise ConventionError("conjugate bispinor is not the Kahler exponential")
    if not (rho1 - holo).is_zero():
        raise ConventionError("plain bispinor is not the decomposable m-form")

    return StructureModel(
        kind=f"SU({m})",
        module=module,
        psi=psi,
        closed_forms={"kahler": kahler, "holomorphic_volume": holo},
        rho=(rho0, rho1),
    )


def model_g2() -> StructureModel:
    """Real-spinor G2 model on R^7.

    The bispinor splits as 1 - star(phi) on even degrees and -phi + vol on
    odd ones, with the three-form phi read off the odd part.  The straight
    generalised metric swaps the pair as (rho0, rho1) -> (-rho1, rho0); the
    exchange signs follow from the +1 volume factor of the even-parity copy
    of the module, the odd copy would realise the opposite pair.
    """
    module = SpinModule(7)
    psi = SpinorDelta(module.m_amb, dict(_REAL_COEFFS))
    if not (module.charge_conjugate(psi) - psi).is_zero():
        raise ConventionError("G2 model spinor must be fixed by conjugation")
    if psi.parity() != module.odd_parity:
        raise ConventionError("G2 model spinor must lie in the canonical copy")

    rho = module.fierz(psi, psi)
    rho0 = rho.even_part()
    rho1 = rho.odd_part()
    phi = rho1.grade_project(3).scale(-1)
    gm = GenMetric.straight(7)
    star_phi = hodge_star_metric(phi, gm)
    if not (rho0 - (_one(7) - star_phi)).is_zero():
        raise ConventionError("even bispinor is not 1 - star(phi)")
    if not (rho1 - (_volume(7) - phi)).is_zero():
        raise ConventionError("odd bispinor is not -phi + vol")
    if not (g_tilde(rho0, gm) + rho1).is_zero():
        raise ConventionError("generalised metric does not send rho0 to -rho1")
    if not (g_tilde(rho1, gm) - rho0).is_zero():
        raise ConventionError("generalised metric does not send rho1 to rho0")

    return StructureModel(
        kind="G2",
        module=module,
        psi=psi,
        closed_forms={
            "three_form": phi,
            "four_form": star_phi,
            "volume": _volume(7),
        },
        rho=(rho0, rho1),
    )


def model_spin7() -> StructureModel:
    """Real chiral Spin(7) model on R^8.

    The bispinor is 1 - Omega + vol with Omega a self-dual four-form, and it
    is fixed by the straight generalised metric.
    """
    module = SpinModule(8)
    psi = SpinorDelta(module.m_amb, dict(_REAL_COEFFS))
    if not (module.charge_conjugate(psi) - psi).is_zero():
        raise ConventionError("Spin(7) model spinor must be fixed by conjugation")
    if module.chirality_of(psi) != 1:
        raise ConventionError("Spin(7) model spinor must have positive chirality")

    rho = module.fierz(psi, psi)
    if rho.grades() != {0, 4, 8}:
        raise ConventionError("Spin(7) bispinor must have degrees {0, 4, 8}")
    four = rho.grade_project(4).scale(-1)
    gm = GenMetric.straight(8)
    if not (hodge_star_metric(four, gm) - four).is_zero():
        raise ConventionError("Spin(7) four-form is not self-dual")
    if not (rho - (_one(8) - four + _volume(8))).is_zero():
        raise ConventionError("Spin(7) bispinor is not 1 - Omega + vol")
    if not (g_tilde(rho, gm) - rho).is_zero():
        raise ConventionError("Spin(7) bispinor is not fixed by the metric")

    return StructureModel(
        kind="Spin(7)",
        module=module,
        psi=psi,
        closed_forms={"four_form": four, "volume": _volume(8)},
        rho=(rho,),
    )


def catalog() -> List[StructureModel]:
    """All models in a fixed order."""
    return [model_su(m) for m in (1, 2, 3, 4)] + [model_g2(), model_spin7()]


# -- catalog verification -----------------------------------------------------


def _gm_for(n: int, b: Multivector | None) -> GenMetric:
    if b is not None and b.sig.n == n:
        return GenMetric.straight(n, b)
    return GenMetric.straight(n)


def _twist(gm: GenMetric, f: Multivector) -> Multivector:
    return f if gm.B.is_zero() else bfield_on_spinor(gm.B, f)


def _commutation_checks(
    kind: str,
    module: SpinModule,
    psi_l: SpinorDelta,
    psi_r: SpinorDelta,
    gm: GenMetric,
) -> Report:
    """Vector transport on both slots of the bispinor, at two basis vectors."""
    n = module.n
    sig = euclidean(n)
    rho = bispinor_form(module, psi_l, psi_r, gm)
    lsign = -1 if (n // 2 + 1) % 2 else 1
    ok_left = True
    ok_right = True
    for i in (1, n):
        coords = [Fraction(0)] * n
        coords[i - 1] = Fraction(1)
        xv = Multivector.from_vector(sig, coords)
        lhs = bispinor_form(module, module.clifford_action(xv, psi_l), psi_r, gm)
        rhs = split_action(gm.lift(coords, +1), rho).scale(lsign)
        ok_left = ok_left and (lhs - rhs).is_zero()
        lhs = bispinor_form(module, psi_l, module.clifford_action(xv, psi_r), gm)
        rhs = split_action(gm.lift(coords, -1), rho.tilde())
        ok_right = ok_right and (lhs - rhs).is_zero()
    return [
        (f"{kind}: left Clifford slot transports to a plus lift", ok_left),
        (f"{kind}: right Clifford slot transports to a minus lift", ok_right),
    ]


def _su_checks(m: int, b: Multivector | None) -> Report:
    model = model_su(m)
    module = model.module
    gm = _gm_for(module.n, b)
    kind = model.kind
    apsi = module.charge_conjugate(model.psi)
    r0 = bispinor_form(module, apsi, model.psi, gm)
    r1 = bispinor_form(module, model.psi, model.psi, gm)
    t0 = _twist(gm, model.rho[0])
    t1 = _twist(gm, model.rho[1])
    tilde_sign = -1 if m % 2 else 1
    factor = bispinor_volume_factor(module, 1)
    out: Report = [
        (f"{kind}: conjugate bispinor is the twisted Kahler exponential",
         (r0 - t0).is_zero()),
        (f"{kind}: plain bispinor is the twisted holomorphic volume",
         (r1 - t1).is_zero()),
        (f"{kind}: conjugate bispinor has even parity", r0.odd_part().is_zero()),
        (f"{kind}: plain bispinor has degree involution sign (-1)^m",
         (r1.tilde() - r1.scale(tilde_sign)).is_zero()),
        (f"{kind}: both bispinors are eigenvectors of the generalised metric",
         (g_tilde(r0, gm) - r0.scale(factor)).is_zero()
         and (g_tilde(r1, gm) - r1.scale(factor)).is_zero()),
    ]
    out.extend(_commutation_checks(kind, module, apsi, model.psi, gm))
    if m == 3:
        p0 = mukai_pair(r0, r0.conjugate_coefficients())
        p1 = mukai_pair(r1, r1.conjugate_coefficients())
        out.append(
            (f"{kind}: pairings of both bispinors against their conjugates"
             " are nonzero",
             not is_exact_zero(p0) and not is_exact_zero(p1))
        )
    return out


def _g2_checks(b: Multivector | None) -> Report:
    model = model_g2()
    module = model.module
    gm = _gm_for(7, b)
    r0 = bispinor_form(module, model.psi, model.psi, gm, parity=0)
    r1 = bispinor_form(module, model.psi, model.psi, gm, parity=1)
    t0 = _twist(gm, model.rho[0])
    t1 = _twist(gm, model.rho[1])
    factor = bispinor_volume_factor(module, parity=0)
    full = r0 + r1
    out: Report = [
        ("G2: even bispinor is the twisted 1 - star(phi)", (r0 - t0).is_zero()),
        ("G2: odd bispinor is the twisted -phi + vol", (r1 - t1).is_zero()),
        ("G2: generalised metric swaps the pair as (-rho1, rho0)",
         (g_tilde(r0, gm) + r1).is_zero() and (g_tilde(r1, gm) - r0).is_zero()),
        ("G2: volume factor matches the even-parity copy",
         (g_tilde(full, gm) - full.tilde().scale(factor)).is_zero()),
    ]
    out.extend(_commutation_checks("G2", module, model.psi, model.psi, gm))
    return out


def _spin7_checks(b: Multivector | None) -> Report:
    model = model_spin7()
    module = model.module
    gm = _gm_for(8, b)
    r = bispinor_form(module, model.psi, model.psi, gm)
    t = _twist(gm, model.rho[0])
    factor = bispinor_volume_factor(module, module.chirality_of(model.psi))
    out: Report = [
        ("Spin(7): bispinor is the twisted 1 - Omega + vol", (r - t).is_zero()),
        ("Spin(7): bispinor is fixed by the generalised metric",
         (g_tilde(r, gm) - r).is_zero() and factor == 1),
    ]
    out.extend(_commutation_checks("Spin(7)", module, model.psi, model.psi, gm))
    return out


def verify_catalog(b: Multivector | None = None) -> Report:
    """Rerun every catalog identity, twisting models of matching dimension.

    A two-form ``b`` applies to the models living on R^{b.sig.n}; all other
    models run with the straight metric.  Returns (name, passed) pairs; a
    clean catalog has all second entries True.
    """
    if b is not None and not b.grades() <= {2}:
        raise ValueError("twist must be a two-form")
    report: Report = []
    for m in (1, 2, 3, 4):
        report.extend(_su_checks(m, b))
    report.extend(_g2_checks(b))
    report.extend(_spin7_checks(b))
    return report


def catalog_failures(report: Report) -> List[str]:
    return [name for name, ok in report if not ok]
