"""Jet-level differential geometry on a single coordinate patch.

Everything here works over truncated Taylor expansions at the origin: forms
and metrics carry `Jet` coefficients, and every identity is asserted at the
effective jet order that survives the derivatives taken.  The layers are

* ``forms``       exterior/twisted differentials, density transport, cocycles
* ``geometry``    Levi-Civita data, curvature, codifferential, dilaton terms
* ``spinfield``   spinor fields, Dirac operators, bispinor form fields
* ``background``  assembled field backgrounds, residual systems, manifests
"""

from .forms import (
    JetForm,
    NuTransport,
    CoverDatum,
    cocycle_check,
    constant_form,
    exterior_d,
    form_order,
    form_partial,
    form_value,
    nu_transport,
    random_cover_datum,
    twisted_d,
)
from .geometry import (
    JetMetric,
    PatchGeometry,
    christoffels,
    christoffels_with_torsion,
    codifferential,
    codifferential_routes,
    curvature,
    dilaton_package,
    ricci,
    riemann,
    scalar_curvature,
)
from .spinfield import (
    JetSpinorField,
    bispinor_field,
    constant_spinor_field,
    dirac,
    fierz_calculus_identities,
    frame_sum_cross_check,
    spinor_derivative,
    spinor_partial,
    spinor_value,
)
from .background import (
    FieldBackground,
    background_from_manifest,
    background_to_manifest,
    dirac_commutation_identity,
    flat_su3_background,
    integrability_residuals,
    load_manifest,
    nogo_identities,
    random_background,
    residual_maxima,
    save_manifest,
)

__all__ = [
    "JetForm",
    "NuTransport",
    "CoverDatum",
    "cocycle_check",
    "constant_form",
    "exterior_d",
    "form_order",
    "form_partial",
    "form_value",
    "nu_transport",
    "random_cover_datum",
    "twisted_d",
    "JetMetric",
    "PatchGeometry",
    "christoffels",
    "christoffels_with_torsion",
    "codifferential",
    "codifferential_routes",
    "curvature",
    "dilaton_package",
    "ricci",
    "riemann",
    "scalar_curvature",
    "JetSpinorField",
    "bispinor_field",
    "constant_spinor_field",
    "dirac",
    "fierz_calculus_identities",
    "frame_sum_cross_check",
    "spinor_derivative",
    "spinor_partial",
    "spinor_value",
    "FieldBackground",
    "background_from_manifest",
    "background_to_manifest",
    "dirac_commutation_identity",
    "flat_su3_background",
    "integrability_residuals",
    "load_manifest",
    "nogo_identities",
    "random_background",
    "residual_maxima",
    "save_manifest",
]
