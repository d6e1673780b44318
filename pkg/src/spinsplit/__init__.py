"""Exact verification kernel for split-signature Clifford and spinor calculus.

The package is organised bottom-up:

* ``scalars``    exact rational/Gaussian-rational tower and truncated jets
* ``clifford``   Cl(p, q) on sparse blades (compiled kernel + fallback)
* ``spinrep``    complex spin modules, charge conjugation, bispinor transfer
* ``gensplit``   Spin(n, n) form spinors, B-fields, generalised metrics
* ``structures`` model SU(m), G2 and Spin(7) bispinor catalogs
* ``patch``      jet-level differential geometry on a coordinate patch
* ``cli``        deterministic verification suites and JSON reports
"""

from .blades import BACKEND

__all__ = ["BACKEND"]
__version__ = "0.1.0"
