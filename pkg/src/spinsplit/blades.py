"""Blade kernel selection.

Imports the compiled kernel when it is available and falls back to the pure
Python twin otherwise.  Set SPINSPLIT_PURE=1 to force the fallback; the
resolved choice is exposed as BACKEND ("c" or "python").
"""

from __future__ import annotations

import os

if os.environ.get("SPINSPLIT_PURE"):
    from ._blades_py import contract, gp, reorder_sign, wedge

    BACKEND = "python"
else:
    try:
        from ._blades_c import contract, gp, reorder_sign, wedge

        BACKEND = "c"
    except ImportError:
        from ._blades_py import contract, gp, reorder_sign, wedge

        BACKEND = "python"

__all__ = ["BACKEND", "contract", "gp", "reorder_sign", "wedge"]
