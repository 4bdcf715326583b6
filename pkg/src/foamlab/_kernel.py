"""Select the polynomial arithmetic backend at import time.

The compiled extension is preferred; the pure-Python twin is used when
the extension is missing or when ``FOAMLAB_PURE_PYTHON`` is set (which
is how the benchmark pins each backend).
"""

import os

if os.environ.get("FOAMLAB_PURE_PYTHON"):
    from . import _poly_py as kernel
else:
    try:
        from . import _poly_cy as kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _poly_py as kernel

BACKEND = kernel.BACKEND
FIELD_BITS = kernel.FIELD_BITS
DEG_BITS = kernel.DEG_BITS
MAX_DEGREE = kernel.MAX_DEGREE
guard_mask = kernel.guard_mask
kadd = kernel.add
ksub = kernel.sub
kscale = kernel.scale
kmul = kernel.mul
kdivexact = kernel.divexact
