"""foamlab: exact SL(3)/GL(N) foam evaluation, web invariants and
universal-construction state spaces."""

from ._kernel import BACKEND as kernel_backend

__version__ = "0.1.0"
__all__ = ["kernel_backend"]
