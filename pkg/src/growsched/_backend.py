"""Pick the compiled kernels when available, else the pure-Python ones.

Set ``GROWSCHED_PURE=1`` to force the fallback.  ``BACKEND`` names the
choice that was made.
"""

from __future__ import annotations

import os

kernels = None
BACKEND = "python"

if os.environ.get("GROWSCHED_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _speedups as kernels  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        kernels = None

if kernels is None:
    from . import _purekernels as kernels  # type: ignore[no-redef]

simcore = kernels
