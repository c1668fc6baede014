"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the numpy
fallback. Setting ``MRTREND_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _pykernels as python_kernels

compiled_kernels = None
if os.environ.get("MRTREND_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled_kernels
    except ImportError:
        compiled_kernels = None

kernels = compiled_kernels if compiled_kernels is not None else python_kernels
BACKEND = kernels.BACKEND

local_extrema = kernels.local_extrema
scan_line_states = kernels.scan_line_states
sinusoid_grid = kernels.sinusoid_grid
