"""Backend selection for the sparse merge kernels.

The compiled extension is used when it imports; setting
``SPARSEGE_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"

if os.environ.get("SPARSEGE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py
    else:
        BACKEND = "cython"
else:
    _impl = _kernels_py

lincomb = _impl.lincomb
lincomb_f64 = _impl.lincomb_f64


def available_backends():
    """Map backend name -> kernel module, for tests and benchmarks."""
    backends = {"python": _kernels_py}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        backends["cython"] = _kernels
    return backends
