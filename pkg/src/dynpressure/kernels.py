"""Backend selection for the basis kernels.

The compiled extension is used when it imports; otherwise the numpy
version.  ``DYNPRESSURE_BACKEND=python`` forces the fallback.
"""

import os

from . import _pykernels

_requested = os.environ.get("DYNPRESSURE_BACKEND", "auto").lower()

if _requested == "python":
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        if _requested == "cython":
            raise
        _impl = _pykernels

BACKEND = _impl.BACKEND
basis = _impl.basis
series = _impl.series


def available_backends():
    out = {"python": _pykernels}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
