"""Backend selection for the F_p search kernels.

The compiled module is used when it imports; ``GRMEASURE_PURE=1`` forces the
pure-Python fallback.
"""

from __future__ import annotations

import os

from grmeasure import _kernels_py

if os.environ.get("GRMEASURE_PURE", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from grmeasure import _kernels_cy as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
rref = _impl.rref
first_mono = _impl.first_mono
all_monos = _impl.all_monos
first_idempotent = _impl.first_idempotent
