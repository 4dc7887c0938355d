"""Backend selection for the hot reductions.

The compiled extension is used when it imports; setting
``THERMOIFS_PURE_PYTHON=1`` forces the NumPy fallback.
"""

import math
import os

from . import _kernels_py

if os.environ.get("THERMOIFS_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

lse_max2 = _impl.lse_max2
lse_max2_partial = _impl.lse_max2_partial
logsumexp = _impl.logsumexp


def merge_partials(parts):
    """Combine ``(max, scaled_sum)`` pairs from disjoint chunks into one log-sum-exp."""
    parts = [p for p in parts if p[1] > 0.0]
    if not parts:
        return -math.inf
    m = max(p[0] for p in parts)
    return m + math.log(sum(s * math.exp(pm - m) for pm, s in parts))
