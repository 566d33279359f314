"""Select the compiled counting kernels when available, else the pure-Python ones.

Set HECKETRANSFER_PURE_PYTHON=1 to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("HECKETRANSFER_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

IMPLEMENTATION = _impl.IMPLEMENTATION
net_counts = _impl.net_counts
grid_scan = _impl.grid_scan
python_kernels = _kernels_py

__all__ = ["IMPLEMENTATION", "grid_scan", "net_counts", "python_kernels"]
