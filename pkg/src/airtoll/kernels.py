"""Kernel backend selection.

The compiled extension is preferred when it was built; otherwise the numpy
fallback takes over transparently. Set AIRTOLL_PURE_PYTHON=1 to force the
fallback (used by the benchmark and the backend-equivalence tests).
"""

from __future__ import annotations

import os

from airtoll import _kernels_py

if os.environ.get("AIRTOLL_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from airtoll import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

greedy_fill = _impl.greedy_fill
sr_apply = _impl.sr_apply
BACKEND: str = _impl.BACKEND
