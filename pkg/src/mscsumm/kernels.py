"""Backend selection for the graph kernels.

The compiled ``_speedups`` module is used when it was built; otherwise (or when
``MSCSUMM_PURE_PYTHON=1`` is set) the pure Python versions are used.  Both
produce identical results.
"""
from __future__ import annotations

import os

from . import _purepy

_speedups = None
if not os.environ.get("MSCSUMM_PURE_PYTHON"):
    try:
        from . import _speedups  # type: ignore[no-redef]
    except ImportError:
        _speedups = None

_impl = _speedups if _speedups is not None else _purepy
BACKEND = "cython" if _speedups is not None else "python"

core_numbers = _impl.core_numbers
k_shortest_paths = _impl.k_shortest_paths


def backends():
    """Map of available backend name -> module (for tests and benchmarks)."""
    out = {"python": _purepy}
    if _speedups is not None:
        out["cython"] = _speedups
    return out
