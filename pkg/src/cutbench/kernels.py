"""Kernel backend selection.

Prefers the compiled extension; falls back to the numpy reference
implementation when the extension is missing (e.g. no C toolchain at
install time). Set CUTBENCH_PURE_PYTHON=1 to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("CUTBENCH_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

apply_1q = _impl.apply_1q
apply_2q = _impl.apply_2q
apply_cx = _impl.apply_cx
apply_cz = _impl.apply_cz
apply_swap = _impl.apply_swap


def available_backends() -> dict:
    """Importable kernel modules by name; used by tests and benchmarks."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels

        out["compiled"] = _kernels
    except ImportError:
        pass
    return out
