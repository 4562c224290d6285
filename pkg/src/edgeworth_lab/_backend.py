"""Kernel backend selection, resolved once at import time.

The compiled Cython kernels are preferred when the extension built; the
pure-numpy kernels are the fallback.  Set ``EDGEWORTH_LAB_BACKEND`` to
``python`` or ``compiled`` to force a choice (forcing ``compiled`` raises if
the extension is missing).
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

_requested = os.environ.get("EDGEWORTH_LAB_BACKEND", "").strip().lower()
if _requested in ("", "auto"):
    _active = _compiled if _compiled is not None else _kernels_py
elif _requested == "python":
    _active = _kernels_py
elif _requested == "compiled":
    if _compiled is None:
        raise ImportError(
            "EDGEWORTH_LAB_BACKEND=compiled but the compiled kernels are not built"
        )
    _active = _compiled
else:
    raise ImportError(f"unknown EDGEWORTH_LAB_BACKEND value {_requested!r}")


def backend_name() -> str:
    """Name of the backend in use: 'compiled' or 'python'."""
    return _active.NAME


def has_compiled() -> bool:
    return _compiled is not None


mc_r_batch = _active.mc_r_batch
hyp2f1 = _active.hyp2f1
hyp2f1_grid = _active.hyp2f1_grid
