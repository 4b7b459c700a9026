"""Kernel backend selection.

The compiled Cython module is preferred when importable; otherwise the
pure-Python twin takes over.  ``DIGREV_BACKEND=python`` or ``=compiled``
forces the choice (the latter fails loudly when the extension is absent).
"""

from __future__ import annotations

import os

_requested = os.environ.get("DIGREV_BACKEND", "auto").strip().lower()

if _requested in ("", "auto"):
    try:
        from . import _kernels_cy as kernels  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as kernels

        BACKEND = "python"
elif _requested in ("compiled", "cython", "c"):
    from . import _kernels_cy as kernels  # type: ignore[attr-defined]

    BACKEND = "compiled"
elif _requested in ("python", "py", "pure"):
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    raise RuntimeError(f"DIGREV_BACKEND={_requested!r} not recognized (use auto, compiled, or python)")
