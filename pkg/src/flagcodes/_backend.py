"""Kernel selection: compiled extension if available, pure Python otherwise.

Set ``FLAGCODES_KERNEL=python`` to force the fallback (results are
identical either way; only speed differs).
"""

from __future__ import annotations

import os

_forced = os.environ.get("FLAGCODES_KERNEL", "").lower()

if _forced == "python":
    from flagcodes import _kernel_py as kernel

    BACKEND = "python"
else:
    try:
        from flagcodes import _kernel as kernel  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        if _forced == "compiled":
            raise
        from flagcodes import _kernel_py as kernel  # type: ignore[no-redef]

        BACKEND = "python"


def backend_name() -> str:
    """Name of the active elimination kernel ('compiled' or 'python')."""
    return BACKEND
