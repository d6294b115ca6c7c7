"""Kernel backend selection.

The compiled extension is used when it imported cleanly; otherwise the
NumPy fallback takes over.  Set CIDNSIM_BACKEND=pure or =compiled to force
a side (forcing the compiled side raises if the extension is missing).
Both backends return bitwise-identical results.
"""

from __future__ import annotations

import os

__all__ = ["BACKEND", "walk_chunk", "consult_paths"]

_requested = os.environ.get("CIDNSIM_BACKEND", "auto").strip().lower()

if _requested not in ("auto", "pure", "compiled"):
    raise ImportError(
        f"CIDNSIM_BACKEND must be 'auto', 'pure' or 'compiled', got {_requested!r}"
    )

if _requested == "pure":
    from ._pure import consult_paths, walk_chunk

    BACKEND = "pure"
else:
    try:
        from ._core import consult_paths, walk_chunk  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise ImportError(
                "CIDNSIM_BACKEND=compiled but the extension module "
                "cidnsim._kernels._core is not built"
            ) from None
        from ._pure import consult_paths, walk_chunk

        BACKEND = "pure"
