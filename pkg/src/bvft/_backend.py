"""Select the compiled kernel module, falling back to NumPy.

Set ``BVFT_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("BVFT_PURE_PYTHON"):
    from bvft import _core_py as core

    COMPILED = False
else:
    try:
        from bvft import _core as core

        COMPILED = True
    except ImportError:
        from bvft import _core_py as core

        COMPILED = False

__all__ = ["core", "COMPILED"]
