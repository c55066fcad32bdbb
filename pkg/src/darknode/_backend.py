"""Pick the integration kernel at import time.

The compiled ``_ckernel`` is preferred; set ``DARKNODE_PURE_PYTHON=1`` to
force the pure-Python fallback.
"""

import importlib
import os

_FORCE_PURE = os.environ.get("DARKNODE_PURE_PYTHON", "").strip() not in ("", "0")


def load(name: str | None = None):
    """Return ``(module, name)`` for ``"cython"``, ``"python"`` or the default."""
    if name == "python" or (name is None and _FORCE_PURE):
        return importlib.import_module("darknode._pykernel"), "python"
    try:
        return importlib.import_module("darknode._ckernel"), "cython"
    except ImportError:
        if name == "cython":
            raise
        return importlib.import_module("darknode._pykernel"), "python"


kernel, BACKEND = load()


def compiled_available() -> bool:
    try:
        importlib.import_module("darknode._ckernel")
    except ImportError:
        return False
    return True
