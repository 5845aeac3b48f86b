"""Selects the compiled SGNS kernel when available, else the numpy fallback.

Set ``CLINABBREV_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _sgns_fallback

if os.environ.get("CLINABBREV_PURE_PYTHON", "") not in ("", "0"):
    _compiled = None
else:
    try:
        from . import _sgns_kernel as _compiled
    except ImportError:
        _compiled = None

if _compiled is not None:
    train_pairs = _compiled.train_pairs
    BACKEND = "cython"
else:
    train_pairs = _sgns_fallback.train_pairs
    BACKEND = "python"

python_train_pairs = _sgns_fallback.train_pairs
compiled_train_pairs = _compiled.train_pairs if _compiled is not None else None
