"""Kernel dispatch: compiled extension when available, pure Python otherwise.

Set ``LINLOG_PURE_PYTHON=1`` to force the fallback.  ``BACKEND`` names the
implementation that was selected.
"""
from __future__ import annotations

import os

from linlog import _purepy

_impl = _purepy
BACKEND = "python"

if os.environ.get("LINLOG_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from linlog import _speedups as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

digit_sum = _impl.digit_sum
legendre_valuation = _impl.legendre_valuation
bareiss_rank = _impl.bareiss_rank
count_lattice_images = _impl.count_lattice_images

__all__ = ["BACKEND", "digit_sum", "legendre_valuation", "bareiss_rank", "count_lattice_images"]
