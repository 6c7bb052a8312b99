"""Counting kernels: compiled extension when built, pure Python otherwise.

Set ``MOTZETA_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pycount

if os.environ.get("MOTZETA_PURE_PYTHON"):
    _impl = _pycount
    BACKEND = "python"
else:
    try:
        from . import _ccount as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pycount
        BACKEND = "python"

count_solutions = _impl.count_solutions
quadratic_character_sum = _impl.quadratic_character_sum

__all__ = ["BACKEND", "count_solutions", "quadratic_character_sum", "_pycount"]
