"""Kernel backend selection.

The compiled extension is used when it imports; otherwise (or when the
environment variable ``RIBBONSERIES_PURE_PYTHON`` is non-empty) the
pure-Python implementations are used.  Both give identical results.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"

if not os.environ.get("RIBBONSERIES_PURE_PYTHON"):
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
else:
    _impl = _kernels_py

rank_mod_p = _impl.rank_mod_p
count_rank_le = _impl.count_rank_le
count_rank_le_points = _impl.count_rank_le_points

python_backend = _kernels_py
