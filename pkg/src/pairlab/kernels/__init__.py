"""Kernel backend selection.

The compiled extension is preferred when present; the numpy backend is the
fallback. Both produce identical exact results (parity-tested), so the
choice only affects speed. Set PAIRLAB_FORCE_PURE=1 to skip the extension.
"""
from __future__ import annotations

import os

if os.environ.get("PAIRLAB_FORCE_PURE"):
    from pairlab.kernels import _numpy_backend as _impl
    BACKEND = "numpy"
else:
    try:
        from pairlab.kernels import _fast as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        from pairlab.kernels import _numpy_backend as _impl
        BACKEND = "numpy"

diff_counts_dense = _impl.diff_counts_dense
energy_from_diffs = _impl.energy_from_diffs
abs_cc_partial = _impl.abs_cc_partial
