"""Kernel backend selection.

The compiled Cython kernels are preferred when the extension was built;
otherwise the pure-Python implementations are used.  Set GEOMHIT_PURE=1
to force the pure backend (useful for the benchmark and for debugging).
"""

import os

from . import pykernels

if os.environ.get("GEOMHIT_PURE") == "1":
    _impl = pykernels
else:
    try:
        from . import cykernels as _impl
    except ImportError:
        _impl = pykernels

BACKEND = _impl.BACKEND

polygon_margin = _impl.polygon_margin
polygon_margin_many = _impl.polygon_margin_many
convex_scale = _impl.convex_scale
clip_segment = _impl.clip_segment
seg_seg = _impl.seg_seg
angle_at = _impl.angle_at
polygon_box_overlap = _impl.polygon_box_overlap
linf = _impl.linf
