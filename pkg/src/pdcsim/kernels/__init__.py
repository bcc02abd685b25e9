"""Kernel backend selection.

The hot inner loops (Sellmeier evaluation inside bracketing solvers and
over JSA grids) have two interchangeable implementations:

* ``pdcsim.kernels._core`` -- Cython extension, built at install time;
* ``pdcsim.kernels._pure`` -- numpy / plain-Python fallback.

The compiled module is preferred when importable.  Set the environment
variable ``PDCSIM_PURE=1`` to force the fallback (used by the parity
tests and the benchmark).  Array entry points accept anything numpy can
broadcast; the compiled backend runs over flattened views.
"""

import os

import numpy as np

from . import _pure

_compiled = None
if os.environ.get("PDCSIM_PURE", "") != "1":
    try:
        from . import _core as _compiled  # type: ignore[attr-defined]
    except ImportError:
        _compiled = None

BACKEND = "pure" if _compiled is None else "compiled"


def _plain_adapter(flat):
    def wrapped(A, B, C, D, wl):
        arr = np.asarray(wl, dtype=np.float64)
        out = flat(A, B, C, D, np.ascontiguousarray(arr.ravel()))
        return out.reshape(arr.shape) if arr.ndim else out[0]

    return wrapped


def _angle_adapter(flat):
    def wrapped(Aa, Ba, Ca, Da, Ab, Bb, Cb, Db, theta, wl):
        th, w = np.broadcast_arrays(
            np.asarray(theta, dtype=np.float64), np.asarray(wl, dtype=np.float64)
        )
        out = flat(
            Aa, Ba, Ca, Da, Ab, Bb, Cb, Db,
            np.ascontiguousarray(th.ravel()),
            np.ascontiguousarray(w.ravel()),
        )
        return out.reshape(th.shape) if th.ndim else out[0]

    return wrapped


if _compiled is None:
    n2_scalar = _pure.n2_scalar
    dn2_dwl_scalar = _pure.dn2_dwl_scalar
    index_scalar = _pure.index_scalar
    group_index_scalar = _pure.group_index_scalar
    angle_index_scalar = _pure.angle_index_scalar
    angle_group_index_scalar = _pure.angle_group_index_scalar

    n2_array = _pure.n2_array
    dn2_dwl_array = _pure.dn2_dwl_array
    index_array = _pure.index_array
    group_index_array = _pure.group_index_array
    angle_index_array = _pure.angle_index_array
    angle_group_index_array = _pure.angle_group_index_array
else:
    n2_scalar = _compiled.n2_scalar
    dn2_dwl_scalar = _compiled.dn2_dwl_scalar
    index_scalar = _compiled.index_scalar
    group_index_scalar = _compiled.group_index_scalar
    angle_index_scalar = _compiled.angle_index_scalar
    angle_group_index_scalar = _compiled.angle_group_index_scalar

    n2_array = _plain_adapter(_compiled.n2_flat)
    dn2_dwl_array = _plain_adapter(_compiled.dn2_dwl_flat)
    index_array = _plain_adapter(_compiled.index_flat)
    group_index_array = _plain_adapter(_compiled.group_index_flat)
    angle_index_array = _angle_adapter(_compiled.angle_index_flat)
    angle_group_index_array = _angle_adapter(_compiled.angle_group_index_flat)

pure = _pure
compiled = _compiled
