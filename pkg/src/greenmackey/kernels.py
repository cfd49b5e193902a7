"""Backend selection for the enumeration and normal-form kernels.

The compiled extension is used when it was built; otherwise, or when
``GREENMACKEY_PURE=1`` is set, the pure-Python twin is loaded.
"""

import os

if os.environ.get("GREENMACKEY_PURE", "") not in ("", "0"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
prepare = _impl.prepare
perm_closure = _impl.perm_closure
mul_table = _impl.mul_table
generated = _impl.generated
enumerate_subgroups = _impl.enumerate_subgroups
left_coset_reps = _impl.left_coset_reps
double_coset_reps = _impl.double_coset_reps
snf = _impl.snf

__all__ = [
    "BACKEND", "prepare", "perm_closure", "mul_table", "generated",
    "enumerate_subgroups", "left_coset_reps", "double_coset_reps", "snf",
]
