"""Hot-kernel dispatch: compiled extension when available, numpy otherwise.

Set ``TWRSEC_FORCE_REFERENCE=1`` to force the pure-numpy implementation
(useful for debugging and for the kernel benchmark).
"""

import os

from . import _reference

if os.environ.get("TWRSEC_FORCE_REFERENCE"):
    _impl = _reference
else:
    try:
        from . import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _reference

BACKEND = _impl.BACKEND
sum_secrecy_batch = _impl.sum_secrecy_batch

__all__ = ["BACKEND", "sum_secrecy_batch"]
