"""Select the compiled kernels when available, else the numpy fallback.

Set ``RAIDKIT_PURE=1`` to force the fallback.
"""
import os

from . import _fallback

BACKEND = "python"
_impl = _fallback
if os.environ.get("RAIDKIT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _core as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        _impl = _fallback

batch_full_rank = _impl.batch_full_rank
race_one = _impl.race_one
hraid_one = _impl.hraid_one


def backend(name):
    """Return the kernel namespace for ``name`` in {'python', 'cython'}."""
    if name == "python":
        return _fallback
    from . import _core
    return _core
