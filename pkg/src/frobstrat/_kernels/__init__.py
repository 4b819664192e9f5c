"""Row-reduction kernels.

The compiled Cython module is used when it was built; otherwise, or when
``FROBSTRAT_PURE_PYTHON`` is set, the numpy fallback is selected.
"""

import os

from . import fallback

try:
    from . import _rref as compiled
except ImportError:  # extension not built
    compiled = None

if compiled is not None and not os.environ.get("FROBSTRAT_PURE_PYTHON"):
    BACKEND = "cython"
    _impl = compiled
else:
    BACKEND = "python"
    _impl = fallback


def backend(name=None):
    """Return the kernel module by name ('cython' or 'python'), default active."""
    if name is None:
        return _impl
    if name == "python":
        return fallback
    if name == "cython":
        if compiled is None:
            raise ImportError("compiled kernel not built")
        return compiled
    raise ValueError(name)


def rref_prime(M, p):
    return _impl.rref_prime(M, p)


def rref_zech(M, exp, log, zech, q):
    return _impl.rref_zech(M, exp, log, zech, q)
