"""Backend selection for the integer elimination kernels.

The compiled extension is used when it was built; otherwise, or when
``MULTIOP_PURE_PYTHON`` is set to a non-empty value, the pure-Python module is
used.  ``BACKEND`` records which one is active.
"""
import importlib.util
import os

from . import _bareiss_py

if os.environ.get("MULTIOP_PURE_PYTHON"):
    _impl = _bareiss_py
else:
    try:
        from . import _bareiss_ext as _impl
    except ImportError:
        _impl = _bareiss_py

BACKEND = "python" if _impl is _bareiss_py else "cython"

det_int = _impl.det_int
solve_int = _impl.solve_int


def compiled_available():
    return importlib.util.find_spec(f"{__package__}._bareiss_ext") is not None
