"""Hot loops of the variance oracle.

The compiled extension is used when it was built; otherwise the numpy
implementation is loaded. Set ``CASIMIR_FLUCT_PURE=1`` to force the
fallback (the benchmark and the backend-equivalence tests do this).
"""
import os

from . import _pykernels as py

BACKEND = "python"
if os.environ.get("CASIMIR_FLUCT_PURE") != "1":
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = py
else:
    _impl = py

variance_pair_sum = _impl.variance_pair_sum
variance_pair_terms = _impl.variance_pair_terms

__all__ = ["BACKEND", "py", "variance_pair_sum", "variance_pair_terms"]
