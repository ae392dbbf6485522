"""Select the word-reduction kernel at import time.

The compiled ``_kernel`` extension is used when it was built; otherwise the
pure-Python implementation in ``_kernel_py``.  Set ``SKELCAT_PURE_PYTHON=1``
to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernel_py

PythonWordKernel = _kernel_py.WordKernel

try:
    from ._kernel import WordKernel as CompiledWordKernel
except ImportError:  # extension not built
    CompiledWordKernel = None

if CompiledWordKernel is not None and not os.environ.get("SKELCAT_PURE_PYTHON"):
    WordKernel = CompiledWordKernel
else:
    WordKernel = PythonWordKernel

BACKEND = WordKernel.backend

__all__ = ["BACKEND", "CompiledWordKernel", "PythonWordKernel", "WordKernel"]
