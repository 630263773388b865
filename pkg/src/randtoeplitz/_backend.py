"""Kernel selection: compiled extension when importable, numpy otherwise.

Set ``RANDTOEPLITZ_BACKEND=python`` to force the numpy fallback.
"""
import os

from . import _pykernels

python_kernels = _pykernels

compiled_kernels = None
if os.environ.get("RANDTOEPLITZ_BACKEND", "").lower() != "python":
    try:
        from . import _kernels as compiled_kernels
    except ImportError:
        compiled_kernels = None

kernels = compiled_kernels if compiled_kernels is not None else python_kernels
BACKEND = "cython" if compiled_kernels is not None else "python"
