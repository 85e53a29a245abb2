"""Pick the traversal kernel at import time.

The compiled ``_ckernel`` is used when it was built; otherwise, or when the
environment variable ``CUBICTAU_KERNEL=python`` is set, the pure-Python
``_pykernel`` is used. Both expose ``count_subtree`` with one contract.
"""

import os

from . import _pykernel

python_kernel = _pykernel

try:
    from . import _ckernel as compiled_kernel
except ImportError:  # extension not built
    compiled_kernel = None

if compiled_kernel is not None and os.environ.get("CUBICTAU_KERNEL", "").lower() != "python":
    active = compiled_kernel
    BACKEND = "compiled"
else:
    active = python_kernel
    BACKEND = "python"


def available():
    """Name -> module for every kernel importable in this environment."""
    out = {"python": python_kernel}
    if compiled_kernel is not None:
        out["compiled"] = compiled_kernel
    return out


def get(name=None):
    if name is None:
        return active
    kernels = available()
    if name not in kernels:
        raise ValueError(f"kernel {name!r} not available (have: {', '.join(kernels)})")
    return kernels[name]
