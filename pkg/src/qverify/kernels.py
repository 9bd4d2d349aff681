"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``QVERIFY_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("QVERIFY_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
mul_terms = _impl.mul_terms
mul_binomial = _impl.mul_binomial
divide_binomial = _impl.divide_binomial
inverse_terms = _impl.inverse_terms


def compiled_available() -> bool:
    try:
        from . import _kernels  # type: ignore[attr-defined]  # noqa: F401
    except ImportError:
        return False
    return True
