"""Kernel backend selection.

The compiled extension is used when importable; set ``QINV_PURE_PYTHON=1``
to force the pure-Python fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("QINV_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels


def box_points(base, basis, lo, hi, qn, lin, bound):
    return _impl.box_points(base, basis, lo, hi, qn, lin, bound)


def accumulate(points, qn, lins, consts, signs, emin, length):
    return _impl.accumulate(points, qn, lins, consts, signs, emin, length)


def mul_trunc(a, b, n):
    if _impl is _pykernels:
        return _pykernels.mul_trunc(a, b, n)
    try:
        return _impl.mul_trunc(a, b, n)
    except (OverflowError, TypeError):
        # big coefficients: exact Python integers
        return _pykernels.mul_trunc(a, b, n)


def use_backend(name: str) -> None:
    """Switch backend at runtime ("cython" or "python"); for tests/benchmarks."""
    global _impl, BACKEND
    if name == "python":
        _impl, BACKEND = _pykernels, "python"
    elif name == "cython":
        from . import _ckernels

        _impl, BACKEND = _ckernels, "cython"
    else:
        raise ValueError(f"unknown backend {name!r}")
