"""Kernel backend selection.

Two interchangeable kernel implementations exist: numba-compiled loops
(:mod:`vortexlab._kernels_numba`) and pure-numpy slicing
(:mod:`vortexlab._kernels_numpy`).  The active one is chosen once from the
``VORTEXLAB_BACKEND`` environment variable (``auto``, ``numba`` or ``numpy``)
and can be switched at runtime with :func:`set_backend`, which the benchmark
uses to compare both in one process.
"""

from __future__ import annotations

import os
import warnings

_ENV_VAR = "VORTEXLAB_BACKEND"

_active_name: str | None = None
_active_module = None


def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def _load(name: str):
    if name == "numba":
        from . import _kernels_numba as mod
    elif name == "numpy":
        from . import _kernels_numpy as mod
    else:
        raise ValueError(f"unknown backend {name!r} (expected 'numba' or 'numpy')")
    return mod


def set_backend(name: str) -> str:
    """Force the kernel backend; returns the name actually activated."""
    global _active_name, _active_module
    if name == "auto":
        name = "numba" if numba_available() else "numpy"
    _active_module = _load(name)
    _active_name = name
    return name


def backend_name() -> str:
    if _active_name is None:
        _init_from_env()
    return _active_name


def kernels():
    """Return the active kernel module."""
    if _active_module is None:
        _init_from_env()
    return _active_module


def _init_from_env() -> None:
    requested = os.environ.get(_ENV_VAR, "auto").strip().lower()
    if requested not in ("auto", "numba", "numpy"):
        warnings.warn(
            f"{_ENV_VAR}={requested!r} not recognized, falling back to 'auto'",
            stacklevel=2,
        )
        requested = "auto"
    if requested == "numba" and not numba_available():
        warnings.warn("numba requested but not importable, using numpy kernels", stacklevel=2)
        requested = "numpy"
    set_backend(requested)
