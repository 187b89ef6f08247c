"""Integrator kernel selection: compiled extension with pure-python fallback.

The Cython kernel is preferred when its extension module imported cleanly;
otherwise the numpy implementation is used.  ``RESONLAB_KERNEL=python`` or
``=cython`` forces a choice (forcing an unavailable compiled kernel is an
error rather than a silent fallback).
"""

from __future__ import annotations

import os

from . import _meanfield_py

_requested = os.environ.get("RESONLAB_KERNEL", "").strip().lower()

if _requested in ("python", "py"):
    _impl = _meanfield_py
elif _requested in ("cython", "cy"):
    from . import _meanfield_cy as _impl  # noqa: F401  (ImportError is the point)
elif _requested == "":
    try:
        from . import _meanfield_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _meanfield_py
else:
    raise ImportError(f"unknown RESONLAB_KERNEL value {_requested!r}")

rk4_trajectory = _impl.rk4_trajectory


def kernel_name() -> str:
    """Name of the active integrator kernel ('cython' or 'python')."""
    return _impl.KERNEL_NAME


def available_kernels() -> dict:
    """Map kernel name -> rk4_trajectory for every importable kernel."""
    kernels = {_meanfield_py.KERNEL_NAME: _meanfield_py.rk4_trajectory}
    try:
        from . import _meanfield_cy
        kernels[_meanfield_cy.KERNEL_NAME] = _meanfield_cy.rk4_trajectory
    except ImportError:
        pass
    return kernels
