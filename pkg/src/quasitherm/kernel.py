"""Kernel backend selection.

The hot inner loop of every sweep is the one-period integration of the Hill
basis pair. Two interchangeable implementations exist:

* ``compiled`` -- Cython extension (_hill_fast), used when importable;
* ``python``   -- scipy DOP853 fallback (_hill_py), always available.

The default is the compiled kernel when present. ``QUASITHERM_KERNEL`` (set
to ``compiled`` or ``python``) overrides the choice at import time, and
``use()`` switches at runtime (used by tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _hill_py

try:
    from . import _hill_fast
except ImportError:
    _hill_fast = None

_BACKENDS = {"python": _hill_py}
if _hill_fast is not None:
    _BACKENDS["compiled"] = _hill_fast


def _default():
    forced = os.environ.get("QUASITHERM_KERNEL")
    if forced is not None:
        if forced not in ("compiled", "python"):
            raise ImportError(f"QUASITHERM_KERNEL={forced!r}: "
                              "expected 'compiled' or 'python'")
        if forced not in _BACKENDS:
            raise ImportError("QUASITHERM_KERNEL=compiled but the extension "
                              "is not built")
        return _BACKENDS[forced]
    return _BACKENDS.get("compiled", _hill_py)


_active = _default()


def active() -> str:
    """Name of the kernel in use ('compiled' or 'python')."""
    return _active.NAME


def available() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def use(name: str) -> None:
    """Switch kernels at runtime; raises KeyError for unknown/unbuilt names."""
    global _active
    _active = _BACKENDS[name]


def hill_basis(a: float, q: float, rtol: float, atol: float, n_grid: int = 0):
    """Dispatch to the active kernel; see _hill_py.hill_basis for the contract."""
    return _active.hill_basis(a, q, rtol, atol, n_grid)


# generic spring-function path (pure Python only; internal cross-check use)
hill_basis_spring = _hill_py.hill_basis_spring
