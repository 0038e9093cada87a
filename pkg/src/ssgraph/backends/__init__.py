"""Selectable compute kernels for dense polynomial arithmetic over F_{p^2}.

Three interchangeable lanes expose the same packed-polynomial API:

* ``numba``  -- ahead-of-time @njit kernels (default when numba imports)
* ``numpy``  -- vectorized int64 fallback, no compilation step
* ``object`` -- pure-Python big-integer reference lane, works for any p

A packed polynomial is lane-specific (an int64 array of shape ``(2, n)``
for the fast lanes, a list of coefficient pairs for the object lane); use
``from_pairs``/``to_pairs`` to cross the boundary.  Row 0 holds the F_p
part of each coefficient, row 1 the coefficient of t where t^2 = ns.

The active lane is chosen by the ``SSGRAPH_BACKEND`` environment variable
(``numba`` / ``numpy`` / ``object``) or programmatically via
:func:`set_backend`.  The fast lanes require p < 2**31 so that every
intermediate product fits in a signed 64-bit word; :func:`lane_for_prime`
routes larger primes to the object lane no matter what was selected.
"""

from __future__ import annotations

import os

LANE_NAMES = ("numba", "numpy", "object")

#: primes at or above this bound must use the object lane
FAST_LANE_PRIME_LIMIT = 2 ** 31

_loaded = {}
_selected: str | None = None


def _load(name: str):
    if name == "numba":
        from . import numba_kernels as mod
    elif name == "numpy":
        from . import numpy_kernels as mod
    elif name == "object":
        from . import object_kernels as mod
    else:
        raise ValueError(f"unknown backend {name!r}; expected one of {LANE_NAMES}")
    return mod


def get_lane(name: str):
    """Return the kernel module for *name*, importing it on first use."""
    if name not in _loaded:
        _loaded[name] = _load(name)
    return _loaded[name]


def available_lanes() -> tuple[str, ...]:
    """Names of lanes that import cleanly on this machine."""
    out = []
    for name in LANE_NAMES:
        try:
            get_lane(name)
        except Exception:  # pragma: no cover - numba missing/broken
            continue
        out.append(name)
    return tuple(out)


def default_backend_name() -> str:
    env = os.environ.get("SSGRAPH_BACKEND", "").strip().lower()
    if env:
        if env not in LANE_NAMES:
            raise ValueError(
                f"SSGRAPH_BACKEND={env!r} not recognized; expected one of {LANE_NAMES}"
            )
        return env
    try:
        get_lane("numba")
        return "numba"
    except Exception:  # pragma: no cover - numba missing/broken
        return "numpy"


def set_backend(name: str):
    """Select the lane used for primes below the fast-lane limit."""
    global _selected
    if name not in LANE_NAMES:
        raise ValueError(f"unknown backend {name!r}; expected one of {LANE_NAMES}")
    mod = get_lane(name)
    _selected = name
    return mod


def get_backend():
    """The currently selected kernel module (resolving the default lazily)."""
    global _selected
    if _selected is None:
        _selected = default_backend_name()
    return get_lane(_selected)


def backend_name() -> str:
    get_backend()
    assert _selected is not None
    return _selected


def lane_for_prime(p: int):
    """Kernel module to use for characteristic *p*.

    Primes too large for 64-bit intermediate products are always served by
    the object lane; everything else goes to the selected backend.
    """
    if p >= FAST_LANE_PRIME_LIMIT:
        return get_lane("object")
    return get_backend()
