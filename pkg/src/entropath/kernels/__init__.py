"""Integration kernels with a compiled core and a pure-Python fallback.

The compiled Cython module is preferred when it was built; otherwise the
reference implementation is used.  The two are kept arithmetically
identical.  Set ENTROPATH_KERNELS=reference or =compiled to force a
backend at import time (the benchmark suite uses this).
"""

import os

from . import _reference
from ._reference import (  # noqa: F401  (shared tags)
    GEO_DOMAIN_EXIT,
    GEO_DONE,
    GEO_DRIFT_FAIL,
    KIND_CONSTANT,
    KIND_EXPONENTIAL,
    KIND_OSCILLATORY,
    KIND_POWER_LAW,
)

try:
    from . import _core
except ImportError:
    _core = None

_forced = os.environ.get("ENTROPATH_KERNELS", "").strip().lower()
if _forced == "reference":
    _active = _reference
elif _forced == "compiled":
    if _core is None:
        raise ImportError(
            "ENTROPATH_KERNELS=compiled but the compiled core is not built"
        )
    _active = _core
elif _forced:
    raise ImportError(f"unknown ENTROPATH_KERNELS value: {_forced!r}")
else:
    _active = _core if _core is not None else _reference

BACKEND = "compiled" if _active is _core else "reference"

propagator_rk4 = _active.propagator_rk4
geodesic_rk4 = _active.geodesic_rk4


def available_backends():
    """Mapping of backend name -> kernel module, for benchmarks/tests."""
    out = {"reference": _reference}
    if _core is not None:
        out["compiled"] = _core
    return out
