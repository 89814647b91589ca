"""Kernel backend selection.

The hot range-list operations exist twice: a compiled extension
(fdsearch._kernel_cy, built from Cython) and a pure-Python fallback
(fdsearch._kernel_py). The compiled one is picked at import when
available; FDSEARCH_BACKEND=python|c forces a choice.

Callers must access the kernels through this module object
(``from fdsearch import kernel as K; K.dom_remove(...)``) so that
use_backend() can rebind them at runtime, e.g. for the backend
benchmark. ``from fdsearch.kernel import dom_remove`` would freeze the
binding and is not supported.
"""

import os

from . import _kernel_py

try:
    from . import _kernel_cy
except ImportError:
    _kernel_cy = None

BACKENDS = {"python": _kernel_py}
if _kernel_cy is not None:
    BACKENDS["c"] = _kernel_cy

_FORWARDED = [
    "dom_new", "dom_size", "dom_is_fixed", "dom_min", "dom_max", "dom_val",
    "dom_contains", "dom_values", "dom_equal", "dom_remove", "dom_tighten",
    "dom_overwrite", "store_clone", "store_equal", "store_ranges_total",
    "neq_filter", "linear_eq_filter", "linear_leq_filter", "alldiff_filter",
    "propagate_drain",
]

# Shared constants (identical in both backends).
KIND_NEQ = _kernel_py.KIND_NEQ
KIND_ALLDIFF = _kernel_py.KIND_ALLDIFF
KIND_LINEAR_EQ = _kernel_py.KIND_LINEAR_EQ
KIND_LINEAR_LEQ = _kernel_py.KIND_LINEAR_LEQ
OUTCOME_FIX_POINT = _kernel_py.OUTCOME_FIX_POINT
OUTCOME_INCONSISTENT = _kernel_py.OUTCOME_INCONSISTENT
OUTCOME_SOLVED = _kernel_py.OUTCOME_SOLVED

ACTIVE_BACKEND = None


def use_backend(name):
    """Rebind the kernel functions to the named backend."""
    global ACTIVE_BACKEND
    try:
        impl = BACKENDS[name]
    except KeyError:
        raise ValueError(
            "unknown kernel backend %r (available: %s)"
            % (name, ", ".join(sorted(BACKENDS)))
        ) from None
    for fname in _FORWARDED:
        globals()[fname] = getattr(impl, fname)
    ACTIVE_BACKEND = name
    return name


def available_backends():
    return sorted(BACKENDS)


_default = os.environ.get("FDSEARCH_BACKEND")
if _default is None:
    _default = "c" if "c" in BACKENDS else "python"
use_backend(_default)
