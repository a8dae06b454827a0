"""Hot numerical kernels with a compiled and a pure-Python implementation.

The compiled extension (``_ckernels``, built from Cython) is used when it can
be imported.  Set ``COEFF_BOUNDS_BACKEND`` to ``python`` to force the NumPy
fallback or to ``cython`` to fail loudly when the extension is missing.

Flat point layout shared by the objective kernels: ``zeta_1`` as one real
(``real_z1``) or two reals, followed by ``(re, im)`` pairs for ``zeta_2``,
``zeta_3``, ``zeta_4``; trailing parameters that are omitted are zero.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

__all__ = [
    "BACKEND",
    "available_backends",
    "get_backend",
    "delta_abs_batch",
    "delta_abs_point",
    "omega_oracle",
]


def _load_compiled() -> ModuleType | None:
    try:
        from . import _ckernels  # type: ignore[attr-defined]
    except ImportError:
        return None
    return _ckernels


_compiled = _load_compiled()


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _compiled is not None else [])


def get_backend(name: str) -> ModuleType:
    if name == "python":
        return _pykernels
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built; reinstall with Cython available")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


_requested = os.environ.get("COEFF_BOUNDS_BACKEND", "auto").lower()
if _requested == "auto":
    BACKEND = "cython" if _compiled is not None else "python"
else:
    BACKEND = _requested
_impl = get_backend(BACKEND)

delta_abs_batch = _impl.delta_abs_batch
delta_abs_point = _impl.delta_abs_point
omega_oracle = _impl.omega_oracle
