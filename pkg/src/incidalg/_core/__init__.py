"""Backend selection for the elimination kernel.

Prefers the compiled Cython kernel when it was built; falls back to the
pure Python implementation otherwise.  ``INCIDALG_PURE_PYTHON=1`` forces
the fallback (used by the benchmark and the backend-equivalence tests).
"""

import os

if os.environ.get("INCIDALG_PURE_PYTHON"):
    from incidalg._core.echelon_py import BACKEND, fraction_free_gauss_jordan
else:
    try:
        from incidalg._core._echelon import BACKEND, fraction_free_gauss_jordan
    except ImportError:
        from incidalg._core.echelon_py import BACKEND, fraction_free_gauss_jordan

__all__ = ["BACKEND", "fraction_free_gauss_jordan"]
