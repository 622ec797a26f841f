"""Backend selection for the sign-pattern spectral-norm scan.

The compiled extension (``framekit._ubc_fast``) is used when it imported
successfully and the input is real; the vectorised numpy implementation
covers everything else, including complex synthesis matrices.  Both
enumerate the same Gray-code order, so results are interchangeable.
"""

from __future__ import annotations

import numpy as np

from . import _ubc_pure

try:
    from . import _ubc_fast

    HAVE_COMPILED = True
except ImportError:  # extension not built; numpy path handles everything
    _ubc_fast = None
    HAVE_COMPILED = False


def available_backends() -> tuple[str, ...]:
    return ("compiled", "numpy") if HAVE_COMPILED else ("numpy",)


def scan_sign_patterns(
    synthesis: np.ndarray,
    pseudo_inverse: np.ndarray,
    backend: str | None = None,
) -> tuple[float, np.ndarray, str]:
    """Max of ||T diag(s) Tpinv||_2 over patterns s with s[0] = +1.

    Returns (value, argmax pattern, backend used).  ``backend`` forces
    "compiled" or "numpy"; by default the compiled kernel is used for
    real inputted matrices whenever it is available.
    """
    complex_input = np.iscomplexobj(synthesis) or np.iscomplexobj(pseudo_inverse)
    if backend is None:
        backend = "compiled" if (HAVE_COMPILED and not complex_input) else "numpy"
    if backend == "compiled":
        if not HAVE_COMPILED:
            raise RuntimeError("compiled sign-scan backend is not available")
        if complex_input:
            raise ValueError("compiled sign-scan backend handles real matrices only")
        value, gray_index = _ubc_fast.scan(synthesis, pseudo_inverse)
        signs = _ubc_fast.gray_index_to_signs(gray_index, synthesis.shape[1])
        return float(value), signs, "compiled"
    if backend == "numpy":
        value, signs = _ubc_pure.scan(np.asarray(synthesis), np.asarray(pseudo_inverse))
        return float(value), signs, "numpy"
    raise ValueError(f"unknown backend {backend!r}")
