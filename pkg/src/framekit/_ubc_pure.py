"""Vectorised numpy fallback for the sign-pattern spectral-norm scan.

Patterns are enumerated in Gray-code order over the last m-1 signs with
the first sign pinned to +1 (flipping every sign leaves the norm
unchanged).  Work proceeds in chunks: for a chunk of patterns the
matrices T * diag(signs) * Tpinv are assembled with one tensordot against
the precomputed column-times-row outer products and fed to a single
batched SVD call.
"""

from __future__ import annotations

import numpy as np

CHUNK = 2048


def gray_signs(start: int, count: int, m: int) -> np.ndarray:
    """Sign matrix (count x m) for Gray codes start..start+count-1, first sign +1."""
    codes = np.arange(start, start + count, dtype=np.uint64)
    codes = codes ^ (codes >> np.uint64(1))
    bits = (codes[:, None] >> np.arange(m - 1, dtype=np.uint64)[None, :]) & np.uint64(1)
    signs = np.ones((count, m))
    signs[:, 1:] = 1.0 - 2.0 * bits.astype(np.float64)
    return signs


def scan(synthesis: np.ndarray, pseudo_inverse: np.ndarray) -> tuple[float, np.ndarray]:
    """Max over sign patterns of || T diag(signs) Tpinv ||_2 and an argmax pattern."""
    d, m = synthesis.shape
    total = 1 << (m - 1)
    # outer[k] = column k of T times row k of Tpinv; signed sums give the scan matrices
    outer = synthesis.T[:, :, None] * pseudo_inverse[:, None, :]
    best_val = -np.inf
    best_signs = None
    for start in range(0, total, CHUNK):
        count = min(CHUNK, total - start)
        signs = gray_signs(start, count, m)
        mats = np.tensordot(signs.astype(outer.dtype), outer, axes=([1], [0]))
        vals = np.linalg.svd(mats, compute_uv=False)[:, 0]
        k = int(np.argmax(vals))
        if vals[k] > best_val:
            best_val = float(vals[k])
            best_signs = signs[k].copy()
    return best_val, best_signs
