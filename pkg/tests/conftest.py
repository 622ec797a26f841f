"""Shared oracles for the test suite.

These deliberately avoid the library's own SVD-based code paths: rank is
checked against Gaussian elimination with partial pivoting, and planted
low-rank instances are built as explicit products so the true rank is
known by construction (generic factors make rank deficiency of the
product a measure-zero event).
"""

from __future__ import annotations

import numpy as np


def ge_rank(matrix, tol: float = 1e-9) -> int:
    """Rank via row reduction with partial pivoting (independent of SVD)."""
    a = np.array(matrix, dtype=complex, copy=True)
    rows, cols = a.shape
    scale = max(np.max(np.abs(a)), 1.0)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = r + int(np.argmax(np.abs(a[r:, c])))
        if np.abs(a[pivot, c]) <= tol * scale:
            continue
        a[[r, pivot]] = a[[pivot, r]]
        a[r + 1 :] -= np.outer(a[r + 1 :, c] / a[r, c], a[r])
        r += 1
    return r


def random_planted(rng: np.random.Generator, rows: int, cols: int, rank: int, cplx: bool):
    """Matrix of exactly the requested rank (generic factor product)."""
    if rank == 0:
        return np.zeros((rows, cols), dtype=complex if cplx else float)
    a = rng.standard_normal((rows, rank))
    b = rng.standard_normal((rank, cols))
    if cplx:
        a = a + 1j * rng.standard_normal((rows, rank))
        b = b + 1j * rng.standard_normal((rank, cols))
    return a @ b


def random_orthonormal(rng: np.random.Generator, dim: int, k: int, cplx: bool = False):
    """dim x k matrix with orthonormal columns (QR of a generic matrix)."""
    a = rng.standard_normal((dim, k))
    if cplx:
        a = a + 1j * rng.standard_normal((dim, k))
    q, _ = np.linalg.qr(a)
    return q[:, :k]
