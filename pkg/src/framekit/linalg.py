"""Rank-revealing dense linear algebra kernel.

Every higher-level module reduces its questions to a handful of
primitives implemented here: singular values, numerical rank, orthonormal
null-space and range bases, orthogonal projections, and the two integer
identities for subspace dimensions (intersection and preimage).  All
routines accept real or complex 2-d arrays and are pure functions of
their inputs.

The rank threshold is ``rank_rel * sigma_max * max(rows, cols)``, the
standard rank-revealing convention, so the integer dimension identities
(rank + nullity, preimage dimension) are robust for the dense sizes this
package targets (dims up to a few hundred).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class ConsistencyError(RuntimeError):
    """Two independent computations of the same integer disagreed."""


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds used across the toolkit.

    rank_rel: relative singular-value cutoff for rank decisions.
    eq_abs:   absolute threshold for "equal / zero" comparisons.
    """

    rank_rel: float = 1e-12
    eq_abs: float = 1e-9

    def __post_init__(self):
        if not (self.rank_rel > 0 and self.eq_abs > 0):
            raise ValueError("tolerances must be positive")


DEFAULT_TOL = Tolerance()


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-d float64/complex128 array, rejecting NaN/Inf."""
    m = np.asarray(a)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {m.shape}")
    if np.iscomplexobj(m):
        m = m.astype(np.complex128, copy=False)
    else:
        m = m.astype(np.float64, copy=False)
    if m.size and not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def as_vector(v, dim: int | None = None) -> np.ndarray:
    """Coerce to a 1-d float64/complex128 array of optional required length."""
    x = np.asarray(v)
    if x.ndim != 1:
        raise ValueError(f"expected a 1-d array, got shape {x.shape}")
    x = x.astype(np.complex128 if np.iscomplexobj(x) else np.float64, copy=False)
    if x.size and not np.all(np.isfinite(x)):
        raise ValueError("vector entries must be finite")
    if dim is not None and x.shape[0] != dim:
        raise ValueError(f"expected length {dim}, got {x.shape[0]}")
    return x


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal basis of a subspace, stored as columns.

    ``vectors`` has shape (ambient_dim, k); k == 0 encodes the zero
    subspace.  Columns are orthonormal up to machine precision.
    """

    ambient_dim: int
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __post_init__(self):
        if self.vectors.ndim != 2 or self.vectors.shape[0] != self.ambient_dim:
            raise ValueError("basis vectors must be columns of length ambient_dim")


def singular_values(m) -> np.ndarray:
    """Singular values of ``m`` in non-increasing order (length min(rows, cols))."""
    return np.linalg.svd(as_matrix(m), compute_uv=False)


def _rank_threshold(sv: np.ndarray, shape: tuple[int, int], tol: Tolerance) -> float:
    if sv.size == 0:
        return 0.0
    return tol.rank_rel * float(sv[0]) * max(shape)


def rank(m, tol: Tolerance = DEFAULT_TOL) -> int:
    """Numerical rank: count of singular values above the relative threshold."""
    m = as_matrix(m)
    sv = np.linalg.svd(m, compute_uv=False)
    return int(np.count_nonzero(sv > _rank_threshold(sv, m.shape, tol)))


def null_space_basis(m, tol: Tolerance = DEFAULT_TOL) -> SubspaceBasis:
    """Orthonormal basis of the kernel {c : Mc = 0}, dimension cols - rank."""
    m = as_matrix(m)
    rows, cols = m.shape
    if min(rows, cols) == 0:
        return SubspaceBasis(cols, np.eye(cols, dtype=m.dtype))
    _, sv, vh = np.linalg.svd(m)
    r = int(np.count_nonzero(sv > _rank_threshold(sv, m.shape, tol)))
    return SubspaceBasis(cols, vh[r:].conj().T.copy())


def range_basis(m, tol: Tolerance = DEFAULT_TOL) -> SubspaceBasis:
    """Orthonormal basis of the column span, dimension rank."""
    m = as_matrix(m)
    rows, cols = m.shape
    if min(rows, cols) == 0:
        return SubspaceBasis(rows, np.zeros((rows, 0), dtype=m.dtype))
    u, sv, _ = np.linalg.svd(m)
    r = int(np.count_nonzero(sv > _rank_threshold(sv, m.shape, tol)))
    return SubspaceBasis(rows, u[:, :r].copy())


def project_onto_span(basis: SubspaceBasis, f) -> np.ndarray:
    """Orthogonal projection of ``f`` onto the subspace spanned by ``basis``."""
    x = as_vector(f, basis.ambient_dim)
    b = basis.vectors
    if b.shape[1] == 0:
        return np.zeros_like(x)
    p = b @ (b.conj().T @ x)
    return p


def subspace_intersection_dim(
    b1: SubspaceBasis, b2: SubspaceBasis, tol: Tolerance = DEFAULT_TOL
) -> int:
    """dim(B1 ∩ B2) via dim B1 + dim B2 - rank([B1 | B2])."""
    if b1.ambient_dim != b2.ambient_dim:
        raise ValueError("bases live in different ambient spaces")
    if b1.dim == 0 or b2.dim == 0:
        return 0
    v1, v2 = b1.vectors, b2.vectors
    if np.iscomplexobj(v1) or np.iscomplexobj(v2):
        v1 = v1.astype(np.complex128, copy=False)
        v2 = v2.astype(np.complex128, copy=False)
    stacked = np.hstack([v1, v2])
    return b1.dim + b2.dim - rank(stacked, tol)


def preimage_dimension(v, z: SubspaceBasis, tol: Tolerance = DEFAULT_TOL) -> int:
    """dim{x : Vx ∈ Z}, computed two independent ways that must agree.

    Direct route: kernel dimension of (I - P_Z) V, with P_Z the orthogonal
    projection onto Z.  Identity route: dim(Z ∩ range V) + dim(ker V).
    Disagreement (which would indicate a borderline rank decision) raises
    ConsistencyError instead of silently returning either number.
    """
    v = as_matrix(v)
    rows, cols = v.shape
    if z.ambient_dim != rows:
        raise ValueError("Z must live in the codomain of V")
    zb = z.vectors
    if np.iscomplexobj(v) or np.iscomplexobj(zb):
        v = v.astype(np.complex128, copy=False)
        zb = zb.astype(np.complex128, copy=False)
    off_z = v - zb @ (zb.conj().T @ v)
    # The residual must be judged at the scale of V: projecting can only
    # shrink entries, and a pure-roundoff residual still has a "largest"
    # singular value of its own that a self-relative threshold would keep.
    sv_v = np.linalg.svd(v, compute_uv=False)
    thresh = _rank_threshold(sv_v, v.shape, tol)
    sv_off = np.linalg.svd(off_z, compute_uv=False)
    direct = cols - int(np.count_nonzero(sv_off > thresh))
    identity = subspace_intersection_dim(z, range_basis(v, tol), tol) + (cols - rank(v, tol))
    if direct != identity:
        raise ConsistencyError(
            f"preimage dimension mismatch: direct={direct}, via identity={identity}"
        )
    return direct
