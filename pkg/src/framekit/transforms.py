"""Mapping one frame onto another through a coefficient-space operator.

Given a frame {f_j} with synthesis matrix T and an m' x m matrix U, the
transformed family is g_i = sum_j U[i, j] f_j; its synthesis matrix is
T @ U.T (plain transpose, no conjugation).  The module also provides the
derived diagnostics: the lower-bound ratio gamma of U on the range of
the analysis map, the kernel-dimension identity

    dim ker(T U^T) = dim(range(U^T) ∩ ker T) + (m' - rank U),

and the surjectivity criterion for conj(U) on range(T*), which decides
whether the transformed family is a Riesz sequence.

Matrix files are CSV (m' rows x m columns, real) or a JSON document
{"field": "real"|"complex", "entries": [[row], ...]} with complex
scalars written as [re, im] pairs.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np

from .frames import Frame
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
    null_space_basis,
    range_basis,
    rank,
    subspace_intersection_dim,
)


@dataclass(frozen=True)
class KernelDimensionCheck:
    """Both sides of the kernel-dimension identity, computed independently."""

    lhs: int
    rhs_intersection: int
    rhs_corange: int

    @property
    def agree(self) -> bool:
        return self.lhs == self.rhs_intersection + self.rhs_corange


def _check_shapes(frame: Frame, u: np.ndarray) -> None:
    if u.shape[1] != frame.size:
        raise ValueError(
            f"transform matrix has {u.shape[1]} columns for a frame of {frame.size} vectors"
        )


def transform(frame: Frame, u) -> Frame:
    """Transformed family g_i = sum_j U[i, j] f_j, synthesis matrix T @ U.T."""
    u = as_matrix(u)
    _check_shapes(frame, u)
    return Frame(frame.matrix @ u.T)


def _criterion_restriction(frame: Frame, u: np.ndarray, tol: Tolerance) -> np.ndarray | None:
    """conj(U) composed with an orthonormal basis of range(T*), or None if empty.

    The analysis map of the transformed family factors as conj(U) T*, so
    the conjugate matrix is the one whose behaviour on range(T*) decides
    the lower frame condition.  On real data this is U itself.
    """
    q = range_basis(frame.matrix.conj().T, tol)
    if q.dim == 0:
        return None
    return u.conj().astype(np.result_type(u.dtype, q.vectors.dtype)) @ q.vectors


def frame_criterion_gamma(frame: Frame, u, tol: Tolerance = DEFAULT_TOL) -> float:
    """Smallest singular value of the coefficient operator on the analysis range.

    The transformed family is a frame for the span of the source exactly
    when this is positive (at tolerance).  A zero frame has an empty
    analysis range and yields infinity (the restriction is vacuous).
    """
    u = as_matrix(u)
    _check_shapes(frame, u)
    restricted = _criterion_restriction(frame, u, tol)
    if restricted is None:
        return float("inf")
    if restricted.shape[0] < restricted.shape[1]:
        return 0.0  # fewer output rows than domain dimensions: kernel is forced
    return float(np.linalg.svd(restricted, compute_uv=False)[-1])


def frame_criterion_verdict(frame: Frame, u, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether gamma is positive at rank tolerance, i.e. the coefficient
    operator is injective on the analysis range.  Equivalent to the
    transformed family spanning span(F)."""
    u = as_matrix(u)
    _check_shapes(frame, u)
    restricted = _criterion_restriction(frame, u, tol)
    if restricted is None:
        return True
    return rank(restricted, tol) == restricted.shape[1]


def transform_spans_source(frame: Frame, u, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Direct check that the transformed family spans the span of the source."""
    u = as_matrix(u)
    _check_shapes(frame, u)
    return rank(frame.matrix @ u.T, tol) == rank(frame.matrix, tol)


def kernel_dimension_check(
    frame: Frame, u, tol: Tolerance = DEFAULT_TOL
) -> KernelDimensionCheck:
    """dim ker(T U^T) against dim(range(U^T) ∩ ker T) + dim(range U)^perp."""
    u = as_matrix(u)
    _check_shapes(frame, u)
    lhs = u.shape[0] - rank(frame.matrix @ u.T, tol)
    rhs_intersection = subspace_intersection_dim(
        range_basis(u.T, tol), null_space_basis(frame.matrix, tol), tol
    )
    rhs_corange = u.shape[0] - rank(u, tol)
    return KernelDimensionCheck(lhs, rhs_intersection, rhs_corange)


def surjectivity_riesz_check(frame: Frame, u, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether conj(U) maps range(T*) onto the full transformed coefficient space.

    Full row rank of the restriction is equivalent to the transformed
    family being a Riesz sequence (a Riesz basis for its closed span).
    """
    u = as_matrix(u)
    _check_shapes(frame, u)
    q = range_basis(frame.matrix.conj().T, tol)
    restricted = u.conj().astype(np.result_type(u.dtype, q.vectors.dtype)) @ q.vectors
    return rank(restricted, tol) == u.shape[0]


def recover_transform(source: Frame, target: Frame, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Least-squares U with target synthesis ≈ T @ U.T (a convenience, not exact
    recovery: the fit is only as good as span containment allows)."""
    if source.dim != target.dim:
        raise ValueError("source and target frames live in different dimensions")
    t_pinv = np.linalg.pinv(source.matrix, rcond=tol.rank_rel * max(source.matrix.shape))
    return (t_pinv @ target.matrix).T


# ---------------------------------------------------------------------------
# matrix files


def matrix_to_json_dict(u) -> dict:
    u = as_matrix(u)
    cplx = np.iscomplexobj(u)
    entries = [
        [[complex(x).real, complex(x).imag] if cplx else float(x) for x in row] for row in u
    ]
    return {"field": "complex" if cplx else "real", "entries": entries}


def matrix_from_json_dict(doc: dict) -> np.ndarray:
    try:
        field = doc["field"]
        entries = doc["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"matrix document missing required key: {exc}") from exc
    if field == "complex":
        rows = [[complex(re, im) for re, im in row] for row in entries]
    elif field == "real":
        rows = [[float(x) for x in row] for row in entries]
    else:
        raise ValueError(f"unknown field kind {field!r}")
    if not rows:
        raise ValueError("matrix document has no rows")
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ValueError("matrix document has ragged rows")
    return as_matrix(np.array(rows))


def save_matrix(path, u) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_json_dict(u), fh)
        fh.write("\n")


def load_matrix(path) -> np.ndarray:
    text = str(path)
    if text.endswith(".csv"):
        return load_matrix_csv(path)
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: malformed JSON at line {exc.lineno}: {exc.msg}") from exc
    return matrix_from_json_dict(doc)


def save_matrix_csv(path, u) -> None:
    u = as_matrix(u)
    if np.iscomplexobj(u):
        raise ValueError("CSV matrix files are real-only; use JSON for complex matrices")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        for row in u:
            writer.writerow([repr(float(x)) for x in row])


def load_matrix_csv(path) -> np.ndarray:
    rows = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row:
                continue
            try:
                rows.append([float(x) for x in row])
            except ValueError as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}") from exc
    if not rows:
        raise ValueError(f"{path}: empty CSV matrix file")
    return as_matrix(np.array(rows))
