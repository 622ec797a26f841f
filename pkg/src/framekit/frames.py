"""Frames and the basic operator calculus on them.

A frame is an ordered family of m vectors in a d-dimensional real or
complex inner-product space, identified with its d x m synthesis matrix
(the i-th column is the i-th frame vector).  Inner products are linear
in the first slot and conjugate-linear in the second throughout the
package, so the analysis map sends f to the coefficient list <f, f_i>.

The module also owns the on-disk frame formats: a JSON document (real or
complex, complex scalars as [re, im] pairs, optional block metadata) and
a real-only CSV matrix with d rows and m columns.  Both round-trip
floating-point values exactly.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    SubspaceBasis,
    Tolerance,
    as_matrix,
    as_vector,
    _rank_threshold,
)


class DegenerateFrameError(ValueError):
    """Raised for operations undefined on the all-zero family."""


class OffSpanError(ValueError):
    """A vector required to lie in the frame's span has a large off-span part."""

    def __init__(self, residual: float, message: str | None = None):
        self.residual = residual
        super().__init__(message or f"vector lies off the span (residual {residual:.3e})")


@dataclass(frozen=True)
class Frame:
    """Ordered vector family, stored as the columns of ``matrix``."""

    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape[0] < 1 or m.shape[1] < 1:
            raise ValueError("a frame needs at least one vector in at least one dimension")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_vectors(cls, vectors) -> "Frame":
        """Build a frame from an iterable of equal-length vectors."""
        cols = [as_vector(v) for v in vectors]
        if not cols:
            raise ValueError("a frame needs at least one vector")
        return cls(np.column_stack(cols))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def size(self) -> int:
        return self.matrix.shape[1]

    @property
    def field(self) -> str:
        return "complex" if np.iscomplexobj(self.matrix) else "real"

    def vector(self, i: int) -> np.ndarray:
        return self.matrix[:, i].copy()


@dataclass(frozen=True)
class FrameBounds:
    """Optimal frame bounds of the family on its closed span.

    ``lower`` is the smallest nonzero eigenvalue of the frame operator
    (the span bound A), ``upper`` the largest.  ``spans_whole_space``
    records whether the family spans the full ambient space; when it does
    not, ``lower`` still reports the span bound rather than zero.
    """

    lower: float
    upper: float
    spans_whole_space: bool


class TightnessReport(NamedTuple):
    is_tight: bool
    constant: float | None


def synthesis(frame: Frame, coeffs) -> np.ndarray:
    """Linear combination sum_i c_i f_i."""
    c = as_vector(coeffs, frame.size)
    return frame.matrix @ c


def analysis(frame: Frame, f) -> np.ndarray:
    """Coefficient list {<f, f_i>}; equals T* f with T the synthesis matrix."""
    x = as_vector(f, frame.dim)
    return frame.matrix.conj().T @ x


def frame_operator(frame: Frame) -> np.ndarray:
    """S = T T*, the d x d positive-semidefinite frame operator."""
    t = frame.matrix
    return t @ t.conj().T


def frame_bounds(frame: Frame, tol: Tolerance = DEFAULT_TOL) -> FrameBounds:
    """Extreme nonzero squared singular values of the synthesis matrix."""
    sv = np.linalg.svd(frame.matrix, compute_uv=False)
    thresh = _rank_threshold(sv, frame.matrix.shape, tol)
    nonzero = sv[sv > thresh]
    r = nonzero.size
    if r == 0:
        return FrameBounds(0.0, 0.0, False)
    return FrameBounds(
        lower=float(nonzero[-1]) ** 2,
        upper=float(nonzero[0]) ** 2,
        spans_whole_space=(r == frame.dim),
    )


def span_basis(frame: Frame, tol: Tolerance = DEFAULT_TOL) -> SubspaceBasis:
    """Orthonormal basis of the span of the frame vectors."""
    from .linalg import range_basis

    return range_basis(frame.matrix, tol)


def dual_frame(frame: Frame, tol: Tolerance = DEFAULT_TOL) -> Frame:
    """Canonical dual {S+ f_i}, inverting S on the span and zero off it."""
    u, sv, vh = np.linalg.svd(frame.matrix)
    thresh = _rank_threshold(sv, frame.matrix.shape, tol)
    r = int(np.count_nonzero(sv > thresh))
    if r == 0:
        raise DegenerateFrameError("the all-zero family has no dual frame")
    ur = u[:, :r]
    # S+ = U_r diag(sv^-2) U_r*; dual synthesis = S+ T.
    s_pinv = (ur / sv[:r] ** 2) @ ur.conj().T
    return Frame(s_pinv @ frame.matrix)


def frame_coefficients(frame: Frame, f, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Canonical coefficients <f, S+ f_i>; synthesis of them reconstructs f.

    Requires f to lie in the span: an off-span component larger than
    ``eq_abs * ||f||`` raises OffSpanError carrying the residual norm.
    """
    x = as_vector(f, frame.dim)
    coeffs = analysis(dual_frame(frame, tol), x)
    residual = float(np.linalg.norm(frame.matrix @ coeffs - x))
    if residual > tol.eq_abs * float(np.linalg.norm(x)):
        raise OffSpanError(residual)
    return coeffs


def is_tight(frame: Frame, tol: Tolerance = DEFAULT_TOL) -> TightnessReport:
    """Whether upper and lower bounds coincide; returns the constant if so."""
    b = frame_bounds(frame, tol)
    if b.upper - b.lower <= tol.eq_abs * b.upper:
        return TightnessReport(True, 0.5 * (b.upper + b.lower))
    return TightnessReport(False, None)


# ---------------------------------------------------------------------------
# file formats


def _scalar_to_json(x, complex_field: bool):
    if complex_field:
        z = complex(x)
        return [z.real, z.imag]
    return float(x)


def frame_to_json_dict(frame: Frame, blocks: int | None = None) -> dict:
    cplx = frame.field == "complex"
    payload = {
        "dim": frame.dim,
        "field": frame.field,
        "vectors": [
            [_scalar_to_json(x, cplx) for x in frame.matrix[:, i]] for i in range(frame.size)
        ],
    }
    if blocks is not None:
        payload["blocks"] = int(blocks)
    return payload


def frame_from_json_dict(doc: dict) -> tuple[Frame, int | None]:
    try:
        dim = int(doc["dim"])
        field = doc["field"]
        raw = doc["vectors"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"frame document missing required key: {exc}") from exc
    if field not in ("real", "complex"):
        raise ValueError(f"unknown field kind {field!r}")
    if not raw:
        raise ValueError("frame document has no vectors")
    if field == "complex":
        cols = [[complex(re, im) for re, im in vec] for vec in raw]
    else:
        cols = [[float(x) for x in vec] for vec in raw]
    for vec in cols:
        if len(vec) != dim:
            raise ValueError(f"vector of length {len(vec)} in a dim-{dim} frame document")
    frame = Frame.from_vectors(cols)
    blocks = doc.get("blocks")
    return frame, (int(blocks) if blocks is not None else None)


def save_frame(path, frame: Frame, blocks: int | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(frame_to_json_dict(frame, blocks), fh)
        fh.write("\n")


def load_frame(path) -> tuple[Frame, int | None]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: malformed JSON at line {exc.lineno}: {exc.msg}") from exc
    return frame_from_json_dict(doc)


def save_frame_csv(path, frame: Frame) -> None:
    """d rows x m columns, real frames only; repr round-trips each value."""
    if frame.field != "real":
        raise ValueError("CSV frame files are real-only; use JSON for complex frames")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        for row in frame.matrix:
            writer.writerow([repr(float(x)) for x in row])


def load_frame_csv(path) -> Frame:
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
        raise ValueError(f"{path}: empty CSV frame file")
    return Frame(np.array(rows))
