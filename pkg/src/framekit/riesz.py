"""Riesz-basis analysis: condition constants, excess, subset extraction,
unconditional basis constants, and pruning to a prescribed lower bound.

For a family with synthesis matrix T the optimal constants in

    A * sum |c_i|^2  <=  ||sum c_i f_i||^2  <=  B * sum |c_i|^2

are the extreme squared singular values of T over the full coefficient
space, so linear dependence is exactly A = 0.  The unconditional basis
constant of an independent family reduces to the spectral norm of
T * diag(signs) * T^+, maximised over sign patterns; the exact maximum is
found by enumeration (Gray-code scan, first sign pinned) and a cheap
certified lower bound by sampling a few patterns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .frames import Frame, frame_bounds
from .linalg import DEFAULT_TOL, Tolerance, null_space_basis, rank, _rank_threshold
from .signscan import scan_sign_patterns


class DependentFamilyError(ValueError):
    """The unconditional basis constant diverges along a kernel direction."""

    def __init__(self, witness: np.ndarray):
        self.witness = witness
        super().__init__(
            "family is linearly dependent; the sign-flip supremum is unbounded "
            "along the kernel direction stored in .witness"
        )


class EnumerationLimitError(ValueError):
    """Exact enumeration refused; use ubc_lower_estimate instead."""


class PruneInfeasibleError(ValueError):
    """No cut leaves a nonempty remainder at the requested epsilon."""

    def __init__(self, best_epsilon: float):
        self.best_epsilon = best_epsilon
        super().__init__(
            f"distance criterion unreachable with a nonempty remainder; "
            f"smallest feasible epsilon is just above {best_epsilon:.6g}"
        )


@dataclass(frozen=True)
class RieszVerdict:
    is_riesz_sequence: bool
    is_riesz_basis_for_space: bool
    lower: float
    upper: float


@dataclass(frozen=True)
class ExcessReport:
    excess: int
    kernel_dim: int
    riesz_subset_indices: tuple[int, ...]
    certified_lower: float


@dataclass(frozen=True)
class PruneResult:
    """Outcome of pruning: deleted indices and the certified remainder."""

    removed: tuple[int, ...]
    remaining: tuple[int, ...]
    remainder_verdict: RieszVerdict


def riesz_verdict(frame: Frame, tol: Tolerance = DEFAULT_TOL) -> RieszVerdict:
    """Optimal condition constants and the independence / basis flags."""
    sv = np.linalg.svd(frame.matrix, compute_uv=False)
    r = int(np.count_nonzero(sv > _rank_threshold(sv, frame.matrix.shape, tol)))
    m = frame.size
    lower = float(sv[-1]) ** 2 if m <= frame.dim else 0.0
    return RieszVerdict(
        is_riesz_sequence=(r == m),
        is_riesz_basis_for_space=(r == m and m == frame.dim),
        lower=lower,
        upper=float(sv[0]) ** 2,
    )


def excess(frame: Frame, tol: Tolerance = DEFAULT_TOL) -> ExcessReport:
    """Kernel dimension of the synthesis map plus an extracted Riesz subset."""
    kernel_dim = frame.size - rank(frame.matrix, tol)
    indices, certified = extract_riesz_subset(frame, tol)
    return ExcessReport(
        excess=kernel_dim,
        kernel_dim=kernel_dim,
        riesz_subset_indices=tuple(indices),
        certified_lower=certified,
    )


def extract_riesz_subset(
    frame: Frame, tol: Tolerance = DEFAULT_TOL
) -> tuple[list[int], float]:
    """Greedy spanning independent subfamily (0-based indices, ascending).

    Each step adds the column that maximises the smallest singular value
    of the selection, ties resolved toward the lowest index.  Returns the
    sorted indices and the certified squared smallest singular value of
    the selected sub-synthesis matrix.
    """
    t = frame.matrix
    target = rank(t, tol)
    if target == 0:
        return [], 0.0
    selected: list[int] = []
    current = np.empty((frame.dim, 0), dtype=t.dtype)
    remaining = list(range(frame.size))
    for _ in range(target):
        best_j = -1
        best_sv = -1.0
        for j in remaining:
            cand = np.column_stack([current, t[:, j]])
            smallest = float(np.linalg.svd(cand, compute_uv=False)[-1])
            if smallest > best_sv:
                best_sv = smallest
                best_j = j
        selected.append(best_j)
        remaining.remove(best_j)
        current = np.column_stack([current, t[:, best_j]])
    certified = float(np.linalg.svd(current, compute_uv=False)[-1]) ** 2
    return sorted(selected), certified


def _require_independent(frame: Frame, tol: Tolerance) -> None:
    if rank(frame.matrix, tol) < frame.size:
        kernel = null_space_basis(frame.matrix, tol)
        raise DependentFamilyError(kernel.vectors[:, 0].copy())


def _pinv(frame: Frame, tol: Tolerance) -> np.ndarray:
    return np.linalg.pinv(frame.matrix, rcond=tol.rank_rel * max(frame.matrix.shape))


def _validate_signs(signs, m: int) -> np.ndarray:
    s = np.asarray(signs, dtype=np.float64)
    if s.shape != (m,):
        raise ValueError(f"need {m} signs, got shape {s.shape}")
    if not np.all(np.abs(s) == 1.0):
        raise ValueError("signs must be +1 or -1")
    return s


def ubc_for_signs(frame: Frame, signs, tol: Tolerance = DEFAULT_TOL) -> float:
    """Norm of the sign-flip operator T diag(signs) T^+ for one pattern."""
    s = _validate_signs(signs, frame.size)
    _require_independent(frame, tol)
    t = frame.matrix
    return float(np.linalg.svd((t * s) @ _pinv(frame, tol), compute_uv=False)[0])


def ubc_exact(
    frame: Frame,
    tol: Tolerance = DEFAULT_TOL,
    max_enum: int = 22,
    backend: str | None = None,
) -> float:
    """Exact unconditional basis constant by full sign enumeration.

    Scans all 2^(m-1) sign classes (global sign flips leave the norm
    unchanged).  Refuses families larger than ``max_enum`` elements.
    """
    if frame.size > max_enum:
        raise EnumerationLimitError(
            f"{frame.size} elements exceed the enumeration cap {max_enum}; "
            "use ubc_lower_estimate"
        )
    _require_independent(frame, tol)
    value, _, _ = scan_sign_patterns(frame.matrix, _pinv(frame, tol), backend)
    return value


def alternating_signs(m: int) -> np.ndarray:
    """The alternating witness pattern +1, -1, +1, ..."""
    s = np.ones(m)
    s[1::2] = -1.0
    return s


def ubc_lower_estimate(
    frame: Frame,
    trials: int = 64,
    seed: int = 0,
    tol: Tolerance = DEFAULT_TOL,
) -> float:
    """Certified lower bound: best of all-plus, alternating, and random patterns."""
    _require_independent(frame, tol)
    t = frame.matrix
    tp = _pinv(frame, tol)

    def norm_for(s: np.ndarray) -> float:
        return float(np.linalg.svd((t * s) @ tp, compute_uv=False)[0])

    m = frame.size
    best = max(norm_for(np.ones(m)), norm_for(alternating_signs(m)))
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        s = rng.integers(0, 2, size=m) * 2.0 - 1.0
        best = max(best, norm_for(s))
    return best


def prune_to_lower_bound(
    frame: Frame, eps: float, tol: Tolerance = DEFAULT_TOL
) -> PruneResult:
    """Delete finitely many elements so the rest keeps lower bound A - eps.

    Reorders the family as excess elements followed by an extracted
    spanning subset, then finds the smallest cut after which every excess
    element is within sqrt(eps / excess) of the span of the subset prefix
    inside the cut.  Everything before the cut is deleted; the remainder
    verdict is measured directly so the certificate is self-contained.
    """
    bounds = frame_bounds(frame, tol)
    a = bounds.lower
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if not eps < a:
        raise ValueError(f"eps must be smaller than the lower bound {a:.6g}, got {eps}")
    subset, _ = extract_riesz_subset(frame, tol)
    excess_idx = [i for i in range(frame.size) if i not in set(subset)]
    n = len(excess_idx)
    if n == 0:
        return PruneResult((), tuple(range(frame.size)), riesz_verdict(frame, tol))

    t = frame.matrix
    target = math.sqrt(eps / n)
    ex = t[:, excess_idx]
    cut = 0
    worst_before_full = 0.0
    for prefix in range(len(subset) + 1):
        if prefix == 0:
            resid = ex
        else:
            q = np.linalg.qr(t[:, subset[:prefix]])[0]
            resid = ex - q @ (q.conj().T @ ex)
        worst = float(np.max(np.linalg.norm(resid, axis=0)))
        if prefix == len(subset) - 1:
            worst_before_full = worst
        if worst < target:
            cut = prefix
            break

    remaining = subset[cut:]
    if not remaining:
        raise PruneInfeasibleError(best_epsilon=n * worst_before_full**2)
    removed = sorted(excess_idx + subset[:cut])
    verdict = riesz_verdict(Frame(t[:, remaining]), tol)
    return PruneResult(tuple(removed), tuple(remaining), verdict)
