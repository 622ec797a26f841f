"""Perturbation analysis for pairs of equally indexed families.

The central object is the difference operator K sending coefficients c
to sum_i c_i (f_i - g_i); its matrix has the columns f_i - g_i.  A pair
(lam, mu) certifies the perturbation when

    ||K c|| <= lam * ||T c|| + mu * ||c||      for all c,

which is tested by the sufficient positive-semidefiniteness of
lam^2 T*T + mu^2 I - K*K (dropping the nonnegative cross term), and can
be refuted by a witness search over random and singular-vector-aligned
coefficients.  Admissible certificates (lam + mu/sqrt(A) < 1) predict
frame bounds for the perturbed family.

Compactness of K has no finite-dimensional content; the stand-in is the
profile of operator norms of K with all columns up to a block boundary
zeroed, which is exactly the quantity a compactness argument extracts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .blocks import BlockStructure, block_frame, lemma5_block, perturbed_block_frame
from .frames import Frame, frame_bounds
from .linalg import DEFAULT_TOL, Tolerance, rank
from .riesz import ExcessReport, RieszVerdict, excess, riesz_verdict


@dataclass(frozen=True)
class PerturbationPair:
    """Two families on the same index set and their difference operator."""

    f: Frame
    g: Frame
    k: np.ndarray
    operator_norm: float


@dataclass(frozen=True)
class PerturbationCertificate:
    lam: float
    mu: float
    admissible: bool
    psd_passed: bool
    predicted_lower: float | None
    predicted_upper: float | None


@dataclass(frozen=True)
class TailProfile:
    """Operator norm of K after zeroing all columns below each cut."""

    cut_points: tuple[int, ...]
    tail_norms: tuple[float, ...]


class TailCut(NamedTuple):
    cut: int
    blocks_cut: int
    interior: bool


@dataclass(frozen=True)
class ExcessComparison:
    excess_f: ExcessReport
    excess_g: ExcessReport

    @property
    def equal(self) -> bool:
        return self.excess_f.excess == self.excess_g.excess


def perturbation_operator(f: Frame, g: Frame) -> PerturbationPair:
    """Assemble K columnwise as f_i - g_i and record its spectral norm."""
    if f.dim != g.dim or f.size != g.size:
        raise ValueError(
            f"shape mismatch: {f.dim}x{f.size} family vs {g.dim}x{g.size} family"
        )
    k = f.matrix - g.matrix
    norm = float(np.linalg.svd(k, compute_uv=False)[0]) if k.size else 0.0
    return PerturbationPair(f, g, k, norm)


def check_certificate(
    pair: PerturbationPair, lam: float, mu: float, tol: Tolerance = DEFAULT_TOL
) -> PerturbationCertificate:
    """Sufficient PSD test for the (lam, mu) condition plus predicted bounds.

    Positive semidefiniteness of lam^2 T*T + mu^2 I - K*K implies the
    perturbation inequality for every coefficient vector (the dropped
    cross term 2*lam*mu*||Tc||*||c|| is nonnegative), so a passed test is
    a certificate; a failed test is inconclusive.
    """
    if lam < 0 or mu < 0:
        raise ValueError("lam and mu must be nonnegative")
    bounds = frame_bounds(pair.f, tol)
    a, b = bounds.lower, bounds.upper
    if a <= 0:
        raise ValueError("the reference family is degenerate (zero lower bound)")
    admissible = lam + mu / math.sqrt(a) < 1.0
    t = pair.f.matrix
    k = pair.k
    dtype = np.result_type(t.dtype, k.dtype)
    gram_t = t.conj().T @ t
    gram_k = k.conj().T @ k
    h = (lam**2) * gram_t + (mu**2) * np.eye(pair.f.size, dtype=dtype) - gram_k
    min_eig = float(np.linalg.eigvalsh(h)[0])
    psd_passed = min_eig >= -tol.eq_abs
    predicted_lower = predicted_upper = None
    if admissible and psd_passed:
        predicted_lower = a * (1.0 - (lam + mu / math.sqrt(a))) ** 2
        predicted_upper = b * (1.0 + lam + mu / math.sqrt(b)) ** 2
    return PerturbationCertificate(lam, mu, admissible, psd_passed, predicted_lower, predicted_upper)


def violation_search(
    pair: PerturbationPair,
    lam: float,
    mu: float,
    trials: int = 1000,
    seed: int = 0,
    tol: Tolerance = DEFAULT_TOL,
) -> np.ndarray | None:
    """Look for c with ||Kc|| > lam ||Tc|| + mu ||c||; None proves nothing.

    Candidates are the right singular vectors of K (the first of which
    attains ||K||) followed by seeded random coefficient vectors.
    """
    t = pair.f.matrix
    k = pair.k
    m = pair.f.size

    def violates(c: np.ndarray) -> bool:
        lhs = float(np.linalg.norm(k @ c))
        rhs = lam * float(np.linalg.norm(t @ c)) + mu * float(np.linalg.norm(c))
        return lhs > rhs + tol.eq_abs

    _, _, vh = np.linalg.svd(k)
    for row in vh:
        c = row.conj()
        if violates(c):
            return c
    rng = np.random.default_rng(seed)
    complex_pair = np.iscomplexobj(t) or np.iscomplexobj(k)
    for _ in range(trials):
        c = rng.standard_normal(m)
        if complex_pair:
            c = c + 1j * rng.standard_normal(m)
        if violates(c):
            return c
    return None


def _structure_matches(pair: PerturbationPair, structure: BlockStructure) -> None:
    if structure.total_elements != pair.f.size:
        raise ValueError(
            f"block structure covers {structure.total_elements} elements, "
            f"families have {pair.f.size}"
        )


def tail_profile(pair: PerturbationPair, structure: BlockStructure) -> TailProfile:
    """Norms of K restricted to the columns beyond each block boundary."""
    _structure_matches(pair, structure)
    cuts = [0] + structure.element_boundaries()
    norms = []
    for cut in cuts:
        rest = pair.k[:, cut:]
        if rest.shape[1] == 0:
            norms.append(0.0)
        else:
            norms.append(float(np.linalg.svd(rest, compute_uv=False)[0]))
    return TailProfile(tuple(cuts), tuple(norms))


def find_tail_cut(pair: PerturbationPair, structure: BlockStructure, mu: float) -> TailCut:
    """Smallest block-boundary cut whose tail norm is at most mu.

    The full cut always qualifies, so this never fails; ``interior``
    records whether anything was left after the cut.
    """
    if mu <= 0:
        raise ValueError("mu must be positive")
    profile = tail_profile(pair, structure)
    for i, (cut, norm) in enumerate(zip(profile.cut_points, profile.tail_norms)):
        if norm <= mu:
            return TailCut(cut=cut, blocks_cut=i, interior=cut < pair.f.size)
    raise AssertionError("unreachable: the exhausted cut has tail norm zero")


def excess_compare(f: Frame, g: Frame, tol: Tolerance = DEFAULT_TOL) -> ExcessComparison:
    return ExcessComparison(excess(f, tol), excess(g, tol))


# ---------------------------------------------------------------------------
# the two-sided perturbation experiment on the block construction


@dataclass(frozen=True)
class CounterexampleReport:
    """Numerical companion to the two-sided block-frame perturbation example."""

    num_blocks: int
    eps: float
    forward_certificate: PerturbationCertificate
    reverse_certificate: PerturbationCertificate
    subfamily_verdict: RieszVerdict
    subfamily_bound_target: float
    block_ns: tuple[int, ...]
    best_subset_lower: tuple[float, ...]
    strictly_decreasing: bool
    ubc_growth_bound: tuple[float, ...]

    @property
    def certificates_pass(self) -> bool:
        fc, rc = self.forward_certificate, self.reverse_certificate
        return fc.admissible and fc.psd_passed and rc.admissible and rc.psd_passed

    @property
    def subfamily_is_riesz_basis(self) -> bool:
        return self.subfamily_verdict.is_riesz_basis_for_space


def best_spanning_subset_lower(n: int, tol: Tolerance = DEFAULT_TOL) -> float:
    """Best squared smallest singular value over minimal spanning subsets
    of the n-block generator (enumerates all n+1 leave-one-out subsets)."""
    frame = lemma5_block(n)
    t = frame.matrix
    best = 0.0
    for drop in range(n + 1):
        keep = [j for j in range(n + 1) if j != drop]
        sub = t[:, keep]
        if rank(sub, tol) < n:
            continue
        best = max(best, float(np.linalg.svd(sub, compute_uv=False)[-1]) ** 2)
    return best


def subfamily_without_block_tails(indexed) -> Frame:
    """Drop the last element of every block, keeping the first n per block."""
    structure = indexed.structure
    keep: list[int] = []
    for n in range(1, structure.num_blocks + 1):
        off = structure.element_offset(n)
        keep.extend(range(off, off + n))
    return Frame(indexed.frame.matrix[:, keep])


def counterexample_report(
    num_blocks: int, eps: float, tol: Tolerance = DEFAULT_TOL
) -> CounterexampleReport:
    """Run the three checks of the two-sided perturbation example.

    (a) the (0, eps) certificate from the block frame to the perturbed
    one and the (0, eps/(1-eps)) certificate in the reverse direction
    both pass; (b) dropping each block's tail element from the perturbed
    family leaves a Riesz basis of the truncation with lower bound at
    least eps^2; (c) the best spanning-subset lower bound of the
    unperturbed blocks decreases strictly in the block size while the
    unconditional-basis-constant bound sqrt(n-1) - 1 grows.
    """
    if num_blocks < 2:
        raise ValueError(f"need at least two blocks, got {num_blocks}")
    if not 0.0 < eps < 0.5:
        raise ValueError(f"eps must lie in (0, 1/2), got {eps}")
    f = block_frame(num_blocks)
    g = perturbed_block_frame(num_blocks, eps)
    forward = check_certificate(perturbation_operator(f.frame, g.frame), 0.0, eps, tol)
    reverse = check_certificate(
        perturbation_operator(g.frame, f.frame), 0.0, eps / (1.0 - eps), tol
    )
    sub = subfamily_without_block_tails(g)
    verdict = riesz_verdict(sub, tol)
    ns = tuple(range(1, num_blocks + 1))
    best = tuple(best_spanning_subset_lower(n, tol) for n in ns)
    decreasing = all(b2 < b1 for b1, b2 in zip(best, best[1:]))
    growth = tuple(math.sqrt(n - 1) - 1.0 for n in ns)
    return CounterexampleReport(
        num_blocks=num_blocks,
        eps=eps,
        forward_certificate=forward,
        reverse_certificate=reverse,
        subfamily_verdict=verdict,
        subfamily_bound_target=eps**2,
        block_ns=ns,
        best_subset_lower=best,
        strictly_decreasing=decreasing,
        ubc_growth_bound=growth,
    )
