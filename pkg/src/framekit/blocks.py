"""Generators for the triangular block frames.

The ambient space is split into consecutive coordinate blocks of
dimensions 1, 2, ..., N; block n occupies the coordinates with 1-based
indices (n-1)n/2 + 1 through (n-1)n/2 + n.  On each block the generator
places n+1 vectors

    f_i = e_i - (1/n) * sum_j e_j          (i = 1..n, block-local),
    f_{n+1} = (1/sqrt(n)) * sum_j e_j,

which form a Parseval frame of the block; the union over blocks is a
Parseval frame of the truncated space with one kernel dimension per
block.  The perturbed variant replaces the factor 1/n by (1-eps)/n in
the first n vectors and leaves the last vector unchanged.

Python-facing element and coordinate positions are 0-based; the paper
style 1-based coordinate index is exposed only through
``block_coordinate_index``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .frames import Frame


def block_coordinate_index(n: int, i: int) -> int:
    """1-based flat index of basis vector i of block n, i.e. (n-1)n/2 + i."""
    if n < 1:
        raise ValueError(f"block number must be >= 1, got {n}")
    if not 1 <= i <= n:
        raise ValueError(f"coordinate {i} out of range for block {n} (1..{n})")
    return (n - 1) * n // 2 + i


@dataclass(frozen=True)
class BlockStructure:
    """Partition of coordinates and frame elements into triangular blocks."""

    num_blocks: int
    block_dims: tuple[int, ...] = field(init=False)
    coord_offsets: tuple[int, ...] = field(init=False)
    total_dim: int = field(init=False)

    def __post_init__(self):
        if self.num_blocks < 1:
            raise ValueError("need at least one block")
        dims = tuple(range(1, self.num_blocks + 1))
        object.__setattr__(self, "block_dims", dims)
        object.__setattr__(
            self, "coord_offsets", tuple((n - 1) * n // 2 for n in dims)
        )
        object.__setattr__(self, "total_dim", self.num_blocks * (self.num_blocks + 1) // 2)

    @property
    def total_elements(self) -> int:
        return self.num_blocks * (self.num_blocks + 3) // 2

    def coord_slice(self, n: int) -> slice:
        """0-based coordinate range of block n (1-based block number)."""
        self._check_block(n)
        off = self.coord_offsets[n - 1]
        return slice(off, off + n)

    def element_offset(self, n: int) -> int:
        """0-based position of block n's first element in the flat family."""
        self._check_block(n)
        return (n - 1) * (n + 2) // 2

    def element_slice(self, n: int) -> slice:
        off = self.element_offset(n)
        return slice(off, off + n + 1)

    def element_boundaries(self) -> list[int]:
        """Cumulative element counts after each block: [2, 5, 9, ...]."""
        return [(n * (n + 3)) // 2 for n in range(1, self.num_blocks + 1)]

    def _check_block(self, n: int) -> None:
        if not 1 <= n <= self.num_blocks:
            raise ValueError(f"block {n} out of range (1..{self.num_blocks})")


@dataclass(frozen=True)
class BlockIndexedFrame:
    """A frame together with the block partition it was generated on."""

    frame: Frame
    structure: BlockStructure

    def element_index(self, n: int, i: int) -> int:
        """0-based flat position of element i of block n (1 <= i <= n+1)."""
        if not 1 <= i <= n + 1:
            raise ValueError(f"element {i} out of range for block {n} (1..{n + 1})")
        return self.structure.element_offset(n) + (i - 1)

    def element(self, n: int, i: int) -> np.ndarray:
        return self.frame.vector(self.element_index(n, i))


def _single_block(n: int, eps: float | None) -> np.ndarray:
    shrink = 1.0 if eps is None else 1.0 - eps
    t = np.eye(n) - (shrink / n) * np.ones((n, n))
    last = np.full((n, 1), 1.0 / np.sqrt(n))
    return np.hstack([t, last])


def lemma5_block(n: int) -> Frame:
    """The n+1 vector Parseval system on an n-dimensional space."""
    if n < 1:
        raise ValueError(f"block size must be >= 1, got {n}")
    return Frame(_single_block(n, None))


def _assemble(num_blocks: int, eps: float | None) -> BlockIndexedFrame:
    structure = BlockStructure(num_blocks)
    t = np.zeros((structure.total_dim, structure.total_elements))
    for n in range(1, num_blocks + 1):
        t[structure.coord_slice(n), structure.element_slice(n)] = _single_block(n, eps)
    return BlockIndexedFrame(Frame(t), structure)


def block_frame(num_blocks: int) -> BlockIndexedFrame:
    """Parseval frame of the truncation: N(N+3)/2 vectors in dimension N(N+1)/2."""
    if num_blocks < 1:
        raise ValueError(f"need at least one block, got {num_blocks}")
    return _assemble(num_blocks, None)


def perturbed_block_frame(num_blocks: int, eps: float) -> BlockIndexedFrame:
    """Same layout with the first n vectors of each block shrunk by (1-eps)/n."""
    if num_blocks < 1:
        raise ValueError(f"need at least one block, got {num_blocks}")
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    return _assemble(num_blocks, eps)
