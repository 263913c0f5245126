"""GF(2) linear algebra on packed bit rows: ranks, left kernels, enumeration.

Rows are stored as Python integers used as bit sets, so row elimination is
a single XOR regardless of width.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import LimitExceededError, LinearSystem


@dataclass(frozen=True)
class BitMatrix:
    """A rows x cols binary matrix; bits[i] holds row i, bit j = column j."""

    rows: int
    cols: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if self.rows <= 0 or self.cols <= 0:
            raise ValueError("dimensions must be positive")
        if len(self.bits) != self.rows:
            raise ValueError("bit row count mismatch")
        mask = (1 << self.cols) - 1
        object.__setattr__(self, "bits", tuple(b & mask for b in self.bits))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BitMatrix":
        packed = []
        for row in rows:
            word = 0
            for j, v in enumerate(row):
                if v & 1:
                    word |= 1 << j
            packed.append(word)
        return cls(len(packed), len(rows[0]), tuple(packed))

    @classmethod
    def from_system(cls, system: LinearSystem) -> "BitMatrix":
        return cls.from_rows([row.coeffs for row in system.rows])

    def get(self, i: int, j: int) -> int:
        return (self.bits[i] >> j) & 1

    def transposed(self) -> "BitMatrix":
        out = []
        for j in range(self.cols):
            word = 0
            for i in range(self.rows):
                word |= self.get(i, j) << i
            out.append(word)
        return BitMatrix(self.cols, self.rows, tuple(out))


def rank(matrix: BitMatrix) -> int:
    """Rank over GF(2) by elimination on the packed rows."""
    work = list(matrix.bits)
    r = 0
    for col in range(matrix.cols):
        bit = 1 << col
        pivot = next((i for i in range(r, len(work)) if work[i] & bit), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and work[i] & bit:
                work[i] ^= work[r]
        r += 1
    return r


@dataclass(frozen=True)
class KernelBasis:
    """Basis of a subspace of GF(2)^m, each vector packed into an int."""

    m: int
    basis: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def vector_bits(self, word: int) -> tuple[int, ...]:
        return tuple((word >> i) & 1 for i in range(self.m))


def left_kernel(matrix: BitMatrix) -> KernelBasis:
    """Basis of {t in GF(2)^rows : t^T A = 0}.

    Computed as the nullspace of the transpose; the result dimension is
    rows - rank(A).
    """
    b = matrix.transposed()  # nullspace of b == left kernel of matrix
    m = b.cols
    work = list(b.bits)
    pivot_col_of_row: list[int] = []
    r = 0
    for col in range(m):
        bit = 1 << col
        pivot = next((i for i in range(r, len(work)) if work[i] & bit), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and work[i] & bit:
                work[i] ^= work[r]
        pivot_col_of_row.append(col)
        r += 1
    pivot_cols = set(pivot_col_of_row)
    basis = []
    for free in range(m):
        if free in pivot_cols:
            continue
        vec = 1 << free
        for row_idx, pcol in enumerate(pivot_col_of_row):
            if work[row_idx] & (1 << free):
                vec |= 1 << pcol
        basis.append(vec)
    return KernelBasis(m, tuple(basis))


def kernel_contains(matrix: BitMatrix, word: int) -> bool:
    """Check t^T A = 0 componentwise for a packed multiplier t."""
    acc = 0
    for i in range(matrix.rows):
        if (word >> i) & 1:
            acc ^= matrix.bits[i]
    return acc == 0


def gray_walk(basis: KernelBasis) -> Iterator[tuple[int, int]]:
    """Yield (element, flipped basis index) over the whole kernel.

    Successive elements differ by exactly one basis vector (binary
    reflected Gray code), which lets callers update derived sums
    incrementally.  The first element is zero with flip index -1.
    """
    t = 0
    yield t, -1
    for i in range(1, 1 << basis.dimension):
        j = (i & -i).bit_length() - 1
        t ^= basis.basis[j]
        yield t, j


def enumerate_kernel(basis: KernelBasis, limit: int) -> Iterator[int]:
    """All 2^dimension kernel elements, zero included, each exactly once."""
    total = 1 << basis.dimension
    if total > limit:
        raise LimitExceededError("kernel too large to enumerate", total)
    for word, _ in gray_walk(basis):
        yield word
