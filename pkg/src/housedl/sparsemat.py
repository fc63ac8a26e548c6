"""Minimal (row, col, value) sparse matrices.

Instances stay at desk scale, so matrix products densify; the triplet form
exists for generation bookkeeping, instance dumps, and support metrics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class SparseMatrix:
    shape: tuple[int, int]
    rows: np.ndarray
    cols: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        n, p = self.shape
        rows = np.asarray(self.rows, dtype=np.int64)
        cols = np.asarray(self.cols, dtype=np.int64)
        values = np.asarray(self.values, dtype=float)
        if rows.ndim != 1 or rows.shape != cols.shape or rows.shape != values.shape:
            raise ValueError("rows, cols and values must be 1-d arrays of equal length")
        if rows.size and (
            rows.min() < 0 or rows.max() >= n or cols.min() < 0 or cols.max() >= p
        ):
            raise ValueError(f"triplet indices out of bounds for shape {(n, p)}")
        for name, arr in (("rows", rows), ("cols", cols), ("values", values)):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "shape", (int(n), int(p)))

    @property
    def nnz(self) -> int:
        return int(self.values.size)

    @classmethod
    def from_dense(cls, A) -> "SparseMatrix":
        A = np.asarray(A, dtype=float)
        if A.ndim != 2:
            raise ValueError("from_dense expects a 2-d array")
        rows, cols = np.nonzero(A)
        return cls(A.shape, rows, cols, A[rows, cols])

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape)
        out[self.rows, self.cols] = self.values
        return out

    def support_mask(self) -> np.ndarray:
        """Boolean mask of the stored entries."""
        mask = np.zeros(self.shape, dtype=bool)
        mask[self.rows, self.cols] = True
        return mask


def hard_threshold(A, zeta: float) -> SparseMatrix:
    """Entrywise x -> x * 1(|x| >= zeta), returned in triplet form."""
    if zeta < 0:
        raise ValueError("zeta must be >= 0")
    A = np.asarray(A, dtype=float)
    if A.ndim != 2:
        raise ValueError("hard_threshold expects a 2-d array")
    if zeta == 0.0:
        return SparseMatrix.from_dense(A)
    rows, cols = np.nonzero(np.abs(A) >= zeta)
    return SparseMatrix(A.shape, rows, cols, A[rows, cols])
