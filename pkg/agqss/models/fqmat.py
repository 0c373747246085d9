"""Exact linear algebra over F_q.

Matrices wrap a 2-D ``galois.FieldArray``. Elimination always pivots on the
first nonzero entry of the leftmost remaining column, so echelon forms, kernel
bases and coset orders are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import galois
import numpy as np

from agqss.core.config import get_settings
from agqss.core.errors import CapExceededError, FieldMismatchError, IndexOutOfRangeError
from agqss.models.gf import FieldElement, FieldSpec


def as_ints(arr) -> np.ndarray:
    """Plain int64 copy of a field array, ndarray or nested list (element reprs)."""
    if isinstance(arr, np.ndarray):
        return np.asarray(arr.view(np.ndarray), dtype=np.int64)
    return np.asarray(arr, dtype=np.int64)


def base_q_digits(count: int, q: int, width: int) -> np.ndarray:
    """Rows 0..count-1 written in base q, most significant digit first."""
    idx = np.arange(count, dtype=np.int64)[:, np.newaxis]
    weights = q ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return (idx // weights) % q


@dataclass(frozen=True, eq=False)
class MatrixFq:
    spec: FieldSpec
    data: galois.FieldArray

    def __post_init__(self) -> None:
        if self.data.ndim != 2:
            raise ValueError(f"matrix data must be 2-D, got shape {self.data.shape}")

    # -------- constructors --------
    @classmethod
    def from_rows(cls, spec: FieldSpec, rows: Sequence[Sequence[int]], cols: int | None = None) -> MatrixFq:
        rows = [[int(v) for v in row] for row in rows]
        if not rows:
            return cls.zeros(spec, 0, cols or 0)
        return cls(spec, spec.GF(np.array(rows, dtype=np.int64)))

    @classmethod
    def from_array(cls, spec: FieldSpec, arr) -> MatrixFq:
        ints = np.asarray(arr, dtype=np.int64)
        return cls(spec, spec.GF(ints))

    @classmethod
    def zeros(cls, spec: FieldSpec, rows: int, cols: int) -> MatrixFq:
        return cls(spec, spec.GF.Zeros((rows, cols)))

    @classmethod
    def identity(cls, spec: FieldSpec, size: int) -> MatrixFq:
        return cls(spec, spec.GF.Identity(size))

    # -------- shape / access --------
    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.spec, int(self.data[i, j]))

    def to_ints(self) -> np.ndarray:
        return as_ints(self.data)

    def tolist(self) -> list[list[int]]:
        return self.to_ints().tolist()

    def columns(self, cols: Iterable[int]) -> MatrixFq:
        cols = _check_indices(cols, self.cols)
        if not cols:
            return MatrixFq.zeros(self.spec, self.rows, 0)
        return MatrixFq(self.spec, self.data[:, cols])

    def select_rows(self, rows: Iterable[int]) -> MatrixFq:
        rows = list(rows)
        if not rows:
            return MatrixFq.zeros(self.spec, 0, self.cols)
        return MatrixFq(self.spec, self.data[rows, :])

    @property
    def T(self) -> MatrixFq:
        return MatrixFq.from_array(self.spec, self.to_ints().T)

    def __matmul__(self, other: MatrixFq) -> MatrixFq:
        _same_field(self, other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.cols == 0 or self.rows == 0 or other.cols == 0:
            return MatrixFq.zeros(self.spec, self.rows, other.cols)
        return MatrixFq(self.spec, self.data @ other.data)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixFq):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.to_ints(), other.to_ints())

    def __hash__(self) -> int:
        return id(self)

    def __repr__(self) -> str:
        return f"MatrixFq({self.spec}, {self.tolist()})"

    @staticmethod
    def vstack(spec: FieldSpec, parts: Sequence[MatrixFq], cols: int) -> MatrixFq:
        blocks = [p.to_ints() for p in parts if p.rows]
        if not blocks:
            return MatrixFq.zeros(spec, 0, cols)
        return MatrixFq.from_array(spec, np.vstack(blocks))

    @staticmethod
    def hstack(spec: FieldSpec, parts: Sequence[MatrixFq], rows: int) -> MatrixFq:
        blocks = [p.to_ints() for p in parts if p.cols]
        if not blocks:
            return MatrixFq.zeros(spec, rows, 0)
        return MatrixFq.from_array(spec, np.hstack(blocks))


class RowEchelon(NamedTuple):
    matrix: MatrixFq
    rank: int
    pivots: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class AffineCoset:
    """offset + row space of basis; basis rows are independent."""

    offset: galois.FieldArray
    basis: MatrixFq

    def __post_init__(self) -> None:
        if self.basis.rows and rref(self.basis).rank != self.basis.rows:
            raise ValueError("coset basis rows must be linearly independent")

    @property
    def spec(self) -> FieldSpec:
        return self.basis.spec

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def size(self) -> int:
        return self.spec.order**self.dim

    def contains(self, x) -> bool:
        diff = self.spec.GF(as_ints(x)) - self.offset
        return row_space_contains(self.basis, diff)


@dataclass(frozen=True)
class NoSolution:
    """Marker returned by solve_affine for an inconsistent system."""

    rank: int
    augmented_rank: int


def _same_field(a: MatrixFq, b: MatrixFq) -> None:
    if a.spec != b.spec:
        raise FieldMismatchError(f"matrices over {a.spec} and {b.spec}")


def _check_indices(indices: Iterable[int], bound: int) -> list[int]:
    indices = list(indices)
    for i in indices:
        if not 0 <= i < bound:
            raise IndexOutOfRangeError(f"column index {i} outside [0, {bound})")
    return indices


def rref(M: MatrixFq) -> RowEchelon:
    if M.rows == 0 or M.cols == 0:
        return RowEchelon(MatrixFq.zeros(M.spec, M.rows, M.cols), 0, ())

    A = M.data.copy()
    pivots: list[int] = []
    r = 0
    for j in range(M.cols):
        if r == M.rows:
            break
        nz = np.flatnonzero(as_ints(A[r:, j]))
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i], :] = A[[i, r], :]
        A[r, :] = A[r, :] / A[r, j]
        factors = A[:, j].copy()
        factors[r] = 0
        A = A - factors[:, np.newaxis] * A[r, :]
        pivots.append(j)
        r += 1
    return RowEchelon(MatrixFq(M.spec, A), r, tuple(pivots))


def rank(M: MatrixFq) -> int:
    return rref(M).rank


def kernel_basis(M: MatrixFq) -> MatrixFq:
    """Rows spanning {v : M v = 0}, one per free column in ascending order."""
    R, r, pivots = rref(M)
    free = [j for j in range(M.cols) if j not in pivots]
    if not free:
        return MatrixFq.zeros(M.spec, 0, M.cols)
    GF = M.spec.GF
    basis = GF.Zeros((len(free), M.cols))
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, p in enumerate(pivots):
            basis[k, p] = -R.data[row, f]
    return MatrixFq(M.spec, basis)


def row_space_contains(G: MatrixFq, v) -> bool:
    v_ints = as_ints(v).reshape(1, -1)
    if not np.any(v_ints):
        return True
    if G.rows == 0:
        return False
    stacked = MatrixFq.vstack(G.spec, [G, MatrixFq.from_array(G.spec, v_ints)], G.cols)
    return rank(stacked) == rank(G)


def solve_affine(M: MatrixFq, b) -> AffineCoset | NoSolution:
    """All x with M x = b, as offset + kernel basis."""
    GF = M.spec.GF
    b_ints = as_ints(b).reshape(-1)
    if b_ints.size != M.rows:
        raise ValueError(f"right-hand side has {b_ints.size} entries, matrix has {M.rows} rows")

    basis = kernel_basis(M)
    offset = GF.Zeros(M.cols)
    if M.rows == 0:
        return AffineCoset(offset, basis)

    augmented = MatrixFq.from_array(M.spec, np.hstack([M.to_ints(), b_ints.reshape(-1, 1)]))
    R, r, pivots = rref(augmented)
    if pivots and pivots[-1] == M.cols:
        return NoSolution(rank=r - 1, augmented_rank=r)
    for row, p in enumerate(pivots):
        offset[p] = R.data[row, M.cols]
    return AffineCoset(offset, basis)


def projected_dim(G: MatrixFq, cols: Iterable[int]) -> int:
    """dim of the row space of G restricted to ``cols``."""
    cols = _check_indices(cols, G.cols)
    if not cols:
        return 0
    return rank(G.columns(cols))


def enumerate_coset(c: AffineCoset, cap: int | None = None) -> np.ndarray:
    """Every coset member as rows of an int array, ordered by basis coefficients.

    Coefficient vectors run through F_q^k in ascending base-q order with the
    first coefficient most significant.
    """
    cap = cap if cap is not None else get_settings().coset_cap
    if c.size > cap:
        raise CapExceededError(f"coset of size {c.size} exceeds the enumeration cap {cap}")
    q = c.spec.order
    offset = as_ints(c.offset).reshape(1, -1)
    if c.dim == 0:
        return offset.copy()
    GF = c.spec.GF
    coeffs = GF(base_q_digits(c.size, q, c.dim))
    members = coeffs @ c.basis.data + GF(offset)
    return as_ints(members)
