"""Exact dense linear algebra over GF(q).

Matrices are immutable wrappers around 2-D ``int64`` numpy arrays of
integer-encoded field elements.  Elimination and products are delegated
to the active kernel backend (compiled or pure Python); everything is
unique-RREF based, so row spaces get a canonical representative.
"""

from __future__ import annotations

from itertools import product
from typing import TYPE_CHECKING, Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from flagcodes._backend import kernel
from flagcodes.errors import DimensionMismatch, FieldMismatch, IndexOutOfRange

if TYPE_CHECKING:
    from flagcodes.gf import PrimePowerField


class MatrixFq:
    """Dense matrix over a prime-power field.

    ``rows == 0`` is legal and represents a basis of the zero subspace.
    Instances are immutable; all operations return new matrices.
    """

    __slots__ = ("field", "array")

    def __init__(self, field: PrimePowerField, array: np.ndarray, _trusted: bool = False):
        if not _trusted:
            array = np.array(array, dtype=np.int64)
            if array.ndim != 2:
                raise DimensionMismatch(f"expected a 2-D array, got shape {array.shape}")
            if array.shape[1] < 1:
                raise DimensionMismatch("matrices need at least one column")
            if array.size and (array.min() < 0 or array.max() >= field.q):
                raise ValueError(f"entries must lie in [0, {field.q})")
        self.field = field
        array.setflags(write=False)
        self.array = array

    @classmethod
    def from_rows(cls, field: PrimePowerField, rows: Iterable[Sequence[int]],
                  cols: int | None = None) -> MatrixFq:
        rows = [list(r) for r in rows]
        if not rows:
            if cols is None:
                raise DimensionMismatch("empty matrix needs an explicit column count")
            return cls(field, np.zeros((0, cols), dtype=np.int64))
        return cls(field, np.array(rows, dtype=np.int64))

    @classmethod
    def zeros(cls, field: PrimePowerField, rows: int, cols: int) -> MatrixFq:
        return cls(field, np.zeros((rows, cols), dtype=np.int64), _trusted=True)

    @classmethod
    def identity(cls, field: PrimePowerField, n: int) -> MatrixFq:
        return cls(field, np.eye(n, dtype=np.int64), _trusted=True)

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    def row(self, i: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.array[i])

    def to_lists(self) -> list[list[int]]:
        return self.array.tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixFq):
            return NotImplemented
        return (self.field == other.field
                and self.array.shape == other.array.shape
                and bool(np.array_equal(self.array, other.array)))

    def __hash__(self) -> int:
        return hash((self.field, self.array.shape, self.array.tobytes()))

    def __repr__(self) -> str:
        return f"MatrixFq({self.field!r}, {self.array.tolist()})"


def _check_same_field(a: MatrixFq, b: MatrixFq) -> None:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")


def _kernel_args(field) -> tuple:
    return field.p, field.m, field.q, field.exp, field.log


class RREF(NamedTuple):
    matrix: MatrixFq
    rank: int
    pivots: tuple[int, ...]


def rref(matrix: MatrixFq) -> RREF:
    """Unique reduced row echelon form, rank, and pivot columns."""
    work = matrix.array.copy()
    rank, pivots = kernel.rref(work, *_kernel_args(matrix.field))
    return RREF(MatrixFq(matrix.field, work, _trusted=True), rank, tuple(pivots))


def matrix_rank(matrix: MatrixFq) -> int:
    work = matrix.array.copy()
    return int(kernel.rank(work, *_kernel_args(matrix.field)))


def row_prefix(matrix: MatrixFq, j: int) -> MatrixFq:
    """The submatrix of the first ``j`` rows (1 <= j <= rows)."""
    if not 1 <= j <= matrix.rows:
        raise IndexOutOfRange(f"prefix length {j} outside [1, {matrix.rows}]")
    return MatrixFq(matrix.field, matrix.array[:j].copy(), _trusted=True)


def stack(a: MatrixFq, b: MatrixFq) -> MatrixFq:
    """Vertical concatenation, ``a`` on top of ``b``."""
    _check_same_field(a, b)
    if a.cols != b.cols:
        raise DimensionMismatch(f"column counts differ: {a.cols} vs {b.cols}")
    return MatrixFq(a.field, np.vstack([a.array, b.array]), _trusted=True)


def rank_of_stack(a: MatrixFq, b: MatrixFq) -> int:
    """Rank of ``[a; b]``, i.e. the dimension of the sum of the row spaces."""
    _check_same_field(a, b)
    if a.cols != b.cols:
        raise DimensionMismatch(f"column counts differ: {a.cols} vs {b.cols}")
    work = np.vstack([a.array, b.array])
    return int(kernel.rank(work, *_kernel_args(a.field)))


def matmul(a: MatrixFq, b: MatrixFq) -> MatrixFq:
    _check_same_field(a, b)
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    out = np.zeros((a.rows, b.cols), dtype=np.int64)
    kernel.matmul(a.array, b.array, out, *_kernel_args(a.field))
    return MatrixFq(a.field, out, _trusted=True)


def matrix_power(m: MatrixFq, e: int) -> MatrixFq:
    if m.rows != m.cols:
        raise DimensionMismatch("matrix power needs a square matrix")
    if e < 0:
        raise ValueError("negative powers not supported")
    result = MatrixFq.identity(m.field, m.rows)
    acc = m
    while e > 0:
        if e & 1:
            result = matmul(result, acc)
        acc = matmul(acc, acc)
        e >>= 1
    return result


def hstack(a: MatrixFq, b: MatrixFq) -> MatrixFq:
    """Horizontal concatenation (used to compose block generators)."""
    _check_same_field(a, b)
    if a.rows != b.rows:
        raise DimensionMismatch(f"row counts differ: {a.rows} vs {b.rows}")
    return MatrixFq(a.field, np.hstack([a.array, b.array]), _trusted=True)


def row_space_vectors(matrix: MatrixFq) -> Iterator[tuple[int, ...]]:
    """Every vector of the row space, by exhausting all coefficient tuples.

    Exponential in the number of rows; intended for desk-scale
    verification sweeps only.
    """
    field = matrix.field
    rows = matrix.rows
    cols = matrix.cols
    if rows == 0:
        yield (0,) * cols
        return
    for coeffs in product(range(field.q), repeat=rows):
        vec = [0] * cols
        for c, row in zip(coeffs, matrix.array):
            if c:
                for j in range(cols):
                    if row[j]:
                        vec[j] = field.add_ints(vec[j], field.mul_ints(c, int(row[j])))
        yield tuple(vec)
