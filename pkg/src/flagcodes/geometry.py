"""Subspaces of F_q^n as first-class values.

A subspace is canonically represented by the reduced row echelon form of
any generating matrix, which makes equality, hashing, and set semantics
exact.  Distances, sums, and intersections reduce to ranks of stacked
bases.  Exhaustive Grassmannian / full-flag enumeration is provided for
desk-scale oracle checks.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import TYPE_CHECKING

import numpy as np

from flagcodes import linalg
from flagcodes.errors import AmbientMismatch, IndexOutOfRange, TooLarge
from flagcodes.linalg import MatrixFq

if TYPE_CHECKING:
    from flagcodes.flags import Flag

#: refuse exhaustive enumeration beyond this many ambient vectors
DESK_VECTOR_BOUND = 2**16


class Subspace:
    """A point of the Grassmannian G_q(dim, n), stored as an RREF basis."""

    __slots__ = ("field", "ambient_n", "basis", "_key")

    def __init__(self, field, ambient_n: int, basis: MatrixFq, _trusted: bool = False):
        if not _trusted:
            reduced, rank, _ = linalg.rref(basis)
            if rank != basis.rows or basis.cols != ambient_n:
                raise ValueError("basis must be a full-rank RREF matrix; use from_matrix")
            if reduced != basis:
                raise ValueError("basis not in reduced row echelon form; use from_matrix")
        self.field = field
        self.ambient_n = ambient_n
        self.basis = basis
        self._key = (ambient_n, basis.rows, basis.array.tobytes())

    @classmethod
    def from_matrix(cls, matrix: MatrixFq) -> Subspace:
        """Row space of an arbitrary matrix, canonicalized."""
        reduced, rank, _ = linalg.rref(matrix)
        basis = MatrixFq(matrix.field, reduced.array[:rank].copy(), _trusted=True)
        return cls(matrix.field, matrix.cols, basis, _trusted=True)

    @classmethod
    def zero(cls, field, ambient_n: int) -> Subspace:
        return cls(field, ambient_n, MatrixFq.zeros(field, 0, ambient_n), _trusted=True)

    @classmethod
    def full(cls, field, ambient_n: int) -> Subspace:
        return cls(field, ambient_n, MatrixFq.identity(field, ambient_n), _trusted=True)

    @property
    def dim(self) -> int:
        return self.basis.rows

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.field == other.field and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, n={self.ambient_n}, q={self.field.q})"


def _check_ambient(u: Subspace, v: Subspace) -> None:
    if u.field != v.field or u.ambient_n != v.ambient_n:
        raise AmbientMismatch(
            f"ambient spaces differ: GF({u.field.q})^{u.ambient_n} vs GF({v.field.q})^{v.ambient_n}")


def sum_dim(u: Subspace, v: Subspace) -> int:
    """dim(U + V), as the rank of the stacked bases."""
    _check_ambient(u, v)
    return linalg.rank_of_stack(u.basis, v.basis)


def intersection_dim(u: Subspace, v: Subspace) -> int:
    """dim(U ∩ V) from the rank identity dim U + dim V - dim(U + V)."""
    return u.dim + v.dim - sum_dim(u, v)


def subspace_distance(u: Subspace, v: Subspace) -> int:
    """dim(U + V) - dim(U ∩ V) = 2 dim(U + V) - dim U - dim V."""
    return 2 * sum_dim(u, v) - u.dim - v.dim


def contains(u: Subspace, v: Subspace) -> bool:
    """True iff V is a subspace of U."""
    _check_ambient(u, v)
    if v.dim > u.dim:
        return False
    return sum_dim(u, v) == u.dim


def max_subspace_distance(t: int, n: int) -> int:
    """Largest possible distance between two t-dimensional subspaces of F_q^n."""
    return 2 * min(t, n - t)


def gaussian_binomial(n: int, j: int, q: int) -> int:
    """Number of j-dimensional subspaces of F_q^n."""
    if j < 0 or j > n:
        return 0
    num = den = 1
    for i in range(j):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _check_desk_scale(field, n: int) -> None:
    if field.q**n > DESK_VECTOR_BOUND:
        raise TooLarge(
            f"q^n = {field.q ** n} exceeds the enumeration bound {DESK_VECTOR_BOUND}")


def enumerate_grassmannian(field, n: int, j: int) -> list[Subspace]:
    """All j-dimensional subspaces of F_q^n, sorted by their RREF matrices.

    Subspaces are generated one per valid echelon pattern (pivot column
    set plus free entries), so each appears exactly once; the list is
    then sorted lexicographically on the flattened basis for a stable,
    reproducible order.
    """
    _check_desk_scale(field, n)
    if not 0 <= j <= n:
        raise IndexOutOfRange(f"dimension {j} outside [0, {n}]")
    q = field.q
    out = []
    for pivots in combinations(range(n), j):
        free = [(i, c)
                for i in range(j)
                for c in range(pivots[i] + 1, n)
                if c not in pivots]
        base = np.zeros((j, n), dtype=np.int64)
        for i, c in enumerate(pivots):
            base[i, c] = 1
        for values in product(range(q), repeat=len(free)):
            arr = base.copy()
            for (i, c), val in zip(free, values):
                arr[i, c] = val
            basis = MatrixFq(field, arr, _trusted=True)
            out.append(Subspace(field, n, basis, _trusted=True))
    out.sort(key=lambda s: tuple(s.basis.array.ravel()))
    return out


def enumerate_full_flags(field, n: int) -> list[Flag]:
    """Every maximal chain of subspaces of F_q^n, in lexicographic order."""
    from flagcodes.flags import Flag, FlagType

    _check_desk_scale(field, n)
    levels = [enumerate_grassmannian(field, n, d) for d in range(1, n)]
    ftype = FlagType(tuple(range(1, n)), n)
    chains: list[tuple[Subspace, ...]] = [(s,) for s in levels[0]]
    for level in levels[1:]:
        chains = [chain + (w,) for chain in chains for w in level if contains(w, chain[-1])]
    return [Flag(ftype, chain, _trusted=True) for chain in chains]
