"""Construction and verification of k-spreads of F_q^n (k | n).

The planar case (n = 2k) uses the classic generator family built from
powers of the companion matrix of a primitive degree-k polynomial:
[I | M], [I | M^2], ..., [I | M^(q^k - 1)] = [I | I], then [I | 0] and
[0 | I].  For n = ks with s > 2 the spread comes from field reduction:
each projective point over the degree-k extension, written with entries
in {0} ∪ {M^e}, expands to a k-dimensional subspace of F_q^n.

Generator matrices are kept exactly as constructed (not canonicalized):
downstream flag constructions consume generator rows in this order, and
re-echelonizing would change the flags produced.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from itertools import product

import numpy as np

from flagcodes import linalg
from flagcodes.errors import NotDivisor, RankDeficient, TooLarge
from flagcodes.geometry import DESK_VECTOR_BOUND, Subspace
from flagcodes.gf import PrimePowerField, companion_matrix, find_primitive_polynomial
from flagcodes.linalg import MatrixFq


@dataclass(frozen=True)
class Spread:
    """A partition of the nonzero vectors of F_q^n into k-dimensional subspaces."""

    field: PrimePowerField
    n: int
    k: int
    members: tuple[Subspace, ...]
    generators: tuple[MatrixFq, ...]

    @property
    def is_planar(self) -> bool:
        return self.n == 2 * self.k

    def __len__(self) -> int:
        return len(self.members)


def spread_size(q: int, k: int, n: int) -> int:
    return (q**n - 1) // (q**k - 1)


def partial_spread_bound(q: int, k: int, n: int) -> int:
    """Largest possible number of pairwise trivially intersecting k-subspaces."""
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    return (q**n - 1) // (q**k - 1)


def build_spread(field: PrimePowerField, k: int, n: int) -> Spread:
    """The standard k-spread of F_q^n for k | n, with deterministic member order."""
    if not 1 <= k < n or n % k != 0:
        raise NotDivisor(f"k={k} must be a proper divisor of n={n}")
    if field.q**n > DESK_VECTOR_BOUND:
        raise TooLarge(f"q^n = {field.q ** n} exceeds the desk bound {DESK_VECTOR_BOUND}")

    poly = find_primitive_polynomial(field, k)
    m_mat = companion_matrix(field, poly)
    s = n // k
    ident = MatrixFq.identity(field, k)
    zero = MatrixFq.zeros(field, k, k)
    qk = field.q**k

    generators: list[MatrixFq] = []
    if s == 2:
        power = ident
        for _ in range(qk - 1):
            power = linalg.matmul(power, m_mat)
            generators.append(linalg.hstack(ident, power))
        generators.append(linalg.hstack(ident, zero))
        generators.append(linalg.hstack(zero, ident))
    else:
        # field reduction: powers of the companion matrix represent the
        # nonzero scalars of the degree-k extension
        powers = [ident]
        for _ in range(qk - 2):
            powers.append(linalg.matmul(powers[-1], m_mat))
        scalars = [zero] + powers
        for lead in range(s):
            for tail in product(range(qk), repeat=s - lead - 1):
                blocks = [zero] * lead + [ident] + [scalars[t] for t in tail]
                gen = blocks[0]
                for b in blocks[1:]:
                    gen = linalg.hstack(gen, b)
                generators.append(gen)

    members = tuple(Subspace.from_matrix(g) for g in generators)
    return Spread(field, n, k, members, tuple(generators))


@dataclass
class SpreadReport:
    """Outcome of the spread axioms check; ``violations`` is empty on success."""

    expected_size: int
    actual_size: int
    planar: bool
    violations: list[str] = dataclass_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_spread(spread: Spread) -> SpreadReport:
    """Check cardinality, pairwise trivial intersection, exhaustive coverage,
    and (for planar spreads) pairwise full sums."""
    q, k, n = spread.field.q, spread.k, spread.n
    report = SpreadReport(
        expected_size=spread_size(q, k, n),
        actual_size=len(spread.members),
        planar=spread.is_planar,
    )
    if report.actual_size != report.expected_size:
        report.violations.append(
            f"size {report.actual_size} != (q^n-1)/(q^k-1) = {report.expected_size}")

    for g in spread.generators:
        if linalg.matrix_rank(g) != k:
            report.violations.append(f"generator {g.to_lists()} is rank deficient")

    members = spread.members
    for a in range(len(members)):
        for b in range(a + 1, len(members)):
            d = linalg.rank_of_stack(members[a].basis, members[b].basis)
            inter = members[a].dim + members[b].dim - d
            if inter != 0:
                report.violations.append(
                    f"members {a + 1} and {b + 1} intersect in dimension {inter}")
            if spread.is_planar and d != n:
                report.violations.append(
                    f"members {a + 1} and {b + 1} sum to dimension {d} < {n}")

    if q**n <= DESK_VECTOR_BOUND:
        counts = np.zeros(q**n, dtype=np.int64)
        weights = q ** np.arange(n, dtype=np.int64)
        for member in members:
            for vec in linalg.row_space_vectors(member.basis):
                counts[int(np.dot(np.array(vec, dtype=np.int64), weights))] += 1
        if counts[0] != len(members):
            report.violations.append("zero vector miscounted (broken member basis)")
        bad = np.nonzero(counts[1:] != 1)[0]
        if bad.size:
            report.violations.append(
                f"{bad.size} nonzero vectors not covered exactly once "
                f"(first offender: vector code {int(bad[0]) + 1})")
    return report


def require_full_rank_generators(spread: Spread) -> None:
    for g in spread.generators:
        if linalg.matrix_rank(g) != spread.k:
            raise RankDeficient("spread generator lost full rank")
