"""Flag-code constructions from spreads, puncturing, and structural checks.

The central construction stacks each planar-spread generator on its
cyclic successor; the resulting square matrices are full rank, and the
row spaces of their length-j prefixes form full flags.  The code of all
such flags is disjoint, equidistant, and attains the full-flag distance
bound with the largest possible size.  Puncturing keeps a subset of the
coordinates; the divisor-type construction does the analogous prefix
trick directly on a k-spread of F_q^n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from flagcodes import linalg
from flagcodes.errors import (
    CodeTooSmall,
    NotDivisor,
    NotPlanar,
    RankDeficient,
    TooLarge,
    TypeNotSubset,
)
from flagcodes.flags import (
    Flag,
    FlagType,
    flag_distance,
    is_optimum_distance,
    max_flag_distance_bound,
    projected_code,
)
from flagcodes.geometry import Subspace, gaussian_binomial, intersection_dim
from flagcodes.gf import PrimePowerField
from flagcodes.linalg import MatrixFq
from flagcodes.spreads import Spread, build_spread, partial_spread_bound, verify_spread


# -- provenance tags -------------------------------------------------------


@dataclass(frozen=True)
class FullFromSpread:
    spread: Spread


@dataclass(frozen=True)
class Punctured:
    parent: "FlagCode"
    original_type: FlagType


@dataclass(frozen=True)
class DivisorType:
    spread: Spread


@dataclass(frozen=True)
class Adhoc:
    pass


Provenance = FullFromSpread | Punctured | DivisorType | Adhoc


class FlagCode:
    """An ordered collection of distinct flags sharing one type.

    ``generators``, when present, holds one t_r x n matrix per flag whose
    length-t_i row prefixes generate the flag's subspaces; the channel
    needs them, and the file format stores them.  Flag indices in public
    interfaces are 1-based, matching the generator numbering.
    """

    __slots__ = ("field", "n", "type", "flags", "provenance", "generators")

    def __init__(self, field: PrimePowerField, ftype: FlagType, flags: Sequence[Flag],
                 provenance: Provenance = Adhoc(),
                 generators: Sequence[MatrixFq] | None = None):
        flags = tuple(flags)
        if len(flags) < 2:
            raise CodeTooSmall("a flag code needs at least two flags")
        seen = set()
        for f in flags:
            if f.type != ftype:
                raise ValueError("all flags must share the code's type")
            if f in seen:
                raise ValueError("duplicate flag rejected")
            seen.add(f)
        if generators is not None:
            generators = tuple(generators)
            if len(generators) != len(flags):
                raise ValueError("one generator matrix per flag required")
        self.field = field
        self.n = ftype.ambient_n
        self.type = ftype
        self.flags = flags
        self.provenance = provenance
        self.generators = generators

    def __len__(self) -> int:
        return len(self.flags)

    def __iter__(self):
        return iter(self.flags)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FlagCode):
            return NotImplemented
        return (self.field == other.field and self.type == other.type
                and self.flags == other.flags)

    def __repr__(self) -> str:
        return (f"FlagCode(q={self.field.q}, n={self.n}, "
                f"type={self.type.dims}, size={len(self.flags)})")


# -- the full-flag construction -------------------------------------------


def cyclic_pair_matrices(spread: Spread) -> tuple[MatrixFq, ...]:
    """Stack every planar-spread generator on its cyclic successor.

    Each result is a full-rank 2k x 2k matrix whose top k rows generate
    the spread member itself.
    """
    if not spread.is_planar:
        raise NotPlanar(f"need n = 2k, got n={spread.n}, k={spread.k}")
    gens = spread.generators
    out = []
    for i, gen in enumerate(gens):
        succ = gens[(i + 1) % len(gens)]
        stacked = linalg.stack(gen, succ)
        if linalg.matrix_rank(stacked) != spread.n:
            raise RankDeficient(
                f"stacked generators {i + 1} and {(i + 1) % len(gens) + 1} "
                "are rank deficient; spread is corrupted")
        out.append(stacked)
    return tuple(out)


def full_flag_code_from_spread(spread: Spread) -> FlagCode:
    """The largest-size maximum-distance full flag code over F_q^{2k}.

    Flag i consists of the row spaces of the length-1 .. length-(2k-1)
    prefixes of the i-th stacked generator pair; its k-th subspace is the
    i-th spread member.
    """
    pair_matrices = cyclic_pair_matrices(spread)
    n = spread.n
    ftype = FlagType.full(n)
    flags = []
    generators = []
    for w in pair_matrices:
        chain = [Subspace.from_matrix(linalg.row_prefix(w, j)) for j in range(1, n)]
        flags.append(Flag(ftype, chain, _trusted=True))
        generators.append(linalg.row_prefix(w, n - 1))
    return FlagCode(spread.field, ftype, flags,
                    provenance=FullFromSpread(spread), generators=generators)


@dataclass
class ConstructionReport:
    """Structural check of a spread-built code's projected codes."""

    size: int
    per_level: list[tuple[int, str, bool]]  # (dimension, expectation, ok)
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_projected_structure(code: FlagCode) -> ConstructionReport:
    """Check the projected-code structure of a spread-built full flag code.

    Levels up to k must intersect pairwise in 0; levels j above k must
    intersect pairwise in exactly 2(j - k); every level must have as many
    subspaces as the code has flags.
    """
    if not isinstance(code.provenance, FullFromSpread):
        raise ValueError("structure check applies to codes built from a spread")
    k = code.n // 2
    report = ConstructionReport(size=len(code), per_level=[], violations=[])
    for j in code.type.dims:
        proj = projected_code(code, j)
        if len(proj) != len(code):
            report.violations.append(
                f"level {j}: {len(proj)} distinct subspaces, expected {len(code)}")
        expected = 0 if j <= k else 2 * (j - k)
        label = "pairwise trivial intersection" if j <= k else \
            f"pairwise intersection dimension {expected}"
        ok = True
        for a in range(len(proj)):
            for b in range(a + 1, len(proj)):
                inter = intersection_dim(proj[a], proj[b])
                if inter != expected:
                    ok = False
                    report.violations.append(
                        f"level {j}: members {a + 1},{b + 1} intersect in {inter}, "
                        f"expected {expected}")
        report.per_level.append((j, label, ok))
    return report


# -- derived codes ----------------------------------------------------------


def puncture(code: FlagCode, ftype: FlagType) -> FlagCode:
    """Keep only the coordinates listed in ``ftype``; duplicates collapse.

    When the parent attains its distance bound the result provably keeps
    all |C| flags and attains the bound for the new type; both facts are
    re-checked here.
    """
    if ftype.ambient_n != code.n or not set(ftype.dims) <= set(code.type.dims):
        raise TypeNotSubset(
            f"type {ftype.dims} is not a sub-type of {code.type.dims} on n={code.n}")
    positions = [code.type.dims.index(t) for t in ftype.dims]
    kept = []
    seen = set()
    for flag in code.flags:
        sub = Flag(ftype, tuple(flag.subspaces[p] for p in positions), _trusted=True)
        if sub not in seen:
            seen.add(sub)
            kept.append(sub)
    result = FlagCode(code.field, ftype, kept, provenance=Punctured(code, code.type))
    if is_optimum_distance(code).is_optimum:
        if len(result) != len(code):
            raise RuntimeError("puncturing an optimal code must not collapse flags")
        if not is_optimum_distance(result).is_optimum:
            raise RuntimeError("puncturing an optimal code must stay optimal")
    return result


def divisor_type_code(field: PrimePowerField, n: int, dims: Sequence[int]) -> FlagCode:
    """Maximum-distance flag code of any type whose top dimension divides n.

    Builds the t_r-spread of F_q^n and takes the row spaces of each
    generator's length-t_1, ..., length-t_{r-1} prefixes below the member
    itself.
    """
    ftype = FlagType(tuple(dims), n)
    t_top = ftype.dims[-1]
    if n % t_top != 0:
        raise NotDivisor(f"top dimension {t_top} does not divide n={n}")
    spread = build_spread(field, t_top, n)
    flags = []
    generators = []
    for gen, member in zip(spread.generators, spread.members):
        chain = [Subspace.from_matrix(linalg.row_prefix(gen, t)) for t in ftype.dims[:-1]]
        chain.append(member)
        flags.append(Flag(ftype, tuple(chain), _trusted=True))
        generators.append(gen)
    code = FlagCode(field, ftype, flags, provenance=DivisorType(spread),
                    generators=generators)
    if not is_optimum_distance(code).is_optimum:
        raise RuntimeError("divisor-type construction failed to attain the bound")
    return code


# -- admissible spread projections ------------------------------------------


@dataclass(frozen=True)
class SpreadProjectionVerdict:
    """Whether a full flag code can have a k-spread as its k-th projection."""

    n: int
    k: int
    s: int
    admissible: bool
    detail: str


def check_spread_projection_dimension(n: int, k: int) -> SpreadProjectionVerdict:
    """Decide if dimension k admits a spread projection inside a
    maximum-distance full flag code on F_q^n.

    Only n = 2k survives the counting argument (every level must carry
    as many subspaces as the spread, but partial spreads one dimension up
    are strictly smaller); n = 3 with k = 1 is the one special case left
    open.  The inadmissible branch reports the violated sizes evaluated
    at q = 2; the same inequality holds for every prime power.
    """
    if not 1 <= k < n or n % k != 0:
        raise NotDivisor(f"k={k} must be a proper divisor of n={n}")
    s = n // k
    if s == 2:
        return SpreadProjectionVerdict(n, k, s, True, "n = 2k")
    if n == 3:
        return SpreadProjectionVerdict(
            n, k, s, True, "n = 3, k = 1: admissible special case (no construction here)")
    bound_up = partial_spread_bound(2, k + 1, n)
    size = (2**n - 1) // (2**k - 1)
    return SpreadProjectionVerdict(
        n, k, s, False,
        f"at q=2: partial spreads of dimension {k + 1} have at most {bound_up} members "
        f"< spread size {size}")


# -- exhaustive maximality oracle --------------------------------------------


@dataclass
class MaximalityResult:
    max_size: int
    witnesses: list[list[Flag]]
    flag_count: int
    edge_count: int


def _color_order(cand: int, adj: list[int]) -> list[tuple[int, int]]:
    """Greedy coloring of the candidate set; returns (vertex, color) sorted
    by increasing color, the standard branch-and-bound ordering."""
    order = []
    color = 0
    rest = cand
    while rest:
        color += 1
        avail = rest
        while avail:
            bit = avail & (-avail)
            v = bit.bit_length() - 1
            avail &= ~bit & ~adj[v]
            rest &= ~bit
            order.append((v, color))
    return order


def _max_cliques(adj: list[int], n_vertices: int, cap: int) -> tuple[int, list[list[int]]]:
    """Exact maximum clique search (coloring-bounded branch and bound),
    sampling up to ``cap`` maximum cliques."""
    best = 0
    witnesses: list[list[int]] = []

    def expand(r: list[int], cand: int) -> None:
        nonlocal best, witnesses
        order = _color_order(cand, adj)
        for v, c in reversed(order):
            reach = len(r) + c
            if reach < best or (reach == best and len(witnesses) >= cap):
                return
            bit = 1 << v
            new_cand = cand & adj[v]
            r.append(v)
            if new_cand:
                expand(r, new_cand)
            else:
                if len(r) > best:
                    best = len(r)
                    witnesses = [r.copy()]
                elif len(r) == best and len(witnesses) < cap:
                    witnesses.append(r.copy())
            r.pop()
            cand &= ~bit

    expand([], (1 << n_vertices) - 1)
    return best, witnesses


def maximality_oracle(field: PrimePowerField, n: int,
                      witness_cap: int = 5) -> MaximalityResult:
    """Exhaustively find the largest full flag code at the distance bound.

    Enumerates every full flag of F_q^n, connects pairs at the bound
    distance, and runs an exact branch-and-bound maximum clique search.
    Each sampled maximum clique's middle projection is checked to be a
    planar spread.  Only desk-scale inputs (a few hundred flags) are
    accepted.
    """
    from flagcodes.geometry import enumerate_full_flags

    if n % 2 != 0:
        raise NotPlanar(f"oracle targets even n (n = 2k), got n={n}")
    total = 1
    for j in range(2, n + 1):
        total *= gaussian_binomial(j, 1, field.q)
    if total > 5000:
        raise TooLarge(f"{total} full flags exceed the oracle bound of 5000")

    flags = enumerate_full_flags(field, n)
    bound = max_flag_distance_bound(FlagType.full(n))
    count = len(flags)
    adj = [0] * count
    edges = 0
    for a in range(count):
        for b in range(a + 1, count):
            if flag_distance(flags[a], flags[b]) == bound:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
                edges += 1

    best, witness_idx = _max_cliques(adj, count, witness_cap)
    witnesses = [[flags[i] for i in clique] for clique in witness_idx]

    k = n // 2
    for clique in witnesses:
        members = tuple(f.subspaces[k - 1] for f in clique)
        spread = Spread(field, n, k, members, tuple(m.basis for m in members))
        report = verify_spread(spread)
        if not report.ok:
            raise RuntimeError(
                f"maximum clique's level-{k} projection is not a planar spread: "
                f"{report.violations[:3]}")
    return MaximalityResult(best, witnesses, count, edges)
