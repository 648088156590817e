"""Flags, stuttering flags, flag distance, and the distance-optimality test.

The distance between two flags is the coordinate-wise sum of subspace
distances.  A code is distance-optimal when its exhaustively computed
minimum distance reaches the type's upper bound; the structural test
(disjointness plus per-coordinate maximum distance) is computed by an
independent route and the two verdicts are cross-checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from flagcodes.errors import CodeTooSmall, IndexOutOfRange, TypeMismatch
from flagcodes.geometry import (
    Subspace,
    contains,
    max_subspace_distance,
    subspace_distance,
)

if TYPE_CHECKING:
    from flagcodes.codes import FlagCode


@dataclass(frozen=True)
class FlagType:
    """Strictly increasing dimension vector (t_1, ..., t_r) with t_r < n."""

    dims: tuple[int, ...]
    ambient_n: int

    def __post_init__(self):
        dims = tuple(int(t) for t in self.dims)
        object.__setattr__(self, "dims", dims)
        if not dims:
            raise ValueError("a flag type needs at least one dimension")
        if dims[0] <= 0 or dims[-1] >= self.ambient_n:
            raise ValueError(f"dimensions {dims} outside (0, {self.ambient_n})")
        if any(a >= b for a, b in zip(dims, dims[1:])):
            raise ValueError(f"dimensions {dims} not strictly increasing")

    @property
    def r(self) -> int:
        return len(self.dims)

    @property
    def is_full(self) -> bool:
        return self.dims == tuple(range(1, self.ambient_n))

    @classmethod
    def full(cls, n: int) -> FlagType:
        return cls(tuple(range(1, n)), n)


class Flag:
    """A strictly nested sequence of subspaces matching a flag type."""

    __slots__ = ("type", "subspaces", "_key")

    def __init__(self, ftype: FlagType, subspaces: Sequence[Subspace], _trusted: bool = False):
        subspaces = tuple(subspaces)
        if not _trusted:
            if len(subspaces) != ftype.r:
                raise ValueError(f"expected {ftype.r} subspaces, got {len(subspaces)}")
            for t, s in zip(ftype.dims, subspaces):
                if s.ambient_n != ftype.ambient_n:
                    raise ValueError("subspace ambient dimension does not match the type")
                if s.dim != t:
                    raise ValueError(f"subspace of dimension {s.dim} where {t} expected")
            for a, b in zip(subspaces, subspaces[1:]):
                if not contains(b, a):
                    raise ValueError("subspaces are not nested")
        self.type = ftype
        self.subspaces = subspaces
        self._key = tuple(s._key for s in subspaces)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Flag):
            return NotImplemented
        return self.type == other.type and self._key == other._key

    def __hash__(self) -> int:
        return hash((self.type, self._key))

    def __repr__(self) -> str:
        return f"Flag(type={self.type.dims}, n={self.type.ambient_n})"


class StutteringFlag:
    """A weakly nested subspace sequence: repeats and zero subspaces allowed.

    This is what an erasure channel delivers; the type records the code
    the transmission came from, so dim(X_i) <= t_i always holds.
    """

    __slots__ = ("type", "subspaces")

    def __init__(self, ftype: FlagType, subspaces: Sequence[Subspace]):
        subspaces = tuple(subspaces)
        if len(subspaces) != ftype.r:
            raise ValueError(f"expected {ftype.r} subspaces, got {len(subspaces)}")
        for t, s in zip(ftype.dims, subspaces):
            if s.ambient_n != ftype.ambient_n:
                raise ValueError("subspace ambient dimension does not match the type")
            if s.dim > t:
                raise ValueError(f"received dimension {s.dim} exceeds sent dimension {t}")
        for a, b in zip(subspaces, subspaces[1:]):
            if not contains(b, a):
                raise ValueError("received subspaces are not weakly nested")
        self.type = ftype
        self.subspaces = subspaces

    def __repr__(self) -> str:
        dims = tuple(s.dim for s in self.subspaces)
        return f"StutteringFlag(dims={dims}, type={self.type.dims})"


def flag_distance(f: Flag | StutteringFlag, g: Flag | StutteringFlag) -> int:
    """Sum of per-coordinate subspace distances.

    Flag-to-flag comparison requires identical types; a flag may also be
    compared against a stuttering flag received from the channel, in
    which case only the ambient space and the number of shots must
    match.
    """
    strict = isinstance(f, Flag) and isinstance(g, Flag)
    if strict and f.type != g.type:
        raise TypeMismatch(f"flag types differ: {f.type.dims} vs {g.type.dims}")
    if f.type.ambient_n != g.type.ambient_n or f.type.r != g.type.r:
        raise TypeMismatch("ambient dimension or shot count differs")
    return sum(subspace_distance(a, b) for a, b in zip(f.subspaces, g.subspaces))


def max_flag_distance_bound(ftype: FlagType) -> int:
    """Upper bound on the distance of any flag code of this type.

    Coordinates of dimension at most n/2 can contribute 2 t_i, the rest
    2 (n - t_i); for a full flag type this evaluates to n^2/2 for even n
    and (n^2 - 1)/2 for odd n.
    """
    half = ftype.ambient_n // 2
    total = sum(t if t <= half else ftype.ambient_n - t for t in ftype.dims)
    return 2 * total


def projected_code(code: FlagCode, i: int) -> list[Subspace]:
    """The distinct i-th subspaces of the code, in first-seen order (i is 1-based)."""
    if not 1 <= i <= code.type.r:
        raise IndexOutOfRange(f"projection index {i} outside [1, {code.type.r}]")
    seen = set()
    out = []
    for flag in code.flags:
        s = flag.subspaces[i - 1]
        if s not in seen:
            seen.add(s)
            out.append(s)
    return out


def is_disjoint(code: FlagCode) -> bool:
    """True iff every projected code has as many subspaces as the code has flags."""
    if len(code.flags) < 2:
        raise CodeTooSmall("disjointness needs at least two flags")
    return all(
        len(projected_code(code, i)) == len(code.flags) for i in range(1, code.type.r + 1))


def min_flag_distance(code: FlagCode) -> int:
    """Exhaustive all-pairs minimum distance."""
    if len(code.flags) < 2:
        raise CodeTooSmall("minimum distance needs at least two flags")
    flags = code.flags
    return min(
        flag_distance(flags[a], flags[b])
        for a in range(len(flags))
        for b in range(a + 1, len(flags)))


@dataclass(frozen=True)
class OptimumDistanceReport:
    """Both optimality verdicts plus the evidence they were computed from."""

    min_distance: int
    bound: int
    disjoint: bool
    projected_sizes: tuple[int, ...]
    projected_min_distances: tuple[int, ...]
    projected_bounds: tuple[int, ...]

    @property
    def is_optimum(self) -> bool:
        return self.min_distance == self.bound

    @property
    def characterization(self) -> bool:
        """Structural verdict: disjoint and every projection at maximum distance."""
        return self.disjoint and all(
            d == b for d, b in zip(self.projected_min_distances, self.projected_bounds))


def is_optimum_distance(code: FlagCode) -> OptimumDistanceReport:
    """Check distance optimality directly and structurally.

    The direct route compares the exhaustive minimum distance against
    the type bound.  The structural route checks disjointness and that
    each projected code attains the maximum subspace distance for its
    dimension (a singleton projection counts as distance 0).  The two
    verdicts provably coincide; a mismatch would be a bug and raises.
    """
    if len(code.flags) < 2:
        raise CodeTooSmall("optimality needs at least two flags")
    n = code.type.ambient_n
    bound = max_flag_distance_bound(code.type)
    dmin = min_flag_distance(code)

    sizes = []
    proj_dists = []
    proj_bounds = []
    for i, t in enumerate(code.type.dims, start=1):
        proj = projected_code(code, i)
        sizes.append(len(proj))
        if len(proj) < 2:
            proj_dists.append(0)
        else:
            proj_dists.append(min(
                subspace_distance(proj[a], proj[b])
                for a in range(len(proj))
                for b in range(a + 1, len(proj))))
        proj_bounds.append(max_subspace_distance(t, n))

    report = OptimumDistanceReport(
        min_distance=dmin,
        bound=bound,
        disjoint=all(s == len(code.flags) for s in sizes),
        projected_sizes=tuple(sizes),
        projected_min_distances=tuple(proj_dists),
        projected_bounds=tuple(proj_bounds),
    )
    if report.is_optimum != report.characterization:
        raise RuntimeError(
            f"optimality verdicts disagree (direct={report.is_optimum}, "
            f"structural={report.characterization}): {report}")
    return report
