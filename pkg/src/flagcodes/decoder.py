"""Shot-by-shot erasure decoding for spread-built full flag codes.

The decoder scans the received sequence once.  A shot i at or below
k = n/2 fires as soon as the received subspace is nonzero (levels up to
k are partial spreads, so one nonzero vector pins the codeword); a shot
above k fires once the received dimension exceeds 2(i - k), the exact
pairwise intersection dimension at that level.  Decoding is online: a
prefix of the shots is enough whenever a condition fires early.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from flagcodes.codes import FlagCode
from flagcodes.errors import NotDisjoint, TypeMismatch
from flagcodes.flags import StutteringFlag, is_disjoint
from flagcodes.geometry import Subspace, contains

NO_CONDITION_MET = "NoConditionMet"
CHANNEL_CONTRACT_VIOLATED = "ChannelContractViolated"


@dataclass(frozen=True)
class DecoderIndex:
    """Per-shot lookup from a canonical subspace to its (1-based) flag index."""

    maps: tuple[dict[Subspace, int], ...]

    def lookup(self, shot: int, subspace: Subspace) -> int | None:
        return self.maps[shot - 1].get(subspace)


@dataclass(frozen=True)
class DecodeOutcome:
    """Either a decoded (flag index, shot) pair or a failure reason."""

    flag_index: int | None = None
    decode_shot: int | None = None
    failure: str | None = None

    @property
    def decoded(self) -> bool:
        return self.failure is None


def build_index(code: FlagCode) -> DecoderIndex:
    """Bijective per-shot subspace-to-flag maps; requires a disjoint code."""
    if not is_disjoint(code):
        raise NotDisjoint("per-shot lookup needs a disjoint code")
    maps = []
    for i in range(1, code.type.r + 1):
        level = {flag.subspaces[i - 1]: idx for idx, flag in enumerate(code.flags, start=1)}
        maps.append(level)
    return DecoderIndex(tuple(maps))


def correctable(total_error: int, k: int) -> bool:
    """Whether a total error is within the guaranteed correction radius k^2 - 1."""
    if total_error < 0:
        raise ValueError("total error cannot be negative")
    return total_error <= k * k - 1


def decode(code: FlagCode, index: DecoderIndex,
           received: StutteringFlag | Sequence[Subspace]) -> DecodeOutcome:
    """Decode a (possibly partial) received sequence against a full flag code.

    Accepts a stuttering flag or any prefix of its subspaces.  Returns at
    the first shot whose firing condition holds; if that shot's subspace
    sits in no codeword, genuine errors (not erasures) occurred and the
    erasure contract was violated.
    """
    if not code.type.is_full:
        raise TypeMismatch("decoding targets full flag codes")
    if isinstance(received, StutteringFlag):
        if received.type.ambient_n != code.n or received.type.r != code.type.r:
            raise TypeMismatch("received sequence does not match the code's type")
        shots = received.subspaces
    else:
        shots = tuple(received)
        if len(shots) > code.type.r:
            raise TypeMismatch(f"at most {code.type.r} shots expected")
    k = code.n // 2
    for i, x in enumerate(shots, start=1):
        fires = x.dim > 0 if i <= k else x.dim > 2 * (i - k)
        if not fires:
            continue
        candidates = [
            idx for idx, member in enumerate(projected_code_level(code, i), start=1)
            if contains(member, x)
        ]
        if not candidates:
            return DecodeOutcome(failure=CHANNEL_CONTRACT_VIOLATED)
        if len(candidates) > 1:
            raise RuntimeError(
                f"shot {i}: {len(candidates)} codewords contain the received subspace; "
                "code lacks the required level structure")
        member = code.flags[candidates[0] - 1].subspaces[i - 1]
        flag_idx = index.lookup(i, member)
        assert flag_idx is not None
        return DecodeOutcome(flag_index=flag_idx, decode_shot=i)
    return DecodeOutcome(failure=NO_CONDITION_MET)


def projected_code_level(code: FlagCode, i: int) -> list[Subspace]:
    """The i-th subspace of every flag, in flag order (no dedup)."""
    return [flag.subspaces[i - 1] for flag in code.flags]
