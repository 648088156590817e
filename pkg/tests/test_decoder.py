"""Shot-by-shot decoding: lookup index, firing conditions, guarantees."""

from __future__ import annotations

import pytest

from conftest import enumerate_stuttering_subflags
from flagcodes.channel import inject
from flagcodes.decoder import (
    CHANNEL_CONTRACT_VIOLATED,
    NO_CONDITION_MET,
    build_index,
    correctable,
    decode,
)
from flagcodes.errors import NotDisjoint
from flagcodes.flags import StutteringFlag
from flagcodes.geometry import Subspace, contains, enumerate_grassmannian
from flagcodes.gf import PrimePowerField
from flagcodes.linalg import MatrixFq

F2 = PrimePowerField(2, 1)


@pytest.fixture(scope="module")
def index22(code22):
    return build_index(code22)


# conftest fixtures are session-scoped; redeclare for module fixture access
@pytest.fixture(scope="module")
def code22():
    from flagcodes.codes import full_flag_code_from_spread
    from flagcodes.spreads import build_spread

    return full_flag_code_from_spread(build_spread(F2, 2, 4))


class TestBuildIndex:
    def test_three_bijective_levels(self, code22, index22):
        assert len(index22.maps) == 3
        assert all(len(level) == 5 for level in index22.maps)
        assert all(sorted(level.values()) == [1, 2, 3, 4, 5] for level in index22.maps)

    def test_lookup_by_construction_order(self, code22, index22):
        first_member = code22.flags[0].subspaces[1]
        assert index22.lookup(2, first_member) == 1

    def test_non_disjoint_code_rejected(self, counterexample):
        with pytest.raises(NotDisjoint):
            build_index(counterexample)


class TestDecode:
    def test_late_shot_with_full_hyperplane(self, code22, index22):
        z = Subspace.zero(F2, 4)
        x = StutteringFlag(code22.type, (z, z, code22.flags[1].subspaces[2]))
        outcome = decode(code22, index22, x)
        assert outcome.decoded
        assert outcome.flag_index == 2
        assert outcome.decode_shot == 3

    def test_first_shot_line(self, code22, index22):
        f = code22.flags[0]
        x = StutteringFlag(code22.type, (f.subspaces[0], f.subspaces[1], f.subspaces[2]))
        outcome = decode(code22, index22, x)
        assert outcome.flag_index == 1
        assert outcome.decode_shot == 1

    def test_nothing_received(self, code22, index22):
        z = Subspace.zero(F2, 4)
        outcome = decode(code22, index22, StutteringFlag(code22.type, (z, z, z)))
        assert not outcome.decoded
        assert outcome.failure == NO_CONDITION_MET

    def test_middle_dimension_never_fires_below_threshold(self, code22, index22):
        # a plane of dimension 2 = 2(3-2) at shot 3 must not trigger decoding
        z = Subspace.zero(F2, 4)
        plane_inside = Subspace.from_matrix(
            MatrixFq.from_rows(F2, code22.flags[0].subspaces[2].basis.to_lists()[:2]))
        x = StutteringFlag(code22.type, (z, z, plane_inside))
        outcome = decode(code22, index22, x)
        assert outcome.failure == NO_CONDITION_MET

    def test_foreign_line_violates_the_erasure_contract(self, code22, index22):
        level1 = {f.subspaces[0] for f in code22.flags}
        foreign = next(s for s in enumerate_grassmannian(F2, 4, 1) if s not in level1)
        outcome = decode(code22, index22, [foreign])
        assert outcome.failure == CHANNEL_CONTRACT_VIOLATED

    def test_online_prefix_decoding(self, code22, index22):
        f1 = code22.flags[4].subspaces[0]
        outcome = decode(code22, index22, [f1])
        assert outcome.decoded
        assert outcome.flag_index == 5
        assert outcome.decode_shot == 1

    def test_decoded_flag_contains_received_subspace(self, code22, index22):
        z = Subspace.zero(F2, 4)
        x3 = code22.flags[2].subspaces[2]
        outcome = decode(code22, index22, StutteringFlag(code22.type, (z, z, x3)))
        decoded = code22.flags[outcome.flag_index - 1]
        assert contains(decoded.subspaces[outcome.decode_shot - 1], x3)

    def test_via_injected_trace(self, code22, index22):
        ys = [
            MatrixFq.zeros(F2, 0, 1),
            MatrixFq.zeros(F2, 0, 2),
            MatrixFq.identity(F2, 3),
        ]
        trace = inject(code22, 2, ys)
        outcome = decode(code22, index22, trace.received)
        assert outcome.flag_index == 2
        assert outcome.decode_shot == 3


class TestCorrectable:
    @pytest.mark.parametrize("e,k,expected", [
        (3, 2, True), (4, 2, False), (0, 2, True), (0, 5, True),
        (8, 3, True), (9, 3, False)])
    def test_radius(self, e, k, expected):
        assert correctable(e, k) is expected

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            correctable(-1, 2)


class TestGuarantee:
    def test_small_exhaustive_sample(self, code22, index22):
        """Every stuttering subflag of codeword 1 with error <= 3 decodes
        back to codeword 1 (full sweep over all codewords runs in the
        acceptance suite)."""
        flag = code22.flags[0]
        traces = enumerate_stuttering_subflags(code22, flag, 3)
        assert traces  # sanity: the sweep generates something
        for x, error in traces:
            outcome = decode(code22, index22, x)
            assert outcome.decoded, (x, error)
            assert outcome.flag_index == 1
