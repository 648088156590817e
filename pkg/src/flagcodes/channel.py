"""Multishot erasure channel for full flag codes.

At shot i the source emits the i-th generator row; intermediate nodes
forward random linear combinations, so the receiver's packets are the
product of a random combination matrix (one row per packet, i columns)
with the length-i generator prefix.  The receiver accumulates every
packet seen so far, which makes the received sequence a stuttering flag
contained coordinate-wise in the sent flag.

Erasures enter through two independent mechanisms: with probability
``newest_row_erasure_prob`` the newest row's contribution is lost (the
combination matrix's last column is zeroed), and with probability
``shot_blackout_prob`` a whole shot delivers nothing.  Randomness comes
from numpy's counter-based Philox generator; a trace is fully
reproducible from (code, flag index, config), and trial t of a batch
uses the spawn key (seed, t).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from flagcodes import linalg
from flagcodes.codes import FlagCode
from flagcodes.decoder import DecodeOutcome, build_index, correctable, decode
from flagcodes.errors import IndexOutOfRange, ShapeMismatch, TypeMismatch
from flagcodes.flags import Flag, StutteringFlag
from flagcodes.geometry import Subspace, contains, subspace_distance
from flagcodes.linalg import MatrixFq


@dataclass(frozen=True)
class ChannelConfig:
    """Erasure-channel parameters.

    ``packets_per_shot`` may be a single count, a per-shot sequence, or
    None for the default a_i = i (just enough packets for full recovery
    when nothing is erased).
    """

    packets_per_shot: int | tuple[int, ...] | None = None
    newest_row_erasure_prob: float = 0.0
    shot_blackout_prob: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.newest_row_erasure_prob <= 1.0:
            raise ValueError("erasure probability must be in [0, 1]")
        if not 0.0 <= self.shot_blackout_prob <= 1.0:
            raise ValueError("blackout probability must be in [0, 1]")
        if isinstance(self.packets_per_shot, Sequence):
            object.__setattr__(self, "packets_per_shot",
                               tuple(int(a) for a in self.packets_per_shot))
        if self.packets_per_shot is not None:
            counts = (self.packets_per_shot,) if isinstance(self.packets_per_shot, int) \
                else self.packets_per_shot
            if any(a < 0 for a in counts):
                raise ValueError("packet counts must be nonnegative")

    def packet_count(self, shot: int, r: int) -> int:
        if self.packets_per_shot is None:
            return shot
        if isinstance(self.packets_per_shot, int):
            return self.packets_per_shot
        if len(self.packets_per_shot) != r:
            raise ValueError(
                f"expected {r} per-shot packet counts, got {len(self.packets_per_shot)}")
        return self.packets_per_shot[shot - 1]


@dataclass(frozen=True)
class TransmissionTrace:
    """One channel use: the random combinations, the received stuttering
    flag, and the per-shot / total errors."""

    sent_flag_index: int
    received: StutteringFlag
    combination_matrices: tuple[MatrixFq, ...]
    shot_errors: tuple[int, ...]
    total_error: int


def _sent_flag(code: FlagCode, flag_index: int) -> Flag:
    if not 1 <= flag_index <= len(code):
        raise IndexOutOfRange(f"flag index {flag_index} outside [1, {len(code)}]")
    return code.flags[flag_index - 1]


def _require_transmittable(code: FlagCode) -> None:
    if not code.type.is_full or code.generators is None:
        raise TypeMismatch(
            "transmission needs a full flag code with per-flag generator matrices")


def _assemble_trace(code: FlagCode, flag_index: int,
                    y_matrices: Sequence[MatrixFq]) -> TransmissionTrace:
    sent = _sent_flag(code, flag_index)
    generator = code.generators[flag_index - 1]
    field = code.field
    r = code.type.r
    if len(y_matrices) != r:
        raise ShapeMismatch(f"expected {r} combination matrices, got {len(y_matrices)}")

    received: list[Subspace] = []
    shot_errors: list[int] = []
    acc = MatrixFq.zeros(field, 0, code.n)
    for i, y in enumerate(y_matrices, start=1):
        if y.cols != i:
            raise ShapeMismatch(f"shot {i}: combination matrix must have {i} columns")
        z = linalg.matmul(y, linalg.row_prefix(generator, i))
        acc = linalg.stack(acc, z)
        x = Subspace.from_matrix(acc)
        acc = x.basis
        sent_i = sent.subspaces[i - 1]
        assert contains(sent_i, x), "erasure channel delivered vectors outside the sent flag"
        received.append(x)
        shot_errors.append(subspace_distance(sent_i, x))
    stuttering = StutteringFlag(code.type, received)
    return TransmissionTrace(
        sent_flag_index=flag_index,
        received=stuttering,
        combination_matrices=tuple(y_matrices),
        shot_errors=tuple(shot_errors),
        total_error=sum(shot_errors),
    )


def transmit(code: FlagCode, flag_index: int, config: ChannelConfig,
             rng: np.random.Generator | None = None) -> TransmissionTrace:
    """Send one flag through the random erasure channel."""
    _require_transmittable(code)
    _sent_flag(code, flag_index)
    if rng is None:
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(config.seed)))
    field = code.field
    r = code.type.r
    ys = []
    for i in range(1, r + 1):
        a_i = config.packet_count(i, r)
        if config.shot_blackout_prob and rng.random() < config.shot_blackout_prob:
            a_i = 0
        if a_i == 0:
            ys.append(MatrixFq.zeros(field, 0, i))
            continue
        arr = rng.integers(0, field.q, size=(a_i, i), dtype=np.int64)
        if config.newest_row_erasure_prob and rng.random() < config.newest_row_erasure_prob:
            arr[:, -1] = 0
        ys.append(MatrixFq(field, arr, _trusted=True))
    return _assemble_trace(code, flag_index, ys)


def inject(code: FlagCode, flag_index: int,
           combination_matrices: Sequence[MatrixFq]) -> TransmissionTrace:
    """Deterministic replay of the channel with given combination matrices."""
    _require_transmittable(code)
    return _assemble_trace(code, flag_index, combination_matrices)


def error_accounting(sent: Flag, received: StutteringFlag) -> tuple[tuple[int, ...], int]:
    """Per-shot subspace errors and their sum."""
    if sent.type.ambient_n != received.type.ambient_n or sent.type.r != received.type.r:
        raise TypeMismatch("flag and received sequence have incompatible types")
    errors = tuple(
        subspace_distance(a, b) for a, b in zip(sent.subspaces, received.subspaces))
    return errors, sum(errors)


# -- seeded simulation -------------------------------------------------------


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    sent_index: int
    total_error: int
    correctable: bool
    decoded: bool
    correct: bool
    decode_shot: int | None


@dataclass(frozen=True)
class SimulationResult:
    config: ChannelConfig
    records: tuple[TrialRecord, ...]

    @property
    def trials(self) -> int:
        return len(self.records)

    def count(self, predicate) -> int:
        return sum(1 for rec in self.records if predicate(rec))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Per-trial counter-based generator: Philox keyed by (seed, trial)."""
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(seed, spawn_key=(trial,))))


def run_trials(code: FlagCode, config: ChannelConfig, trials: int) -> SimulationResult:
    """Transmit ``trials`` random codewords and decode each trace."""
    _require_transmittable(code)
    index = build_index(code)
    k = code.n // 2
    records = []
    for t in range(trials):
        rng = trial_rng(config.seed, t)
        sent = int(rng.integers(1, len(code) + 1))
        trace = transmit(code, sent, config, rng=rng)
        outcome: DecodeOutcome = decode(code, index, trace.received)
        records.append(TrialRecord(
            trial=t,
            sent_index=sent,
            total_error=trace.total_error,
            correctable=correctable(trace.total_error, k),
            decoded=outcome.decoded,
            correct=outcome.decoded and outcome.flag_index == sent,
            decode_shot=outcome.decode_shot,
        ))
    return SimulationResult(config=config, records=tuple(records))


def format_simulation_report(result: SimulationResult, machine: bool = False) -> str:
    """Render a simulation deterministically (same result, same bytes)."""
    cfg = result.config
    total = result.trials
    n_correctable = result.count(lambda r: r.correctable)
    n_decoded = result.count(lambda r: r.decoded)
    n_correct = result.count(lambda r: r.correct)
    n_corr_ok = result.count(lambda r: r.correctable and r.correct)
    lines = []
    if machine:
        for r in result.records:
            shot = r.decode_shot if r.decode_shot is not None else "-"
            lines.append(
                f"trial={r.trial} sent={r.sent_index} e={r.total_error} "
                f"correctable={int(r.correctable)} decoded={int(r.decoded)} "
                f"correct={int(r.correct)} shot={shot}")
    lines.append(
        f"trials={total} seed={cfg.seed} "
        f"erasure_prob={cfg.newest_row_erasure_prob:.6f} "
        f"blackout_prob={cfg.shot_blackout_prob:.6f}")
    lines.append(
        f"correctable={n_correctable} decoded={n_decoded} correct={n_correct} "
        f"correctable_and_correct={n_corr_ok}")
    rate = n_correct / total if total else 0.0
    corr_rate = n_corr_ok / n_correctable if n_correctable else 1.0
    lines.append(f"success_rate={rate:.6f} correctable_success_rate={corr_rate:.6f}")
    return "\n".join(lines) + "\n"
