"""Command-line front end and the line-oriented code file format.

Format (``#`` lines are comments, blank lines ignored)::

    FLC 1
    q <p> <m> <c0> ... <cm>      field: characteristic, degree, modulus
    n <n>
    type <t1,...,tr>
    flags <N>
    flag <idx>                   followed by t_r rows of n integers
    ...

Each flag block stores generator rows whose length-t_i prefixes span the
flag's subspaces, so the nested structure round-trips compactly.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from flagcodes import channel, codes, linalg, spreads
from flagcodes._backend import backend_name
from flagcodes.codes import DivisorType, FlagCode, FullFromSpread, Punctured
from flagcodes.errors import FieldMismatch, FlagCodeError, ParseError
from flagcodes.flags import Flag, FlagType, is_optimum_distance
from flagcodes.geometry import Subspace
from flagcodes.gf import PrimePowerField
from flagcodes.linalg import MatrixFq

FORMAT_TAG = "FLC 1"


# -- serialization -----------------------------------------------------------


def _flag_generator_matrix(flag: Flag) -> MatrixFq:
    """Rows whose prefixes generate the flag, built greedily from the bases."""
    first = flag.subspaces[0]
    field = first.field
    current = MatrixFq.zeros(field, 0, first.ambient_n)
    for target in flag.subspaces:
        for row in target.basis.array:
            if current.rows == target.dim:
                break
            candidate = MatrixFq(field, row[None, :].copy(), _trusted=True)
            if linalg.rank_of_stack(current, candidate) > current.rows:
                current = linalg.stack(current, candidate)
        assert current.rows == target.dim
    return current


def _provenance_comment(code: FlagCode) -> str | None:
    prov = code.provenance
    if isinstance(prov, FullFromSpread):
        return f"# provenance: full flag code from the {prov.spread.k}-spread of " \
               f"GF({code.field.q})^{code.n}"
    if isinstance(prov, Punctured):
        return f"# provenance: punctured from type {','.join(map(str, prov.original_type.dims))}"
    if isinstance(prov, DivisorType):
        return "# provenance: divisor-type construction"
    return None


def serialize(code: FlagCode) -> str:
    """Render a flag code in the FLC text format."""
    field = code.field
    generators = code.generators
    if generators is None:
        generators = tuple(_flag_generator_matrix(f) for f in code.flags)
    lines = [FORMAT_TAG]
    comment = _provenance_comment(code)
    if comment:
        lines.append(comment)
    lines.append(f"q {field.p} {field.m} " + " ".join(str(c) for c in field.modulus))
    lines.append(f"n {code.n}")
    lines.append("type " + ",".join(str(t) for t in code.type.dims))
    lines.append(f"flags {len(code)}")
    for idx, gen in enumerate(generators, start=1):
        if gen.field != field:
            raise FieldMismatch("generator matrix from a different field")
        lines.append(f"flag {idx}")
        for row in gen.array:
            lines.append(" ".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


class _LineReader:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.pos = 0

    def next_line(self) -> tuple[int, str]:
        while self.pos < len(self.lines):
            self.pos += 1
            raw = self.lines[self.pos - 1].strip()
            if raw and not raw.startswith("#"):
                return self.pos, raw
        raise ParseError("unexpected end of file", len(self.lines))

    def at_end(self) -> bool:
        save = self.pos
        try:
            self.next_line()
        except ParseError:
            return True
        self.pos = save
        return False


def _expect_ints(reader: _LineReader, keyword: str, count: int | None = None) -> list[int]:
    lineno, raw = reader.next_line()
    parts = raw.split()
    if not parts or parts[0] != keyword:
        raise ParseError(f"expected '{keyword} ...', got '{raw}'", lineno)
    try:
        values = [int(v) for v in parts[1:]]
    except ValueError:
        raise ParseError(f"non-integer value in '{raw}'", lineno) from None
    if count is not None and len(values) != count:
        raise ParseError(f"expected {count} values after '{keyword}', got {len(values)}", lineno)
    return values


def parse(text: str) -> FlagCode:
    """Parse the FLC text format back into a flag code (provenance is lost)."""
    reader = _LineReader(text)
    lineno, header = reader.next_line()
    if header != FORMAT_TAG:
        raise ParseError(f"bad header '{header}', expected '{FORMAT_TAG}'", lineno)

    qline = _expect_ints(reader, "q")
    if len(qline) < 3:
        raise ParseError("field line needs p, m, and modulus coefficients", reader.pos)
    p, m, modulus = qline[0], qline[1], qline[2:]
    if len(modulus) != m + 1:
        raise ParseError(f"modulus needs {m + 1} coefficients, got {len(modulus)}", reader.pos)
    try:
        field = PrimePowerField(p, m, modulus)
    except FlagCodeError as exc:
        raise ParseError(f"invalid field: {exc}", reader.pos) from None

    n = _expect_ints(reader, "n", 1)[0]

    lineno, raw = reader.next_line()
    parts = raw.split()
    if len(parts) != 2 or parts[0] != "type":
        raise ParseError(f"expected 'type t1,...,tr', got '{raw}'", lineno)
    try:
        dims = tuple(int(t) for t in parts[1].split(","))
        ftype = FlagType(dims, n)
    except ValueError as exc:
        raise ParseError(f"invalid type: {exc}", lineno) from None

    count = _expect_ints(reader, "flags", 1)[0]
    if count < 2:
        raise ParseError(f"a code needs at least 2 flags, file declares {count}", reader.pos)

    flags = []
    generators = []
    for idx in range(1, count + 1):
        label = _expect_ints(reader, "flag", 1)[0]
        if label != idx:
            raise ParseError(f"expected 'flag {idx}', got 'flag {label}'", reader.pos)
        rows = []
        for _ in range(ftype.dims[-1]):
            lineno, raw = reader.next_line()
            try:
                row = [int(v) for v in raw.split()]
            except ValueError:
                raise ParseError(f"non-integer matrix entry in '{raw}'", lineno) from None
            if len(row) != n:
                raise ParseError(f"expected {n} entries per row, got {len(row)}", lineno)
            if any(not 0 <= v < field.q for v in row):
                raise ParseError(f"element out of range [0, {field.q})", lineno)
            rows.append(row)
        gen = MatrixFq(field, np.array(rows, dtype=np.int64), _trusted=True)
        chain = []
        for t in ftype.dims:
            sub = Subspace.from_matrix(linalg.row_prefix(gen, t))
            if sub.dim != t:
                raise ParseError(
                    f"flag {idx}: first {t} generator rows span dimension {sub.dim}", lineno)
            chain.append(sub)
        try:
            flags.append(Flag(ftype, chain))
        except ValueError as exc:
            raise ParseError(f"flag {idx}: {exc}", lineno) from None
        generators.append(gen)

    if not reader.at_end():
        lineno, raw = reader.next_line()
        raise ParseError(f"unexpected trailing content '{raw}'", lineno)
    try:
        return FlagCode(field, ftype, flags, generators=generators)
    except (ValueError, FlagCodeError) as exc:
        raise ParseError(str(exc)) from None


# -- subcommands --------------------------------------------------------------


def _read_code(path: str) -> FlagCode:
    with open(path, "r", encoding="ascii") as fh:
        return parse(fh.read())


def _write_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="ascii") as fh:
            fh.write(text)


def _cmd_construct(args) -> int:
    field = PrimePowerField(args.p, args.m)
    spread = spreads.build_spread(field, args.k, 2 * args.k)
    code = codes.full_flag_code_from_spread(spread)
    _write_text(serialize(code), args.out)
    return 0


def _cmd_divisor_construct(args) -> int:
    field = PrimePowerField(args.p, args.m)
    dims = _parse_type(args.type)
    code = codes.divisor_type_code(field, args.n, dims)
    _write_text(serialize(code), args.out)
    return 0


def _cmd_info(args) -> int:
    code = _read_code(args.file)
    field = code.field
    print(f"field=GF({field.q}) p={field.p} m={field.m} "
          f"modulus={','.join(map(str, field.modulus))}")
    print(f"n={code.n} type={','.join(map(str, code.type.dims))} size={len(code)}")
    print(f"kernel={backend_name()}")
    return 0


def _cmd_verify(args) -> int:
    code = _read_code(args.file)
    report = is_optimum_distance(code)
    print(f"size={len(code)} mindist={report.min_distance} bound={report.bound} "
          f"disjoint={str(report.disjoint).lower()} "
          f"optimum={str(report.is_optimum).lower()}")
    return 0 if report.is_optimum else 1


def _cmd_puncture(args) -> int:
    code = _read_code(args.file)
    dims = _parse_type(args.type)
    result = codes.puncture(code, FlagType(dims, code.n))
    _write_text(serialize(result), args.out)
    return 0


def _cmd_simulate(args) -> int:
    code = _read_code(args.file)
    packets = _parse_type(args.packets) if args.packets else None
    config = channel.ChannelConfig(
        packets_per_shot=packets,
        newest_row_erasure_prob=args.erasure_prob,
        shot_blackout_prob=args.blackout_prob,
        seed=args.seed,
    )
    result = channel.run_trials(code, config, args.trials)
    sys.stdout.write(channel.format_simulation_report(result, machine=args.format == "machine"))
    return 0


def _cmd_maxclique(args) -> int:
    field = PrimePowerField(args.p, args.m)
    result = codes.maximality_oracle(field, args.n, witness_cap=args.witness_cap)
    print(f"flags={result.flag_count} edges={result.edge_count} "
          f"max_size={result.max_size} witnesses={len(result.witnesses)} "
          f"spread_check=pass")
    return 0


def _cmd_spread_verify(args) -> int:
    code = _read_code(args.file)
    if code.type.r != 1:
        print("spread-verify expects a single-dimension (type-(k)) code file",
              file=sys.stderr)
        return 2
    k = code.type.dims[0]
    members = tuple(f.subspaces[0] for f in code.flags)
    gens = code.generators or tuple(m.basis for m in members)
    spread = spreads.Spread(code.field, code.n, k, members, tuple(gens))
    report = spreads.verify_spread(spread)
    print(f"members={report.actual_size} expected={report.expected_size} "
          f"planar={str(report.planar).lower()} ok={str(report.ok).lower()}")
    for violation in report.violations:
        print(f"violation: {violation}")
    return 0 if report.ok else 1


def _parse_type(raw: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in raw.split(","))
    except ValueError:
        raise FlagCodeError(f"expected comma-separated integers, got '{raw}'") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flagcodes",
        description="Construct, verify, transmit, and decode nested-subspace codes "
                    "over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_construct = sub.add_parser(
        "construct", help="full flag code from the standard planar spread of GF(q)^(2k)")
    p_construct.add_argument("--p", type=int, required=True, help="field characteristic")
    p_construct.add_argument("--m", type=int, default=1, help="field extension degree")
    p_construct.add_argument("--k", type=int, required=True, help="spread dimension")
    p_construct.add_argument("--out", help="output file (stdout if omitted)")
    p_construct.set_defaults(func=_cmd_construct)

    p_div = sub.add_parser(
        "divisor-construct",
        help="flag code of any type whose top dimension divides n")
    p_div.add_argument("--p", type=int, required=True)
    p_div.add_argument("--m", type=int, default=1)
    p_div.add_argument("--n", type=int, required=True)
    p_div.add_argument("--type", required=True, help="comma-separated dimensions")
    p_div.add_argument("--out")
    p_div.set_defaults(func=_cmd_divisor_construct)

    p_info = sub.add_parser("info", help="print a code file's parameters")
    p_info.add_argument("file")
    p_info.set_defaults(func=_cmd_info)

    p_verify = sub.add_parser(
        "verify", help="exhaustive distance check; exit 1 unless the bound is attained")
    p_verify.add_argument("file")
    p_verify.set_defaults(func=_cmd_verify)

    p_punct = sub.add_parser("puncture", help="restrict a code to a sub-type")
    p_punct.add_argument("file")
    p_punct.add_argument("--type", required=True)
    p_punct.add_argument("--out")
    p_punct.set_defaults(func=_cmd_puncture)

    p_sim = sub.add_parser("simulate", help="seeded erasure-channel Monte Carlo")
    p_sim.add_argument("file")
    p_sim.add_argument("--trials", type=int, default=1000)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--erasure-prob", type=float, default=0.0)
    p_sim.add_argument("--blackout-prob", type=float, default=0.0)
    p_sim.add_argument("--packets", help="per-shot packet counts, comma-separated")
    p_sim.add_argument("--format", choices=("text", "machine"), default="text")
    p_sim.set_defaults(func=_cmd_simulate)

    p_clique = sub.add_parser(
        "maxclique", help="exact search for the largest code at the distance bound")
    p_clique.add_argument("--p", type=int, required=True)
    p_clique.add_argument("--m", type=int, default=1)
    p_clique.add_argument("--n", type=int, required=True)
    p_clique.add_argument("--witness-cap", type=int, default=5)
    p_clique.set_defaults(func=_cmd_maxclique)

    p_spread = sub.add_parser(
        "spread-verify", help="check the spread axioms of a type-(k) code file")
    p_spread.add_argument("file")
    p_spread.set_defaults(func=_cmd_spread_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:  # covers every FlagCodeError
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
