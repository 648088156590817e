"""Shared fixtures: small fields, reference codes, and test-local oracles."""

from __future__ import annotations

import numpy as np
import pytest

from flagcodes import build_spread, full_flag_code_from_spread
from flagcodes.codes import FlagCode
from flagcodes.flags import Flag, FlagType
from flagcodes.geometry import Subspace, contains
from flagcodes.gf import PrimePowerField
from flagcodes.linalg import MatrixFq

_acceptance_lines: list[str] = []


def record_criterion(number: int, description: str) -> None:
    line = f"PASS criterion {number}: {description}"
    _acceptance_lines.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in sorted(_acceptance_lines):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def f2():
    return PrimePowerField(2, 1)


@pytest.fixture(scope="session")
def f3():
    return PrimePowerField(3, 1)


@pytest.fixture(scope="session")
def f4():
    return PrimePowerField(2, 2)


@pytest.fixture(scope="session")
def spread22(f2):
    return build_spread(f2, 2, 4)


@pytest.fixture(scope="session")
def code22(spread22):
    """Full flag code over GF(2)^4: size 5, every pairwise distance 8."""
    return full_flag_code_from_spread(spread22)


@pytest.fixture(scope="session")
def code32(f3):
    return full_flag_code_from_spread(build_spread(f3, 2, 4))


@pytest.fixture(scope="session")
def code23(f2):
    return full_flag_code_from_spread(build_spread(f2, 3, 6))


def make_counterexample(field) -> FlagCode:
    """The type-(1,3) code over F_q^5 whose projections are maximal but whose
    distance misses the bound because two flags share their first subspace."""
    n = 5
    ftype = FlagType((1, 3), n)

    def sub(rows):
        return Subspace.from_matrix(MatrixFq.from_rows(field, rows, cols=n))

    e = np.eye(5, dtype=int).tolist()
    f1 = Flag(ftype, (sub([e[0]]), sub([e[0], e[1], e[2]])))
    f2_ = Flag(ftype, (sub([e[3]]), sub([e[0], e[3], e[4]])))
    plus = lambda a, b: [(x + y) % field.p for x, y in zip(a, b)]
    f3_ = Flag(ftype, (sub([e[0]]), sub([e[0], plus(e[1], e[3]), plus(e[2], e[4])])))
    return FlagCode(field, ftype, (f1, f2_, f3_))


@pytest.fixture(scope="session")
def counterexample(f2):
    return make_counterexample(f2)


# -- test-local oracles (kept independent of the library's fast paths) -------


def brute_span(field, rows) -> frozenset[tuple[int, ...]]:
    """Additive closure of all scalar multiples of ``rows``: the row space,
    computed without any elimination."""
    rows = [tuple(int(v) for v in r) for r in rows]
    if not rows:
        raise ValueError("need at least one row")
    vectors = {tuple([0] * len(rows[0]))}
    changed = True
    while changed:
        changed = False
        for row in rows:
            for c in range(1, field.q):
                scaled = tuple(field.mul_ints(c, x) for x in row)
                for vec in list(vectors):
                    cand = tuple(field.add_ints(a, b) for a, b in zip(vec, scaled))
                    if cand not in vectors:
                        vectors.add(cand)
                        changed = True
    return frozenset(vectors)


def brute_dim(field, rows) -> int:
    rows = list(rows)
    if not rows:
        return 0
    size = len(brute_span(field, rows))
    dim = 0
    while field.q**dim < size:
        dim += 1
    assert field.q**dim == size, "span size is not a power of q"
    return dim


def random_full_rank_matrix(field, n: int, rng: np.random.Generator) -> MatrixFq:
    from flagcodes import linalg

    while True:
        arr = rng.integers(0, field.q, size=(n, n), dtype=np.int64)
        m = MatrixFq(field, arr)
        if linalg.matrix_rank(m) == n:
            return m


def random_flag(field, dims, n: int, rng: np.random.Generator) -> Flag:
    from flagcodes import linalg

    ftype = FlagType(tuple(dims), n)
    m = random_full_rank_matrix(field, n, rng)
    chain = [Subspace.from_matrix(linalg.row_prefix(m, t)) for t in ftype.dims]
    return Flag(ftype, chain)


def random_flag_code(field, n: int, dims, size: int, rng: np.random.Generator) -> FlagCode:
    ftype = FlagType(tuple(dims), n)
    flags = []
    seen = set()
    while len(flags) < size:
        f = random_flag(field, dims, n, rng)
        if f not in seen:
            seen.add(f)
            flags.append(f)
    return FlagCode(field, ftype, flags)


def subspaces_of(field, space: Subspace) -> list[Subspace]:
    """Every subspace of ``space``, via coordinates in its basis."""
    from flagcodes import linalg
    from flagcodes.geometry import enumerate_grassmannian

    out = [Subspace.zero(field, space.ambient_n)]
    for d in range(1, space.dim + 1):
        for small in enumerate_grassmannian(field, space.dim, d):
            rows = linalg.matmul(small.basis, space.basis)
            out.append(Subspace.from_matrix(rows))
    return out


def enumerate_stuttering_subflags(code: FlagCode, flag: Flag, max_error: int):
    """All weakly nested receiver views sitting inside ``flag`` whose total
    dimension deficit is at most ``max_error``; yields (view, error)."""
    from flagcodes.flags import StutteringFlag

    field = code.field
    dims = code.type.dims
    levels = [subspaces_of(field, s) for s in flag.subspaces]
    results = []

    def extend(chain, deficit):
        i = len(chain)
        if deficit > max_error:
            return
        if i == len(dims):
            results.append((StutteringFlag(code.type, tuple(chain)), deficit))
            return
        for cand in levels[i]:
            if chain and not contains(cand, chain[-1]):
                continue
            extend(chain + [cand], deficit + dims[i] - cand.dim)

    extend([], 0)
    return results
