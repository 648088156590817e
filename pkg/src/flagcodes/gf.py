"""Exact arithmetic in GF(p^m) and primitive-polynomial machinery.

Field elements are encoded as integers in ``[0, q)`` whose base-``p``
digits are polynomial coefficients (digit ``i`` is the coefficient of
``x^i``).  Multiplication and inversion run over discrete-log tables
built once per field; addition is digit-wise.  Polynomials over a field
(for modulus search, primitivity testing, and companion matrices) are
coefficient lists in ascending order, again with integer-encoded
entries.

Everything here is immutable after construction and safe to share
between threads.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator, Sequence

import numpy as np

from flagcodes.errors import (
    DivisionByZero,
    FieldMismatch,
    ModulusNotPrimitive,
    NonPrimeP,
    NotPrimitive,
    TooLarge,
)

#: largest field size constructed eagerly (tables are O(q))
MAX_FIELD_SIZE = 2**20


def is_prime(n: int) -> bool:
    """Trial-division primality check; adequate for desk-scale moduli."""
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division."""
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    return factors


def _multiplicative_order(g: int, p: int) -> int:
    """Order of ``g`` in the unit group of Z/pZ (``g`` coprime to ``p``)."""
    t = p - 1
    for ell in prime_factors(p - 1):
        while t % ell == 0 and pow(g, t // ell, p) == 1:
            t //= ell
    return t


def _smallest_primitive_root(p: int) -> int:
    for g in range(1, p):
        if _multiplicative_order(g, p) == p - 1:
            return g
    raise AssertionError(f"no primitive root mod {p}")


class PrimePowerField:
    """The finite field GF(p^m) with a primitive modulus polynomial.

    If ``modulus`` is omitted the smallest primitive monic polynomial of
    degree ``m`` (ordered by the base-``p`` integer encoding of its
    coefficient vector) is found by exhaustive search.  For ``m == 1``
    arithmetic is plain modular arithmetic and the recorded modulus is
    ``x - g`` with ``g`` the smallest primitive root mod ``p``, so the
    primitivity convention is uniform across degrees.
    """

    __slots__ = ("p", "m", "q", "modulus", "exp", "log", "_hash")

    def __init__(self, p: int, m: int, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise NonPrimeP(f"p={p} is not prime")
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        q = p**m
        if q > MAX_FIELD_SIZE:
            raise TooLarge(f"q={q} exceeds the table bound {MAX_FIELD_SIZE}")
        self.p = p
        self.m = m
        self.q = q

        if modulus is not None:
            modulus = tuple(int(c) for c in modulus)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise ModulusNotPrimitive(
                    f"modulus must be monic of degree {m}, got {modulus}")
            if any(not 0 <= c < p for c in modulus):
                raise ModulusNotPrimitive("modulus coefficients out of range")

        if m == 1:
            if modulus is None:
                g = _smallest_primitive_root(p)
                modulus = ((p - g) % p, 1)
            else:
                g = (p - modulus[0]) % p
                if g == 0 or _multiplicative_order(g, p) != p - 1:
                    raise ModulusNotPrimitive(
                        f"root {g} of degree-1 modulus is not a primitive root mod {p}")
            self.modulus = modulus
            gen = g
        else:
            base = PrimePowerField(p, 1)
            if modulus is None:
                modulus = self._search_modulus(base)
            else:
                if not is_irreducible(base, modulus):
                    raise ModulusNotPrimitive(f"modulus {modulus} is reducible over F_{p}")
                if not is_primitive(base, modulus):
                    raise ModulusNotPrimitive(f"modulus {modulus} is not primitive")
            self.modulus = modulus
            gen = p  # the element x

        self._build_tables(gen)
        self._hash = hash((self.p, self.m, self.modulus))

    def _search_modulus(self, base: PrimePowerField) -> tuple[int, ...]:
        p, m = self.p, self.m
        for v in range(p**m):
            coeffs = _digits(v, p, m) + (1,)
            if is_irreducible(base, coeffs) and is_primitive(base, coeffs):
                return coeffs
        raise AssertionError(f"no primitive polynomial of degree {m} over F_{p}")

    def _build_tables(self, gen: int) -> None:
        p, m, q = self.p, self.m, self.q
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)  # log[0] is a sentinel, never read
        coeffs = [0] * m
        coeffs[0] = 1
        gen_digits = _digits(gen, p, m)
        for i in range(q - 1):
            v = _encode(coeffs, p)
            assert v != 1 or i == 0, "generator order below q-1; modulus not primitive"
            exp[i] = v
            exp[i + q - 1] = v
            log[v] = i
            coeffs = self._coeff_mul(coeffs, list(gen_digits))
        assert _encode(coeffs, p) == 1, "generator order exceeds q-1"
        exp.setflags(write=False)
        log.setflags(write=False)
        self.exp = exp
        self.log = log

    def _coeff_mul(self, a: list[int], b: list[int]) -> list[int]:
        # schoolbook product of coefficient vectors, reduced by the modulus
        p, m = self.p, self.m
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        for d in range(2 * m - 2, m - 1, -1):
            lead = prod[d]
            if lead:
                prod[d] = 0
                for i in range(m + 1):
                    prod[d - m + i] = (prod[d - m + i] - lead * self.modulus[i]) % p
        return prod[:m]

    # -- raw integer-encoded arithmetic ---------------------------------

    def add_ints(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % p
        res = 0
        mult = 1
        for _ in range(self.m):
            res += ((a % p) + (b % p)) % p * mult
            a //= p
            b //= p
            mult *= p
        return res

    def neg_int(self, a: int) -> int:
        if a == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[self.p - 1]])

    def sub_ints(self, a: int, b: int) -> int:
        return self.add_ints(a, self.neg_int(b))

    def mul_ints(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def inv_int(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return int(self.exp[(self.q - 1) - self.log[a]])

    def pow_int(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise DivisionByZero("negative power of zero")
            return 0
        return int(self.exp[(self.log[a] * e) % (self.q - 1)])

    # -- elements --------------------------------------------------------

    def element(self, value: int) -> FieldElement:
        return FieldElement(self, value)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self) -> Iterator[FieldElement]:
        for v in range(self.q):
            yield FieldElement(self, v)

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrimePowerField):
            return NotImplemented
        return (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"GF({self.q})"


class FieldElement:
    """An element of a :class:`PrimePowerField`, encoded as an integer."""

    __slots__ = ("field", "value")

    def __init__(self, field: PrimePowerField, value: int):
        value = int(value)
        if not 0 <= value < field.q:
            raise ValueError(f"value {value} outside [0, {field.q})")
        self.field = field
        self.value = value

    def _coerce(self, other: FieldElement) -> int:
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return other.value

    def __add__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.field, self.field.add_ints(self.value, self._coerce(other)))

    def __sub__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.field, self.field.sub_ints(self.value, self._coerce(other)))

    def __mul__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.field, self.field.mul_ints(self.value, self._coerce(other)))

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return FieldElement(
            self.field, self.field.mul_ints(self.value, self.field.inv_int(self._coerce(other))))

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, self.field.neg_int(self.value))

    def __pow__(self, e: int) -> FieldElement:
        return FieldElement(self.field, self.field.pow_int(self.value, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv_int(self.value))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.value, self.field))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"FieldElement({self.value}, {self.field!r})"


# -- polynomials over a field (integer-encoded coefficient lists) ---------


def _digits(v: int, p: int, m: int) -> tuple[int, ...]:
    out = []
    for _ in range(m):
        out.append(v % p)
        v //= p
    return tuple(out)


def _encode(coeffs: Sequence[int], p: int) -> int:
    v = 0
    for c in reversed(coeffs):
        v = v * p + c
    return v


def _poly_trim(a: Sequence[int]) -> list[int]:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def poly_mul(field: PrimePowerField, a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = field.add_ints(out[i + j], field.mul_ints(ai, bj))
    return _poly_trim(out)


def poly_mod(field: PrimePowerField, a: Sequence[int], f: Sequence[int]) -> list[int]:
    """Remainder of ``a`` modulo ``f`` (``f`` need not be monic)."""
    a = list(a)
    df = len(_poly_trim(f)) - 1
    f = _poly_trim(f)
    lead_inv = field.inv_int(f[-1])
    while len(_poly_trim(a)) - 1 >= df and any(a):
        a = _poly_trim(a)
        da = len(a) - 1
        if da < df:
            break
        factor = field.mul_ints(a[-1], lead_inv)
        shift = da - df
        for i, fi in enumerate(f):
            a[shift + i] = field.sub_ints(a[shift + i], field.mul_ints(factor, fi))
    return _poly_trim(a)


def poly_powmod(field: PrimePowerField, base: Sequence[int], e: int,
                f: Sequence[int]) -> list[int]:
    result = [1]
    acc = poly_mod(field, base, f)
    while e > 0:
        if e & 1:
            result = poly_mod(field, poly_mul(field, result, acc), f)
        acc = poly_mod(field, poly_mul(field, acc, acc), f)
        e >>= 1
    return result


def is_irreducible(field: PrimePowerField, f: Sequence[int]) -> bool:
    """Trial factorization by all monic divisors of degree up to deg(f)/2."""
    f = _poly_trim(f)
    k = len(f) - 1
    if k < 1:
        return False
    q = field.q
    for d in range(1, k // 2 + 1):
        for low in product(range(q), repeat=d):
            g = list(low) + [1]
            if _poly_trim(poly_mod(field, f, g)) == [0]:
                return False
    return True


def is_primitive(field: PrimePowerField, f: Sequence[int]) -> bool:
    """True iff the image of x generates the multiplicative group mod ``f``.

    The check is purely multiplicative: x^(q^k - 1) = 1 together with
    x^((q^k - 1)/ell) != 1 for every prime ell dividing q^k - 1.  Success
    implies irreducibility, but callers typically trial-factor first
    because it is cheaper on random reducibles.
    """
    f = _poly_trim(f)
    k = len(f) - 1
    if k < 1 or f[-1] != 1 or f[0] == 0:
        return False
    t = field.q**k - 1
    x = [0, 1]
    if poly_powmod(field, x, t, f) != [1]:
        return False
    for ell in prime_factors(t):
        if poly_powmod(field, x, t // ell, f) == [1]:
            return False
    return True


def find_primitive_polynomial(field: PrimePowerField, degree: int) -> tuple[int, ...]:
    """Smallest monic primitive polynomial of the given degree over ``field``.

    Candidates are ordered by the base-q integer encoding of their
    coefficient vectors, so the result is deterministic.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    q = field.q
    if q**degree > MAX_FIELD_SIZE:
        raise TooLarge(f"q^k={q**degree} exceeds the search bound {MAX_FIELD_SIZE}")
    for v in range(q**degree):
        coeffs = _digits(v, q, degree) + (1,)
        if is_irreducible(field, coeffs) and is_primitive(field, coeffs):
            return coeffs
    raise AssertionError(f"no primitive polynomial of degree {degree} over {field!r}")


def companion_matrix(field: PrimePowerField, poly: Sequence[int]):
    """Companion matrix of a monic primitive polynomial over ``field``.

    The matrix has ones on the subdiagonal and the negated low-order
    coefficients in the last column; its multiplicative order is
    q^deg - 1.
    """
    from flagcodes.linalg import MatrixFq

    coeffs = _poly_trim(poly)
    k = len(coeffs) - 1
    if k < 1 or coeffs[-1] != 1:
        raise NotPrimitive(f"polynomial {poly} is not monic of degree >= 1")
    if not is_primitive(field, coeffs):
        raise NotPrimitive(f"polynomial {poly} is not primitive over {field!r}")
    arr = np.zeros((k, k), dtype=np.int64)
    for i in range(1, k):
        arr[i, i - 1] = 1
    for i in range(k):
        arr[i, k - 1] = field.neg_int(coeffs[i])
    return MatrixFq(field, arr)
