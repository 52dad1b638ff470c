"""Arithmetic in GF(2^m) over the polynomial basis {1, a, ..., a^(m-1)}.

Elements are plain ints: bit i is the coefficient of a^i, where a is the
residue of X modulo the field's defining polynomial. Binary polynomials used
during field construction are ints in the same bit convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .intfactor import factorize

MAX_M = 128
# Fields up to this degree multiply through log/antilog tables.
TABLE_MAX_M = 16


class InverseOfZeroError(ZeroDivisionError):
    """Raised when inverting the zero element."""


# -- binary polynomial helpers ------------------------------------------------


def clmul(a: int, b: int) -> int:
    """Carry-less product of two binary polynomials."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, f: int) -> int:
    df = f.bit_length() - 1
    while a.bit_length() - 1 >= df:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _mulmod(a: int, b: int, f: int) -> int:
    return poly_mod(clmul(a, b), f)


def _powmod(a: int, e: int, f: int) -> int:
    result = 1
    a = poly_mod(a, f)
    while e:
        if e & 1:
            result = _mulmod(result, a, f)
        a = _mulmod(a, a, f)
        e >>= 1
    return poly_mod(result, f)


def is_irreducible(f: int) -> bool:
    """Ben-Or test: gcd(X^(2^i) - X, f) = 1 for all i <= deg f / 2."""
    m = f.bit_length() - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if not f & 1:
        return False
    h = 0b10
    for _ in range(m // 2):
        h = _mulmod(h, h, f)
        if poly_gcd(f, h ^ 0b10) != 1:
            return False
    return True


def order_is_full(f: int, factors: list[int]) -> bool:
    """True iff X has multiplicative order exactly 2^m - 1 modulo ``f``."""
    m = f.bit_length() - 1
    order = (1 << m) - 1
    if _powmod(0b10, order, f) != 1:
        return False
    return all(_powmod(0b10, order // p, f) != 1 for p in set(factors))


# -- field context --------------------------------------------------------------


@dataclass(frozen=True)
class FieldContext:
    """GF(2^m) defined by a primitive irreducible ``modulus`` of degree m."""

    m: int
    modulus: int
    factorization: tuple[int, ...] = field(repr=False)

    @classmethod
    def from_modulus(cls, modulus: int) -> FieldContext:
        m = modulus.bit_length() - 1
        if not 1 <= m <= MAX_M:
            raise ValueError(f"modulus degree {m} outside 1..{MAX_M}")
        factors = factorize((1 << m) - 1)
        if not is_irreducible(modulus):
            raise ValueError(f"modulus {modulus:#x} is reducible over GF(2)")
        if not order_is_full(modulus, factors):
            raise ValueError(f"modulus {modulus:#x} is not primitive")
        return cls(m, modulus, tuple(factors))

    @property
    def q(self) -> int:
        return 1 << self.m

    @property
    def alpha(self) -> int:
        return poly_mod(0b10, self.modulus)

    @property
    def one(self) -> int:
        return 1

    @cached_property
    def _tables(self) -> tuple[list[int], list[int]]:
        n = self.q - 1
        exp = [0] * (2 * n)
        log = [0] * self.q
        x = 1
        a = self.alpha
        for i in range(n):
            exp[i] = exp[i + n] = x
            log[x] = i
            x = _mulmod(x, a, self.modulus)
        return exp, log

    def contains(self, a: int) -> bool:
        return 0 <= a < self.q

    def check(self, *elements: int) -> None:
        for a in elements:
            if not self.contains(a):
                raise ValueError(f"{a!r} is not an element of GF(2^{self.m})")

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self.m <= TABLE_MAX_M:
            exp, log = self._tables
            return exp[log[a] + log[b]]
        return poly_mod(clmul(a, b), self.modulus)

    def inv(self, a: int) -> int:
        if not a:
            raise InverseOfZeroError(f"zero has no inverse in GF(2^{self.m})")
        if self.m <= TABLE_MAX_M:
            exp, log = self._tables
            return exp[(self.q - 1 - log[a]) % (self.q - 1)]
        # Binary extended Euclid: g1*a = u and g2*a = v modulo the modulus.
        u, v, g1, g2 = a, self.modulus, 1, 0
        while u != 1:
            j = u.bit_length() - v.bit_length()
            if j < 0:
                u, v, g1, g2 = v, u, g2, g1
                j = -j
            u ^= v << j
            g1 ^= g2 << j
        return poly_mod(g1, self.modulus)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        """``a**e`` with 0**0 = 1."""
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return 1
        if not a:
            return 0
        if self.m <= TABLE_MAX_M:
            exp, log = self._tables
            return exp[log[a] * e % (self.q - 1)]
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element, via the factor list of 2^m - 1."""
        if not a:
            raise InverseOfZeroError("zero has no multiplicative order")
        order = self.q - 1
        for p in set(self.factorization):
            while order % p == 0 and self.pow(a, order // p) == 1:
                order //= p
        return order

    def sum(self, elements) -> int:
        total = 0
        for a in elements:
            total ^= a
        return total

    def prod(self, elements) -> int:
        if self.m <= TABLE_MAX_M:
            exp, log = self._tables
            elements = list(elements)
            if not all(elements):
                return 0
            return exp[sum(map(log.__getitem__, elements)) % (self.q - 1)]
        total = 1
        for a in elements:
            total = self.mul(total, a)
        return total

    def hex(self, a: int) -> str:
        return f"{a:#x}"


def add(a: int, b: int) -> int:
    """Field addition (bitwise xor); the only operation that needs no context."""
    return a ^ b


@lru_cache(maxsize=None)
def build_field(m: int) -> FieldContext:
    """GF(2^m) from the smallest primitive degree-m binary polynomial.

    Candidates X^m + ... are scanned in increasing order of their integer
    encoding, so the result is reproducible across runs and platforms.
    """
    if not 1 <= m <= MAX_M:
        raise ValueError(f"m must lie in 1..{MAX_M}, got {m}")
    factors = factorize((1 << m) - 1)
    top = 1 << m
    for low in range(1, top, 2):
        f = top | low
        if is_irreducible(f) and order_is_full(f, factors):
            return FieldContext(m, f, tuple(factors))
    raise AssertionError(f"no primitive polynomial of degree {m}")  # pragma: no cover


def element_from_bits(bits) -> int:
    """Pack a bit sequence (bit i = coefficient of a^i) into an element."""
    return sum(1 << i for i, b in enumerate(bits) if b)


def element_bits(a: int, m: int) -> list[int]:
    return [(a >> i) & 1 for i in range(m)]


def parse_hex(text: str) -> int:
    if not text.startswith("0x"):
        raise ValueError(f"expected 0x-prefixed hex, got {text!r}")
    return int(text, 16)


__all__ = [
    "FieldContext",
    "InverseOfZeroError",
    "MAX_M",
    "add",
    "build_field",
    "clmul",
    "element_bits",
    "element_from_bits",
    "is_irreducible",
    "order_is_full",
    "parse_hex",
    "poly_gcd",
    "poly_mod",
]
