"""Arithmetic in binary extension fields F(2^n) on the polynomial basis.

Field elements are coefficient vectors over the basis {1, g, ..., g^(n-1)}
for a root g of the field modulus, packed into Python ints: bit i of the
int is the coefficient of g^i, so 0 is the additive and 1 the
multiplicative identity.  Every bit string in this package uses the same
packing, and byte/hex serialisation is little-endian: bit i of a string
lands in bit i % 8 of byte i // 8.

The modulus of each field defaults to the first irreducible polynomial in
the deterministic scan order of find_irreducible, so key material and wire
formats are reproducible across runs and machines.
"""

from __future__ import annotations

import functools


def poly_degree(f: int) -> int:
    """Degree of a GF(2)[x] polynomial packed into an int (-1 for zero)."""
    return f.bit_length() - 1


def poly_mod(a: int, f: int) -> int:
    """Remainder of a modulo f in GF(2)[x]."""
    d = f.bit_length()
    while a.bit_length() >= d:
        a ^= f << (a.bit_length() - d)
    return a


def poly_mulmod(a: int, b: int, f: int) -> int:
    """Product a * b reduced modulo f in GF(2)[x]."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        a <<= 1
        b >>= 1
    return poly_mod(acc, f)


def poly_gcd(a: int, b: int) -> int:
    """Greatest common divisor in GF(2)[x]."""
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: int) -> bool:
    """Rabin irreducibility test for f in GF(2)[x].

    A degree-n polynomial is irreducible iff x^(2^n) = x (mod f) and
    gcd(x^(2^(n/p)) - x, f) = 1 for every prime p dividing n.
    """
    n = poly_degree(f)
    if n < 1:
        return False
    if n == 1:
        return True
    checkpoints = {n // p for p in _prime_factors(n)}
    t = 2  # the polynomial x
    for i in range(1, n + 1):
        t = poly_mulmod(t, t, f)
        if i in checkpoints and poly_gcd(t ^ 2, f) != 1:
            return False
    return t == 2


@functools.lru_cache(maxsize=None)
def find_irreducible(n: int) -> int:
    """Smallest irreducible degree-n polynomial with constant term 1.

    Candidates are scanned in increasing value of the packed coefficient
    string (constant term in bit 0, leading coefficient in bit n); the
    first irreducible one wins, which makes the choice deterministic.
    """
    if n < 2:
        raise ValueError("degree must be at least 2")
    base = (1 << n) | 1
    for mid in range(1 << (n - 1)):
        f = base | (mid << 1)
        # an even number of terms means f(1) = 0, i.e. f divisible by x + 1
        if f.bit_count() & 1 and is_irreducible(f):
            return f
    raise AssertionError("irreducible polynomials exist for every degree")


# byte value -> the same bits spread to even positions, for fast squaring
_SQUARE_SPREAD = tuple(
    sum(((b >> i) & 1) << (2 * i) for i in range(8)) for b in range(256)
)


class Field:
    """The field F(2^n) for odd n = 2m - 1, with arithmetic on element ints."""

    __slots__ = ("n", "m", "modulus", "_mask", "_low_shifts")

    def __init__(self, n: int, modulus: int | None = None):
        if n < 3 or n % 2 == 0:
            raise ValueError("extension degree must be odd and at least 3")
        if modulus is None:
            modulus = find_irreducible(n)
        else:
            if poly_degree(modulus) != n or not modulus & 1:
                raise ValueError("modulus must have degree n and constant term 1")
            if not is_irreducible(modulus):
                raise ValueError("modulus is not irreducible")
        self.n = n
        self.m = (n + 1) // 2
        self.modulus = modulus
        self._mask = (1 << n) - 1
        # x^n = low part of the modulus, so reduction folds the high words
        # through these shifts (few of them: canonical moduli are sparse)
        low = modulus & self._mask
        self._low_shifts = tuple(i for i in range(n) if low >> i & 1)

    @property
    def order(self) -> int:
        return 1 << self.n

    def element(self, value: int) -> FieldElement:
        return FieldElement(self, value)

    def element_from_hex(self, text: str) -> FieldElement:
        return FieldElement(self, hex_to_bits(text, self.n))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and self.n == other.n
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.n, self.modulus))

    def __repr__(self) -> str:
        return f"Field(n={self.n}, modulus={self.modulus:#x})"

    def _reduce(self, v: int) -> int:
        n = self.n
        mask = self._mask
        shifts = self._low_shifts
        while v >> n:
            hi = v >> n
            v &= mask
            for s in shifts:
                v ^= hi << s
        return v

    def add(self, a: int, b: int) -> int:
        """Coordinatewise xor; subtraction is the same map."""
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        """Product of the representing polynomials, reduced by the modulus."""
        if b.bit_length() <= 32:
            acc = 0
            while b:
                low = b & -b
                acc ^= a << (low.bit_length() - 1)
                b ^= low
            return self._reduce(acc)
        # wide operands: combine 4-bit windows of b against a small table
        table = [0] * 16
        table[1] = a
        for w in range(2, 16, 2):
            table[w] = table[w >> 1] << 1
            table[w | 1] = table[w] ^ a
        acc = 0
        shift = 0
        while b:
            w = b & 15
            if w:
                acc ^= table[w] << shift
            b >>= 4
            shift += 4
        return self._reduce(acc)

    def sqr(self, a: int) -> int:
        """Square by bit spreading; squaring is F_2-linear in characteristic 2."""
        acc = 0
        shift = 0
        while a:
            acc |= _SQUARE_SPREAD[a & 0xFF] << shift
            a >>= 8
            shift += 16
        return self._reduce(acc)

    def frobenius_pow(self, a: int, k: int) -> int:
        """a^(2^k) by repeated squaring; k is reduced mod n since x^(2^n) = x."""
        if k < 0:
            raise ValueError("Frobenius power must be non-negative")
        for _ in range(k % self.n):
            a = self.sqr(a)
        return a

    def pow(self, a: int, e: int) -> int:
        """a^e by square and multiply; 0^0 is defined as 1."""
        if e < 0:
            raise ValueError("exponent must be non-negative")
        if a == 0:
            return 1 if e == 0 else 0
        e %= self.order - 1
        acc = 1
        while e:
            if e & 1:
                acc = self.mul(acc, a)
            a = self.sqr(a)
            e >>= 1
        return acc

    def inv(self, a: int) -> int:
        """Multiplicative inverse, computed as a^(2^n - 2)."""
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return self.pow(a, self.order - 2)

    def trace(self, a: int) -> int:
        """The F_2-valued trace a + a^2 + a^4 + ... + a^(2^(n-1))."""
        acc = a
        t = a
        for _ in range(self.n - 1):
            t = self.sqr(t)
            acc ^= t
        return acc


@functools.lru_cache(maxsize=None)
def frobenius_columns(field: Field, k: int) -> tuple[int, ...]:
    """Images of the basis elements under x -> x^(2^k).

    The map is F_2-linear, so any element maps to the xor of the columns
    at its set bits; see apply_columns.
    """
    return tuple(field.frobenius_pow(1 << j, k) for j in range(field.n))


def apply_columns(columns, a: int) -> int:
    """Apply an F_2-linear map, given by its basis images, to the element a."""
    acc = 0
    while a:
        low = a & -a
        acc ^= columns[low.bit_length() - 1]
        a ^= low
    return acc


def packed_size(nbits: int) -> int:
    return (nbits + 7) // 8


def bits_to_bytes(value: int, nbits: int) -> bytes:
    """Pack a bit string of known length into its little-endian byte form."""
    if not 0 <= value < 1 << nbits:
        raise ValueError("value does not fit the declared bit length")
    return value.to_bytes(packed_size(nbits), "little")


def bytes_to_bits(data: bytes, nbits: int) -> int:
    """Inverse of bits_to_bytes; slack bits beyond nbits must be zero."""
    if len(data) != packed_size(nbits):
        raise ValueError("byte string has the wrong length")
    value = int.from_bytes(data, "little")
    if value >> nbits:
        raise ValueError("nonzero slack bits")
    return value


def bits_to_hex(value: int, nbits: int) -> str:
    return bits_to_bytes(value, nbits).hex()


def hex_to_bits(text: str, nbits: int) -> int:
    try:
        data = bytes.fromhex(text)
    except ValueError as exc:
        raise ValueError("invalid hex string") from exc
    return bytes_to_bits(data, nbits)


class FieldElement:
    """A field element bound to its Field, with checked operators."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        if not 0 <= value < field.order:
            raise ValueError("coefficient vector out of range for the field")
        self.field = field
        self.value = value

    def _peer(self, other: FieldElement) -> int:
        if not isinstance(other, FieldElement):
            raise TypeError("expected a FieldElement")
        if other.field != self.field:
            raise ValueError("elements belong to different fields")
        return other.value

    def __add__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.field, self.value ^ self._peer(other))

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.field, self.field.mul(self.value, self._peer(other)))

    def __pow__(self, e: int) -> FieldElement:
        return FieldElement(self.field, self.field.pow(self.value, e))

    def frobenius(self, k: int) -> FieldElement:
        return FieldElement(self.field, self.field.frobenius_pow(self.value, k))

    def inv(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def trace(self) -> int:
        return self.field.trace(self.value)

    def to_hex(self) -> str:
        return bits_to_hex(self.value, self.field.n)

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.value == other.value
        )

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __repr__(self) -> str:
        return f"FieldElement({self.value:#x} in F(2^{self.field.n}))"
