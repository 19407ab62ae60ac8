"""Vectors, matrices and invertible affine maps over GF(2).

Vectors are ints (bit j holds coordinate j + 1) and matrices are tuples of
row ints, which keeps Gaussian elimination down to word-wide xors.  The
module is also home to the deterministic xorshift64* generator that feeds
reproducible key generation.
"""

from __future__ import annotations

from dataclasses import dataclass

_MASK64 = (1 << 64) - 1


class SingularMatrixError(ValueError):
    """Raised when elimination meets a matrix without full rank."""


@dataclass(frozen=True)
class BitMatrix:
    """Row-major bit matrix; rows[i] bit j holds entry (i, j)."""

    rows: tuple[int, ...]
    cols: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if not self.rows or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if any(not 0 <= row < 1 << self.cols for row in self.rows):
            raise ValueError("row does not fit the column count")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(tuple(1 << i for i in range(n)), n)

    def mul_vec(self, x: int) -> int:
        """Matrix-vector product over GF(2)."""
        if not 0 <= x < 1 << self.cols:
            raise ValueError("vector length mismatch")
        y = 0
        for i, row in enumerate(self.rows):
            y |= ((row & x).bit_count() & 1) << i
        return y

    def mul_mat(self, other: BitMatrix) -> BitMatrix:
        if self.cols != other.nrows:
            raise ValueError("matrix dimensions do not match")
        other_cols = other.transpose().rows
        rows = tuple(
            sum(((row & col).bit_count() & 1) << j for j, col in enumerate(other_cols))
            for row in self.rows
        )
        return BitMatrix(rows, other.cols)

    def transpose(self) -> BitMatrix:
        rows = tuple(
            sum(((self.rows[i] >> j) & 1) << i for i in range(self.nrows))
            for j in range(self.cols)
        )
        return BitMatrix(rows, self.nrows)

    def to_bits(self) -> int:
        """Rows concatenated row-major into one bit string."""
        acc = 0
        for i, row in enumerate(self.rows):
            acc |= row << (i * self.cols)
        return acc

    @classmethod
    def from_bits(cls, value: int, nrows: int, cols: int) -> BitMatrix:
        if not 0 <= value < 1 << (nrows * cols):
            raise ValueError("bit string does not fit the dimensions")
        mask = (1 << cols) - 1
        return cls(tuple((value >> (i * cols)) & mask for i in range(nrows)), cols)


def rank(matrix: BitMatrix) -> int:
    """Rank over GF(2) by Gaussian elimination."""
    rows = list(matrix.rows)
    r = 0
    for col in range(matrix.cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i] >> col & 1), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] >> col & 1:
                rows[i] ^= rows[r]
        r += 1
        if r == len(rows):
            break
    return r


def solve_linear(matrix: BitMatrix, b: int) -> int:
    """The unique y with M y = b, by elimination with first-nonzero pivoting."""
    n = matrix.cols
    if matrix.nrows != n:
        raise ValueError("matrix must be square")
    if not 0 <= b < 1 << n:
        raise ValueError("right-hand side length mismatch")
    # right-hand side rides along in bit n of each working row
    rows = [row | (((b >> i) & 1) << n) for i, row in enumerate(matrix.rows)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if rows[i] >> col & 1), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col]
        for i in range(col + 1, n):
            if rows[i] >> col & 1:
                rows[i] ^= lead
    y = 0
    for col in range(n - 1, -1, -1):
        bit = ((rows[col] >> n) & 1) ^ ((rows[col] & y).bit_count() & 1)
        y |= bit << col
    return y


def invert_matrix(matrix: BitMatrix) -> BitMatrix:
    """Inverse over GF(2) by Gauss-Jordan on the augmented matrix [M | I]."""
    n = matrix.cols
    if matrix.nrows != n:
        raise ValueError("matrix must be square")
    rows = [row | (1 << (n + i)) for i, row in enumerate(matrix.rows)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if rows[i] >> col & 1), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col]
        for i in range(n):
            if i != col and rows[i] >> col & 1:
                rows[i] ^= lead
    return BitMatrix(tuple(row >> n for row in rows), n)


class AffineMap:
    """Invertible affine transformation x -> Ax + c on GF(2)^n."""

    __slots__ = ("matrix", "translation", "inverse_matrix")

    def __init__(self, matrix: BitMatrix, translation: int):
        if matrix.nrows != matrix.cols:
            raise ValueError("matrix must be square")
        if not 0 <= translation < 1 << matrix.cols:
            raise ValueError("translation length mismatch")
        self.matrix = matrix
        self.translation = translation
        self.inverse_matrix = invert_matrix(matrix)  # also proves invertibility

    @property
    def n(self) -> int:
        return self.matrix.cols

    def apply(self, x: int) -> int:
        return self.matrix.mul_vec(x) ^ self.translation

    def invert_apply(self, u: int) -> int:
        """The unique x with Ax + c = u."""
        if not 0 <= u < 1 << self.n:
            raise ValueError("vector length mismatch")
        return self.inverse_matrix.mul_vec(u ^ self.translation)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AffineMap)
            and self.matrix == other.matrix
            and self.translation == other.translation
        )

    def __hash__(self) -> int:
        return hash((self.matrix, self.translation))

    def __repr__(self) -> str:
        return f"AffineMap(n={self.n})"


_XORSHIFT_MULTIPLIER = 0x2545F4914F6CDD1D
# xorshift64* fixes the all-zero state, so seed 0 is remapped to a constant
_ZERO_SEED_STATE = 0x9E3779B97F4A7C15


class Prng:
    """xorshift64* bit stream; bits leave each 64-bit output most-significant
    first.  Single-owner mutable state: do not share between tasks."""

    __slots__ = ("_state", "_buffer", "_remaining")

    def __init__(self, seed: int):
        if not 0 <= seed < 1 << 64:
            raise ValueError("seed must be a 64-bit integer")
        self._state = seed if seed else _ZERO_SEED_STATE
        self._buffer = 0
        self._remaining = 0

    def next_word(self) -> int:
        s = self._state
        s ^= s >> 12
        s = (s ^ (s << 25)) & _MASK64
        s ^= s >> 27
        self._state = s
        return (s * _XORSHIFT_MULTIPLIER) & _MASK64

    def bits(self, count: int) -> int:
        """Next `count` bits; the first bit drawn lands in bit 0."""
        if count < 0:
            raise ValueError("count must be non-negative")
        out = 0
        for i in range(count):
            if not self._remaining:
                self._buffer = self.next_word()
                self._remaining = 64
            out |= ((self._buffer >> 63) & 1) << i
            self._buffer = (self._buffer << 1) & _MASK64
            self._remaining -= 1
        return out


def random_invertible(n: int, prng: Prng) -> BitMatrix:
    """Uniformly random invertible n x n matrix by rejection sampling.

    Each attempt fills n^2 bits row-major and succeeds with probability
    about 0.289, so a handful of draws suffice.
    """
    if n < 1:
        raise ValueError("dimension must be positive")
    while True:
        candidate = BitMatrix(tuple(prng.bits(n) for _ in range(n)), n)
        if rank(candidate) == n:
            return candidate
