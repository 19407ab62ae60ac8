"""Key material: secret affine maps, public quadratic equations, file codec.

A public key consists of n equations over GF(2),

    sum_{j<k} a_jk x_j x_k + sum_{j,k} b_jk x_j y_k
        + sum_k c_k y_k + sum_j d_j x_j + e = 0,

quadratic in the plaintext bits x and linear in the ciphertext bits y once
x is fixed.  The coefficients fall out of the hidden field relation
residual by evaluation at unit vectors, which is exact because every
coordinate of the residual has total degree at most two over F_2 (each
monomial of the relation is a product of at most two affine coordinate
functions of x and y).

Key files are line oriented:

    line 1   LD2-SECRET v1            or  LD2-PUBLIC v1
    line 2   n=<int> m=<int>
    line 3   poly=<hex of the (n+1)-bit modulus>
    secret   alpha=<hex>  A1=<hex of n^2 bits>  c1=<hex>  A2=<hex>  c2=<hex>
    public   per equation i (1..n):
             eq<i>.xx=<hex of n(n-1)/2 bits, pairs (j,k) with j < k in
             lexicographic order>, eq<i>.xy=<hex of n^2 bits row-major>,
             eq<i>.xl=<hex>, eq<i>.yl=<hex>, eq<i>.c=<0|1>

All hex fields are lowercase and pack bit i of the value into bit i % 8 of
byte i // 8 (see gf2n).  Unknown or out-of-order lines are format errors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2n import (
    Field,
    apply_columns,
    bits_to_hex,
    find_irreducible,
    frobenius_columns,
    hex_to_bits,
)
from .linalg import AffineMap, BitMatrix, Prng, random_invertible
from .permutation import CentralMap


class KeyFormatError(ValueError):
    """Raised when a key file is malformed or violates a key invariant."""


@dataclass(frozen=True)
class QuadraticEquation:
    """One public equation, coefficients stored as bit-mask rows."""

    n: int
    xx_rows: tuple[int, ...]  # xx_rows[j] bit k: term x_{j+1} x_{k+1}, k > j
    xy_rows: tuple[int, ...]  # xy_rows[j] bit k: term x_{j+1} y_{k+1}
    x_linear: int
    y_linear: int
    constant: int

    def __post_init__(self):
        n = self.n
        top = 1 << n
        if len(self.xx_rows) != n or len(self.xy_rows) != n:
            raise ValueError("coefficient row count mismatch")
        for j, row in enumerate(self.xx_rows):
            # squares fold into the linear part, so row j may only use k > j
            if not 0 <= row < top or row & ((2 << j) - 1):
                raise ValueError("xx coefficients must be strictly upper triangular")
        if any(not 0 <= row < top for row in self.xy_rows):
            raise ValueError("xy coefficient row out of range")
        if not 0 <= self.x_linear < top or not 0 <= self.y_linear < top:
            raise ValueError("linear coefficients out of range")
        if self.constant not in (0, 1):
            raise ValueError("constant must be a single bit")

    @classmethod
    def from_terms(cls, n, xx=(), xy=(), x=(), y=(), constant=0) -> QuadraticEquation:
        """Build an equation from 1-based term indices."""
        xx_rows = [0] * n
        for j, k in xx:
            if not 1 <= j < k <= n:
                raise ValueError("xx pair must satisfy 1 <= j < k <= n")
            xx_rows[j - 1] |= 1 << (k - 1)
        xy_rows = [0] * n
        for j, k in xy:
            if not (1 <= j <= n and 1 <= k <= n):
                raise ValueError("xy pair out of range")
            xy_rows[j - 1] |= 1 << (k - 1)
        x_linear = 0
        for j in x:
            x_linear |= 1 << (j - 1)
        y_linear = 0
        for k in y:
            y_linear |= 1 << (k - 1)
        return cls(n, tuple(xx_rows), tuple(xy_rows), x_linear, y_linear, constant)

    def terms(self):
        """The equation as sorted 1-based term indices.

        Returns (xx_pairs, xy_pairs, x_indices, y_indices, constant).
        """
        xx = tuple(
            (j + 1, k + 1)
            for j, row in enumerate(self.xx_rows)
            for k in range(self.n)
            if row >> k & 1
        )
        xy = tuple(
            (j + 1, k + 1)
            for j, row in enumerate(self.xy_rows)
            for k in range(self.n)
            if row >> k & 1
        )
        x = tuple(j + 1 for j in range(self.n) if self.x_linear >> j & 1)
        y = tuple(k + 1 for k in range(self.n) if self.y_linear >> k & 1)
        return xx, xy, x, y, self.constant

    def y_coefficients(self, x: int) -> int:
        """Coefficient row of the y variables once x is substituted."""
        acc = self.y_linear
        v = x
        while v:
            low = v & -v
            acc ^= self.xy_rows[low.bit_length() - 1]
            v ^= low
        return acc

    def x_side(self, x: int) -> int:
        """Value of the pure-x terms plus the constant (the solve target)."""
        acc = self.constant ^ ((self.x_linear & x).bit_count() & 1)
        v = x
        while v:
            low = v & -v
            acc ^= (self.xx_rows[low.bit_length() - 1] & x).bit_count() & 1
            v ^= low
        return acc

    def evaluate(self, x: int, y: int) -> int:
        """Value of the equation's left side at (x, y); 0 when it holds."""
        acc = self.constant ^ ((self.x_linear & x).bit_count() & 1)
        y_row = self.y_linear
        xx = self.xx_rows
        xy = self.xy_rows
        v = x
        while v:
            low = v & -v
            j = low.bit_length() - 1
            acc ^= (xx[j] & x).bit_count() & 1
            y_row ^= xy[j]
            v ^= low
        return acc ^ ((y_row & y).bit_count() & 1)


class PublicKey:
    """The n public quadratic equations, plus the field dimensions."""

    __slots__ = ("n", "m", "equations")

    def __init__(self, n: int, m: int, equations):
        if n != 2 * m - 1 or n < 3:
            raise ValueError("need n = 2m - 1 with n >= 3")
        equations = tuple(equations)
        if len(equations) != n:
            raise ValueError("expected exactly n equations")
        if any(eq.n != n for eq in equations):
            raise ValueError("equation size mismatch")
        self.n = n
        self.m = m
        self.equations = equations

    def holds(self, x: int, y: int) -> bool:
        """Whether every public equation vanishes at (x, y)."""
        top = 1 << self.n
        if not (0 <= x < top and 0 <= y < top):
            raise ValueError("block length mismatch")
        return all(eq.evaluate(x, y) == 0 for eq in self.equations)

    def linear_system(self, x: int):
        """Matrix and right-hand side of the linear system in y at fixed x."""
        if not 0 <= x < 1 << self.n:
            raise ValueError("block length mismatch")
        rows = tuple(eq.y_coefficients(x) for eq in self.equations)
        rhs = 0
        for i, eq in enumerate(self.equations):
            rhs |= eq.x_side(x) << i
        return BitMatrix(rows, self.n), rhs

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PublicKey)
            and self.n == other.n
            and self.m == other.m
            and self.equations == other.equations
        )

    def __hash__(self) -> int:
        return hash((self.n, self.m, self.equations))

    def __repr__(self) -> str:
        return f"PublicKey(n={self.n})"


class SecretKey:
    """Secret material: the field, affine maps s and t, and alpha (trace 1)."""

    __slots__ = ("field", "s", "t", "alpha", "_frob_cols", "_alpha_frob")

    def __init__(self, field: Field, s: AffineMap, t: AffineMap, alpha: int):
        if s.n != field.n or t.n != field.n:
            raise ValueError("affine map dimension mismatch")
        if not 0 <= alpha < field.order:
            raise ValueError("alpha out of range")
        if field.trace(alpha) != 1:
            raise ValueError("alpha must have trace 1")
        self.field = field
        self.s = s
        self.t = t
        self.alpha = alpha
        self._frob_cols = frobenius_columns(field, field.m)
        self._alpha_frob = apply_columns(self._frob_cols, alpha)

    def central_map(self) -> CentralMap:
        return CentralMap(self.field, self.alpha)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SecretKey)
            and self.field == other.field
            and self.s == other.s
            and self.t == other.t
            and self.alpha == other.alpha
        )

    def __hash__(self) -> int:
        return hash((self.field, self.s, self.t, self.alpha))

    def __repr__(self) -> str:
        # never echo secret values
        return f"SecretKey(n={self.field.n})"


def relation_residual(sk: SecretKey, x: int, y: int) -> int:
    """Residual vector of the hidden relation at plaintext x, ciphertext y.

    Zero exactly when y is the ciphertext of x under the matching public
    key, i.e. when t(y) equals the central map applied to s(x).
    """
    top = 1 << sk.field.n
    if not (0 <= x < top and 0 <= y < top):
        raise ValueError("block length mismatch")
    return _residual_uv(sk, sk.s.apply(x), sk.t.apply(y))


def _residual_uv(sk: SecretKey, u: int, v: int) -> int:
    # u^(2^m) u + u^(2^m) v + u v + u a + u^(2^m) + v a + a^(2^m),
    # grouped by distributivity into three multiplications
    f = sk.field
    uf = apply_columns(sk._frob_cols, u)
    return (
        f.mul(uf, u ^ v)
        ^ f.mul(u, v ^ sk.alpha)
        ^ uf
        ^ f.mul(v, sk.alpha)
        ^ sk._alpha_frob
    )


def derive_public_key(sk: SecretKey) -> PublicKey:
    """Expand the hidden relation into the n public quadratic equations.

    Writing R for the residual vector, the coefficients of every output
    coordinate are read off unit-vector evaluations:

        e    = R(0, 0)
        d_j  = R(e_j, 0) + e
        c_k  = R(0, e_k) + e
        a_jk = R(e_j + e_k, 0) + R(e_j, 0) + R(e_k, 0) + e    (j < k)
        b_jk = R(e_j, e_k) + R(e_j, 0) + R(0, e_k) + e

    All n coordinates are extracted at once since R returns an n-bit
    vector; s(x) and t(y) at unit vectors are just matrix columns plus the
    translations, so each evaluation costs a few field multiplications.
    """
    field = sk.field
    n = field.n
    s_cols = sk.s.matrix.transpose().rows
    t_cols = sk.t.matrix.transpose().rows
    u0 = sk.s.translation
    v0 = sk.t.translation

    base = _residual_uv(sk, u0, v0)
    u_units = [c ^ u0 for c in s_cols]
    v_units = [c ^ v0 for c in t_cols]
    px = [_residual_uv(sk, u, v0) for u in u_units]
    py = [_residual_uv(sk, u0, v) for v in v_units]

    x_lin_cols = [p ^ base for p in px]
    y_lin_cols = [p ^ base for p in py]

    # coefficient vectors arrive indexed by output coordinate; scatter the
    # set bits into per-equation rows
    xx_acc = [[0] * n for _ in range(n)]
    xy_acc = [[0] * n for _ in range(n)]
    for j in range(n):
        pxj = px[j]
        uj = u_units[j]
        for k in range(j + 1, n):
            coeff = _residual_uv(sk, s_cols[j] ^ s_cols[k] ^ u0, v0)
            coeff ^= pxj ^ px[k] ^ base
            bit_k = 1 << k
            while coeff:
                low = coeff & -coeff
                xx_acc[low.bit_length() - 1][j] |= bit_k
                coeff ^= low
        for k in range(n):
            coeff = _residual_uv(sk, uj, v_units[k]) ^ pxj ^ py[k] ^ base
            bit_k = 1 << k
            while coeff:
                low = coeff & -coeff
                xy_acc[low.bit_length() - 1][j] |= bit_k
                coeff ^= low

    equations = []
    for i in range(n):
        x_linear = 0
        for j, col in enumerate(x_lin_cols):
            x_linear |= ((col >> i) & 1) << j
        y_linear = 0
        for k, col in enumerate(y_lin_cols):
            y_linear |= ((col >> i) & 1) << k
        equations.append(
            QuadraticEquation(
                n,
                tuple(xx_acc[i]),
                tuple(xy_acc[i]),
                x_linear,
                y_linear,
                (base >> i) & 1,
            )
        )
    return PublicKey(n, field.m, tuple(equations))


def keygen(n: int, seed: int) -> tuple[SecretKey, PublicKey]:
    """Deterministic key pair from a 64-bit seed.

    Draw order is fixed: alpha (redrawn until its trace is 1), then A1,
    c1, A2, c2, with matrices filled row-major by rejection sampling.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and at least 3")
    field = Field(n)
    prng = Prng(seed)
    while True:
        alpha = prng.bits(n)
        if field.trace(alpha) == 1:
            break
    a1 = random_invertible(n, prng)
    c1 = prng.bits(n)
    a2 = random_invertible(n, prng)
    c2 = prng.bits(n)
    sk = SecretKey(field, AffineMap(a1, c1), AffineMap(a2, c2), alpha)
    return sk, derive_public_key(sk)


_SECRET_MAGIC = "LD2-SECRET v1"
_PUBLIC_MAGIC = "LD2-PUBLIC v1"


def encode_key(key) -> str:
    """Serialise a key to its line-oriented text form."""
    if isinstance(key, SecretKey):
        return _encode_secret(key)
    if isinstance(key, PublicKey):
        return _encode_public(key)
    raise TypeError("expected a SecretKey or PublicKey")


def decode_key(text: str):
    """Parse a key file; returns a SecretKey or a PublicKey.

    Any structural problem, including invariant violations such as a
    trace-0 alpha or a singular matrix, raises KeyFormatError.
    """
    lines = text.splitlines()
    if not lines:
        raise KeyFormatError("empty key file")
    if lines[0] == _SECRET_MAGIC:
        return _decode_secret(lines)
    if lines[0] == _PUBLIC_MAGIC:
        return _decode_public(lines)
    raise KeyFormatError("unrecognised key header")


def _pack_pairs(xx_rows, n: int) -> int:
    acc = 0
    pos = 0
    for j in range(n):
        row = xx_rows[j]
        for k in range(j + 1, n):
            acc |= ((row >> k) & 1) << pos
            pos += 1
    return acc


def _unpack_pairs(value: int, n: int) -> tuple[int, ...]:
    rows = [0] * n
    pos = 0
    for j in range(n):
        for k in range(j + 1, n):
            rows[j] |= ((value >> pos) & 1) << k
            pos += 1
    return tuple(rows)


def _pack_rows(rows, n: int) -> int:
    acc = 0
    for j, row in enumerate(rows):
        acc |= row << (j * n)
    return acc


def _encode_secret(sk: SecretKey) -> str:
    n = sk.field.n
    nn = n * n
    lines = [
        _SECRET_MAGIC,
        f"n={n} m={sk.field.m}",
        f"poly={bits_to_hex(sk.field.modulus, n + 1)}",
        f"alpha={bits_to_hex(sk.alpha, n)}",
        f"A1={bits_to_hex(sk.s.matrix.to_bits(), nn)}",
        f"c1={bits_to_hex(sk.s.translation, n)}",
        f"A2={bits_to_hex(sk.t.matrix.to_bits(), nn)}",
        f"c2={bits_to_hex(sk.t.translation, n)}",
    ]
    return "\n".join(lines) + "\n"


def _encode_public(pk: PublicKey) -> str:
    n = pk.n
    npairs = n * (n - 1) // 2
    lines = [
        _PUBLIC_MAGIC,
        f"n={n} m={pk.m}",
        f"poly={bits_to_hex(find_irreducible(n), n + 1)}",
    ]
    for i, eq in enumerate(pk.equations, start=1):
        lines.append(f"eq{i}.xx={bits_to_hex(_pack_pairs(eq.xx_rows, n), npairs)}")
        lines.append(f"eq{i}.xy={bits_to_hex(_pack_rows(eq.xy_rows, n), n * n)}")
        lines.append(f"eq{i}.xl={bits_to_hex(eq.x_linear, n)}")
        lines.append(f"eq{i}.yl={bits_to_hex(eq.y_linear, n)}")
        lines.append(f"eq{i}.c={eq.constant}")
    return "\n".join(lines) + "\n"


def _field_value(line: str, name: str) -> str:
    prefix = name + "="
    if not line.startswith(prefix):
        raise KeyFormatError(f"expected a {name}= line")
    return line[len(prefix):]


def _parse_header(lines) -> tuple[int, int, int]:
    if len(lines) < 3:
        raise KeyFormatError("truncated key file")
    parts = lines[1].split(" ")
    if len(parts) != 2:
        raise KeyFormatError("malformed dimension line")
    try:
        n = int(_field_value(parts[0], "n"))
        m = int(_field_value(parts[1], "m"))
    except ValueError as exc:
        raise KeyFormatError(f"malformed dimension line: {exc}") from exc
    if n != 2 * m - 1 or n < 3:
        raise KeyFormatError("dimensions must satisfy n = 2m - 1 with n >= 3")
    try:
        modulus = hex_to_bits(_field_value(lines[2], "poly"), n + 1)
    except ValueError as exc:
        raise KeyFormatError(f"malformed poly line: {exc}") from exc
    # keys are always over the canonical modulus for their degree
    if modulus != find_irreducible(n):
        raise KeyFormatError("modulus is not the canonical one for this degree")
    return n, m, modulus


def _decode_secret(lines) -> SecretKey:
    n, _, modulus = _parse_header(lines)
    if len(lines) != 8:
        raise KeyFormatError("secret key file must have exactly 8 lines")
    nn = n * n
    try:
        alpha = hex_to_bits(_field_value(lines[3], "alpha"), n)
        a1 = hex_to_bits(_field_value(lines[4], "A1"), nn)
        c1 = hex_to_bits(_field_value(lines[5], "c1"), n)
        a2 = hex_to_bits(_field_value(lines[6], "A2"), nn)
        c2 = hex_to_bits(_field_value(lines[7], "c2"), n)
    except KeyFormatError:
        raise
    except ValueError as exc:
        raise KeyFormatError(f"malformed secret key field: {exc}") from exc
    try:
        field = Field(n, modulus)
        s = AffineMap(BitMatrix.from_bits(a1, n, n), c1)
        t = AffineMap(BitMatrix.from_bits(a2, n, n), c2)
        return SecretKey(field, s, t, alpha)
    except ValueError as exc:
        raise KeyFormatError(f"invalid secret key: {exc}") from exc


def _decode_public(lines) -> PublicKey:
    n, m, _ = _parse_header(lines)
    npairs = n * (n - 1) // 2
    if len(lines) != 3 + 5 * n:
        raise KeyFormatError("public key file has the wrong number of lines")
    equations = []
    pos = 3
    for i in range(1, n + 1):
        try:
            xx = hex_to_bits(_field_value(lines[pos], f"eq{i}.xx"), npairs)
            xy = hex_to_bits(_field_value(lines[pos + 1], f"eq{i}.xy"), n * n)
            xl = hex_to_bits(_field_value(lines[pos + 2], f"eq{i}.xl"), n)
            yl = hex_to_bits(_field_value(lines[pos + 3], f"eq{i}.yl"), n)
            c_text = _field_value(lines[pos + 4], f"eq{i}.c")
        except KeyFormatError:
            raise
        except ValueError as exc:
            raise KeyFormatError(f"malformed equation {i}: {exc}") from exc
        if c_text not in ("0", "1"):
            raise KeyFormatError(f"malformed equation {i}: constant must be 0 or 1")
        try:
            equations.append(
                QuadraticEquation(
                    n,
                    _unpack_pairs(xx, n),
                    BitMatrix.from_bits(xy, n, n).rows,
                    xl,
                    yl,
                    int(c_text),
                )
            )
        except ValueError as exc:
            raise KeyFormatError(f"invalid equation {i}: {exc}") from exc
        pos += 5
    try:
        return PublicKey(n, m, tuple(equations))
    except ValueError as exc:
        raise KeyFormatError(f"invalid public key: {exc}") from exc
