"""Block encryption and decryption, signatures, and message-level framing.

Encryption substitutes the plaintext block into the public equations,
which leaves a linear system in the ciphertext bits to be solved by
Gaussian elimination.  Decryption inverts the central map with a single
field exponentiation and picks the right preimage by re-checking the
hidden relation.  Signing is decryption of the digest; verification is
evaluation of the public equations.

Messages longer than one block use electronic-codebook composition with
always-appended 10* padding.  That is faithful to the single-block scheme
but deterministic, so it leaks block equality; see the README caveats.
"""

from __future__ import annotations

from .gf2n import apply_columns, packed_size
from .keys import PublicKey, SecretKey, relation_residual
from .linalg import SingularMatrixError, solve_linear


class MalformedKeyError(ValueError):
    """Public key produced an unsolvable encryption system."""


class DecryptionError(ValueError):
    """No decryption candidate satisfies the hidden relation."""


class PaddingError(ValueError):
    """Message padding is structurally invalid."""


def _check_block(value: int, n: int) -> None:
    if not 0 <= value < 1 << n:
        raise ValueError("block length mismatch")


def encrypt_block(pk: PublicKey, x: int) -> int:
    """Encrypt one n-bit block by solving the public system at x."""
    _check_block(x, pk.n)
    matrix, rhs = pk.linear_system(x)
    try:
        return solve_linear(matrix, rhs)
    except SingularMatrixError as exc:
        # cannot happen for honestly generated keys: the y-coefficient
        # matrix is invertible because the inner term of the central map
        # never vanishes
        raise MalformedKeyError("public key yields a singular system") from exc


def decrypt_candidates(sk: SecretKey, y: int) -> tuple[int, int]:
    """Both preimage candidates for the ciphertext y.

    With v = t(y):
        z1 = alpha + 1 + v + v^(2^m)
        z2 = z1^(2^m - 1)           (the single exponentiation)
        z3 = v + 1 + z2
    and the candidates are s^-1(v + 1) and s^-1(z3).  When z1 = 0 the two
    coincide, since z2 is then 0 as well.
    """
    field = sk.field
    _check_block(y, field.n)
    v = sk.t.apply(y)
    v_frob = apply_columns(sk._frob_cols, v)
    z1 = sk.alpha ^ 1 ^ v ^ v_frob
    z2 = field.pow(z1, (1 << field.m) - 1)
    z3 = v ^ 1 ^ z2
    return sk.s.invert_apply(v ^ 1), sk.s.invert_apply(z3)


def decrypt_block(sk: SecretKey, y: int) -> int:
    """Decrypt one block: the unique candidate satisfying the relation."""
    x1, x2 = decrypt_candidates(sk, y)
    if relation_residual(sk, x1, y) == 0:
        return x1
    if relation_residual(sk, x2, y) == 0:
        return x2
    raise DecryptionError("no candidate satisfies the relation; corrupt block or wrong key")


def sign(sk: SecretKey, digest: int) -> int:
    """Signature of an n-bit digest: the unique block encrypting to it."""
    return decrypt_block(sk, digest)


def verify(pk: PublicKey, digest: int, signature: int) -> bool:
    """Check a signature by evaluating the public equations; no solve needed."""
    _check_block(digest, pk.n)
    _check_block(signature, pk.n)
    return pk.holds(signature, digest)


def pad_message(data: bytes, n: int) -> list[int]:
    """Split a byte string into n-bit blocks with always-appended 10* padding.

    A single 1 bit follows the message bits, then zeros up to the next
    block boundary; aligned messages therefore gain a whole extra block.
    """
    if n < 1:
        raise ValueError("block size must be positive")
    stream = int.from_bytes(data, "little")
    total = 8 * len(data)
    stream |= 1 << total
    total += 1
    nblocks = -(-total // n)
    mask = (1 << n) - 1
    return [(stream >> (i * n)) & mask for i in range(nblocks)]


def unpad_message(blocks, n: int) -> bytes:
    """Inverse of pad_message: strip from the last 1 bit."""
    stream = 0
    for i, block in enumerate(blocks):
        _check_block(block, n)
        stream |= block << (i * n)
    if stream == 0:
        raise PaddingError("no padding marker found")
    total = stream.bit_length() - 1
    if total % 8:
        raise PaddingError("message length is not a whole number of bytes")
    stream ^= 1 << total
    return stream.to_bytes(total // 8, "little")


def encrypt_message(pk: PublicKey, data: bytes) -> bytes:
    """Pad and encrypt a byte string block by block (ECB composition)."""
    block_bytes = packed_size(pk.n)
    out = bytearray()
    for block in pad_message(data, pk.n):
        out += encrypt_block(pk, block).to_bytes(block_bytes, "little")
    return bytes(out)


def decrypt_message(sk: SecretKey, data: bytes) -> bytes:
    """Decrypt, then unpad; rejects misaligned input and slack bits."""
    n = sk.field.n
    block_bytes = packed_size(n)
    if len(data) == 0 or len(data) % block_bytes:
        raise ValueError("ciphertext length is not a multiple of the block size")
    blocks = []
    for i in range(0, len(data), block_bytes):
        value = int.from_bytes(data[i : i + block_bytes], "little")
        if value >> n:
            raise ValueError("nonzero slack bits in ciphertext block")
        blocks.append(decrypt_block(sk, value))
    return unpad_message(blocks, n)
