"""Ascon permutation, Ascon-Hash256 and Ascon-AEAD128 (NIST SP 800-232).

The byte-level kernels are written against ``numpy.uint64`` lanes so that the
same source runs either compiled by numba or as plain Python (set
``NUMBA_DISABLE_JIT=1``, or run without numba installed).  Words are loaded
little-endian, as the standard requires.
"""

from __future__ import annotations

import hmac

import numpy as np

from kemies.errors import (
    AuthenticationFailure,
    InvalidKeyLength,
    InvalidLength,
    InvalidNonceLength,
    InvalidRounds,
)

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


__all__ = [
    "AsconState",
    "permute",
    "hash256",
    "aead128_seal",
    "aead128_open",
    "KEY_LEN",
    "NONCE_LEN",
    "TAG_LEN",
    "DIGEST_LEN",
]

KEY_LEN = 16
NONCE_LEN = 16
TAG_LEN = 16
DIGEST_LEN = 32

_RC = np.array(
    [0xF0, 0xE1, 0xD2, 0xC3, 0xB4, 0xA5, 0x96, 0x87, 0x78, 0x69, 0x5A, 0x4B],
    dtype=np.uint64,
)
_AEAD128_IV = np.uint64(0x00001000808C0001)
_HASH256_IV = np.uint64(0x0000080100CC0002)
_DOMAIN_SEP = np.uint64(0x8000000000000000)
_ONE = np.uint64(1)
_BYTE = np.uint64(0xFF)


@njit(cache=True)
def _rotr(x, n):
    return (x >> np.uint64(n)) | (x << np.uint64(64 - n))


@njit(cache=True)
def _permute(s, rounds):
    x0 = s[0]
    x1 = s[1]
    x2 = s[2]
    x3 = s[3]
    x4 = s[4]
    for r in range(12 - rounds, 12):
        x2 ^= _RC[r]
        # substitution layer, bitsliced 5-bit S-box
        x0 ^= x4
        x4 ^= x3
        x2 ^= x1
        t0 = ~x0 & x1
        t1 = ~x1 & x2
        t2 = ~x2 & x3
        t3 = ~x3 & x4
        t4 = ~x4 & x0
        x0 ^= t1
        x1 ^= t2
        x2 ^= t3
        x3 ^= t4
        x4 ^= t0
        x1 ^= x0
        x0 ^= x4
        x3 ^= x2
        x2 = ~x2
        # linear diffusion layer
        x0 ^= _rotr(x0, 19) ^ _rotr(x0, 28)
        x1 ^= _rotr(x1, 61) ^ _rotr(x1, 39)
        x2 ^= _rotr(x2, 1) ^ _rotr(x2, 6)
        x3 ^= _rotr(x3, 10) ^ _rotr(x3, 17)
        x4 ^= _rotr(x4, 7) ^ _rotr(x4, 41)
    s[0] = x0
    s[1] = x1
    s[2] = x2
    s[3] = x3
    s[4] = x4


@njit(cache=True)
def _load(buf, off, n):
    w = np.uint64(0)
    for i in range(n):
        w |= np.uint64(buf[off + i]) << np.uint64(8 * i)
    return w


@njit(cache=True)
def _store(out, off, w, n):
    for i in range(n):
        out[off + i] = np.uint8((w >> np.uint64(8 * i)) & _BYTE)


@njit(cache=True)
def _pad(n):
    return _ONE << np.uint64(8 * n)


@njit(cache=True)
def _low_mask(n):
    # n < 8
    return (_ONE << np.uint64(8 * n)) - _ONE


@njit(cache=True)
def _aead_init(s, key, nonce):
    k0 = _load(key, 0, 8)
    k1 = _load(key, 8, 8)
    s[0] = _AEAD128_IV
    s[1] = k0
    s[2] = k1
    s[3] = _load(nonce, 0, 8)
    s[4] = _load(nonce, 8, 8)
    _permute(s, 12)
    s[3] ^= k0
    s[4] ^= k1


@njit(cache=True)
def _aead_absorb_ad(s, ad):
    n = ad.shape[0]
    if n > 0:
        i = 0
        while n - i >= 16:
            s[0] ^= _load(ad, i, 8)
            s[1] ^= _load(ad, i + 8, 8)
            _permute(s, 8)
            i += 16
        rem = n - i
        if rem >= 8:
            s[0] ^= _load(ad, i, 8)
            s[1] ^= _load(ad, i + 8, rem - 8) ^ _pad(rem - 8)
        else:
            s[0] ^= _load(ad, i, rem) ^ _pad(rem)
        _permute(s, 8)
    s[4] ^= _DOMAIN_SEP


@njit(cache=True)
def _aead_finalize(s, key, tag, off):
    k0 = _load(key, 0, 8)
    k1 = _load(key, 8, 8)
    s[2] ^= k0
    s[3] ^= k1
    _permute(s, 12)
    _store(tag, off, s[3] ^ k0, 8)
    _store(tag, off + 8, s[4] ^ k1, 8)


@njit(cache=True)
def _aead_encrypt(key, nonce, ad, pt, out):
    s = np.zeros(5, dtype=np.uint64)
    _aead_init(s, key, nonce)
    _aead_absorb_ad(s, ad)
    n = pt.shape[0]
    i = 0
    while n - i >= 16:
        s[0] ^= _load(pt, i, 8)
        s[1] ^= _load(pt, i + 8, 8)
        _store(out, i, s[0], 8)
        _store(out, i + 8, s[1], 8)
        _permute(s, 8)
        i += 16
    rem = n - i
    if rem >= 8:
        s[0] ^= _load(pt, i, 8)
        s[1] ^= _load(pt, i + 8, rem - 8)
        _store(out, i, s[0], 8)
        _store(out, i + 8, s[1], rem - 8)
        s[1] ^= _pad(rem - 8)
    else:
        s[0] ^= _load(pt, i, rem)
        _store(out, i, s[0], rem)
        s[0] ^= _pad(rem)
    _aead_finalize(s, key, out, n)


@njit(cache=True)
def _aead_decrypt(key, nonce, ad, ct, out, tag):
    s = np.zeros(5, dtype=np.uint64)
    _aead_init(s, key, nonce)
    _aead_absorb_ad(s, ad)
    n = ct.shape[0]
    i = 0
    while n - i >= 16:
        c0 = _load(ct, i, 8)
        c1 = _load(ct, i + 8, 8)
        _store(out, i, s[0] ^ c0, 8)
        _store(out, i + 8, s[1] ^ c1, 8)
        s[0] = c0
        s[1] = c1
        _permute(s, 8)
        i += 16
    rem = n - i
    if rem >= 8:
        c0 = _load(ct, i, 8)
        _store(out, i, s[0] ^ c0, 8)
        s[0] = c0
        c1 = _load(ct, i + 8, rem - 8)
        _store(out, i + 8, s[1] ^ c1, rem - 8)
        s[1] = (s[1] & ~_low_mask(rem - 8)) | c1
        s[1] ^= _pad(rem - 8)
    else:
        c0 = _load(ct, i, rem)
        _store(out, i, s[0] ^ c0, rem)
        s[0] = (s[0] & ~_low_mask(rem)) | c0
        s[0] ^= _pad(rem)
    _aead_finalize(s, key, tag, 0)


@njit(cache=True)
def _hash(msg, out):
    s = np.zeros(5, dtype=np.uint64)
    s[0] = _HASH256_IV
    _permute(s, 12)
    n = msg.shape[0]
    i = 0
    while n - i >= 8:
        s[0] ^= _load(msg, i, 8)
        _permute(s, 12)
        i += 8
    rem = n - i
    s[0] ^= _load(msg, i, rem) ^ _pad(rem)
    _permute(s, 12)
    for j in range(4):
        _store(out, 8 * j, s[0], 8)
        if j < 3:
            _permute(s, 12)


def _as_u8(data) -> np.ndarray:
    return np.frombuffer(bytes(data), dtype=np.uint8)


class AsconState:
    """The 320-bit Ascon state as five 64-bit lanes ``x0..x4``."""

    __slots__ = ("lanes",)

    def __init__(self, words=(0, 0, 0, 0, 0)):
        words = tuple(int(w) for w in words)
        if len(words) != 5:
            raise InvalidLength(f"Ascon state has 5 lanes, got {len(words)}")
        self.lanes = np.array(words, dtype=np.uint64)

    @property
    def words(self) -> tuple[int, ...]:
        return tuple(int(w) for w in self.lanes)

    def __eq__(self, other):
        if not isinstance(other, AsconState):
            return NotImplemented
        return self.words == other.words

    def __repr__(self):
        return "AsconState(" + ", ".join(f"0x{w:016x}" for w in self.words) + ")"


def permute(state: AsconState, rounds: int = 12) -> AsconState:
    """Apply the last ``rounds`` rounds of the 12-round schedule, in place."""
    if not 1 <= rounds <= 12:
        raise InvalidRounds(f"rounds must be in 1..12, got {rounds}")
    _permute(state.lanes, rounds)
    return state


def hash256(message: bytes) -> bytes:
    """Ascon-Hash256 digest (32 bytes)."""
    out = np.empty(DIGEST_LEN, dtype=np.uint8)
    _hash(_as_u8(message), out)
    return out.tobytes()


def _check_key_nonce(key, nonce):
    if len(key) != KEY_LEN:
        raise InvalidKeyLength(f"Ascon-AEAD128 key must be {KEY_LEN} bytes")
    if len(nonce) != NONCE_LEN:
        raise InvalidNonceLength(f"Ascon-AEAD128 nonce must be {NONCE_LEN} bytes")


def aead128_seal(key: bytes, nonce: bytes, associated_data: bytes,
                 plaintext: bytes) -> bytes:
    """Encrypt and authenticate; returns ``ciphertext || tag``."""
    _check_key_nonce(key, nonce)
    pt = _as_u8(plaintext)
    out = np.empty(pt.shape[0] + TAG_LEN, dtype=np.uint8)
    _aead_encrypt(_as_u8(key), _as_u8(nonce), _as_u8(associated_data), pt, out)
    return out.tobytes()


def aead128_open(key: bytes, nonce: bytes, associated_data: bytes,
                 ciphertext_and_tag: bytes) -> bytes:
    """Verify and decrypt ``ciphertext || tag``.

    Raises AuthenticationFailure without returning any plaintext if the tag
    does not match.
    """
    _check_key_nonce(key, nonce)
    if len(ciphertext_and_tag) < TAG_LEN:
        raise InvalidLength("input shorter than the authentication tag")
    buf = _as_u8(ciphertext_and_tag)
    ct = buf[:-TAG_LEN]
    out = np.empty(ct.shape[0], dtype=np.uint8)
    tag = np.empty(TAG_LEN, dtype=np.uint8)
    _aead_decrypt(_as_u8(key), _as_u8(nonce), _as_u8(associated_data), ct, out, tag)
    if not hmac.compare_digest(tag.tobytes(), buf[-TAG_LEN:].tobytes()):
        out[:] = 0
        raise AuthenticationFailure("Ascon-AEAD128 tag mismatch")
    return out.tobytes()
