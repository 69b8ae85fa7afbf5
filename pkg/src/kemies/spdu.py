"""Encrypted SPDU: wrapped-key section plus AEAD payload, and its wire codec.

Wire layout (all fixed-size fields are implied by the suite)::

    version (1) = 0x01
    suite_id (1)
    encrypted_kek (kek_ct_len)
    c (16)
    t (32)
    nonce (12 for AES-128-CCM, 16 for Ascon-AEAD128)
    payload_len (4, big-endian)
    ciphertext (payload_len, includes the 16-byte AEAD tag)

The payload is sealed under the DEK with empty associated data; context is
bound through ``p`` in the key derivation instead.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from kemies.errors import (
    BadMagicOrVersion,
    InvalidNonceLength,
    TrailingBytes,
    TruncatedInput,
    UnknownSuite,
    UnsupportedSuite,
)
from kemies.primitives import SUITES, aead_open, aead_seal, draw, get_suite, system_random
from kemies.primitives.suites import DEK_LEN, TAG_LEN
from kemies.schemes import RecipientPrivateKeys, RecipientPublicKeys, WrappedDek, unwrap, wrap

__all__ = [
    "VERSION",
    "PayloadCiphertext",
    "EncryptedSpdu",
    "encrypt_message",
    "encrypt_message_with",
    "decrypt_message",
    "encode",
    "decode",
    "kek_section_size",
    "encoded_size",
]

VERSION = 0x01
HEADER_LEN = 2
_LEN_FIELD = struct.Struct(">I")


@dataclass(frozen=True)
class PayloadCiphertext:
    nonce: bytes
    ccm_ciphertext: bytes


@dataclass(frozen=True)
class EncryptedSpdu:
    version: int
    suite_id: int
    wrapped: WrappedDek
    payload: PayloadCiphertext


def kek_section_size(suite) -> int:
    """Bytes of encrypted KEK + c + t for a registered suite."""
    return get_suite(suite).kek_section_len


def encoded_size(suite, plaintext_len: int) -> int:
    suite = get_suite(suite)
    return (HEADER_LEN + suite.kek_section_len + suite.nonce_len
            + _LEN_FIELD.size + plaintext_len + 16)


def encrypt_message(suite, recipient_keys: RecipientPublicKeys, info: bytes,
                    plaintext: bytes, rng=None) -> EncryptedSpdu:
    """Wrap a fresh random DEK for the recipient and seal ``plaintext`` under it."""
    suite = get_suite(suite)
    rng = rng or system_random()
    dek = draw(rng, DEK_LEN)
    nonce = draw(rng, suite.nonce_len)
    return encrypt_message_with(suite, recipient_keys, info, plaintext, rng, dek=dek, nonce=nonce)


def encrypt_message_with(suite, recipient_keys: RecipientPublicKeys, info: bytes,
                         plaintext: bytes, rng, *, dek: bytes, nonce: bytes) -> EncryptedSpdu:
    """As :func:`encrypt_message` with an injected DEK and nonce.

    For building test vectors only; reusing a (DEK, nonce) pair breaks the
    payload AEAD.
    """
    suite = get_suite(suite)
    if len(nonce) != suite.nonce_len:
        raise InvalidNonceLength(f"{suite.aead_alg.value} needs a {suite.nonce_len}-byte nonce")
    wrapped = wrap(suite, recipient_keys, info, dek, rng)
    ct = aead_seal(suite.aead_alg, dek, nonce, b"", plaintext)
    return EncryptedSpdu(VERSION, suite.suite_id, wrapped, PayloadCiphertext(bytes(nonce), ct))


def decrypt_message(recipient_keys: RecipientPrivateKeys, spdu: EncryptedSpdu,
                    info: bytes) -> bytes:
    """Unwrap the DEK (tag-checked), then open the payload."""
    if spdu.suite_id not in SUITES or spdu.wrapped.suite_id != spdu.suite_id:
        raise UnsupportedSuite(f"unsupported suite 0x{spdu.suite_id:02x}")
    suite = get_suite(spdu.suite_id)
    dek = unwrap(suite, recipient_keys, spdu.wrapped, info)
    return aead_open(suite.aead_alg, dek, spdu.payload.nonce, b"", spdu.payload.ccm_ciphertext)


def encode(spdu: EncryptedSpdu) -> bytes:
    w = spdu.wrapped
    p = spdu.payload
    return b"".join([
        bytes([spdu.version, spdu.suite_id]),
        w.encrypted_kek, w.c, w.t,
        p.nonce,
        _LEN_FIELD.pack(len(p.ccm_ciphertext)),
        p.ccm_ciphertext,
    ])


def decode(data: bytes) -> EncryptedSpdu:
    data = bytes(data)
    if len(data) < HEADER_LEN:
        raise TruncatedInput("missing SPDU header")
    if data[0] != VERSION:
        raise BadMagicOrVersion(f"unsupported SPDU version 0x{data[0]:02x}")
    suite_id = data[1]
    if suite_id not in SUITES:
        raise UnknownSuite(f"suite 0x{suite_id:02x} is not registered")
    suite = get_suite(suite_id)

    fixed = suite.kek_ct_len + DEK_LEN + TAG_LEN + suite.nonce_len + _LEN_FIELD.size
    if len(data) < HEADER_LEN + fixed:
        raise TruncatedInput("SPDU shorter than its fixed-size fields")
    pos = HEADER_LEN
    fields = []
    for size in (suite.kek_ct_len, DEK_LEN, TAG_LEN, suite.nonce_len):
        fields.append(data[pos:pos + size])
        pos += size
    (payload_len,) = _LEN_FIELD.unpack_from(data, pos)
    pos += _LEN_FIELD.size
    end = pos + payload_len
    if len(data) < end:
        raise TruncatedInput("payload shorter than its length field")
    if len(data) > end:
        raise TrailingBytes(f"{len(data) - end} unexpected bytes after the payload")

    kek, c, t, nonce = fields
    return EncryptedSpdu(VERSION, suite_id, WrappedDek(kek, c, t, suite_id),
                         PayloadCiphertext(nonce, data[pos:end]))
