"""Payload AEAD dispatch: AES-128-CCM or Ascon-AEAD128, 16-byte tags."""

from __future__ import annotations

from cryptography.exceptions import InvalidTag
from cryptography.hazmat.primitives.ciphers.aead import AESCCM

from kemies import ascon
from kemies.errors import (
    AuthenticationFailure,
    InvalidKeyLength,
    InvalidLength,
    InvalidNonceLength,
)
from kemies.primitives.suites import AeadAlg

AEAD_KEY_LEN = 16
AEAD_TAG_LEN = 16


def aead_seal(aead_alg: AeadAlg, key: bytes, nonce: bytes,
              associated_data: bytes, plaintext: bytes) -> bytes:
    if aead_alg is AeadAlg.ASCON_AEAD128:
        return ascon.aead128_seal(key, nonce, associated_data, plaintext)
    _check_ccm(key, nonce)
    return AESCCM(bytes(key), tag_length=AEAD_TAG_LEN).encrypt(
        bytes(nonce), bytes(plaintext), bytes(associated_data))


def aead_open(aead_alg: AeadAlg, key: bytes, nonce: bytes,
              associated_data: bytes, ciphertext: bytes) -> bytes:
    if aead_alg is AeadAlg.ASCON_AEAD128:
        return ascon.aead128_open(key, nonce, associated_data, ciphertext)
    _check_ccm(key, nonce)
    if len(ciphertext) < AEAD_TAG_LEN:
        raise InvalidLength("input shorter than the authentication tag")
    try:
        return AESCCM(bytes(key), tag_length=AEAD_TAG_LEN).decrypt(
            bytes(nonce), bytes(ciphertext), bytes(associated_data))
    except InvalidTag:
        raise AuthenticationFailure("AES-128-CCM tag mismatch") from None


def _check_ccm(key, nonce):
    if len(key) != AEAD_KEY_LEN:
        raise InvalidKeyLength("AES-128-CCM key must be 16 bytes")
    if len(nonce) != AeadAlg.AES128_CCM.nonce_len:
        raise InvalidNonceLength("AES-128-CCM nonce must be 12 bytes")
