"""Hash dispatch, KDF2 key derivation and the wrapping MAC."""

from __future__ import annotations

import hashlib
import hmac
from typing import NamedTuple

from kemies import ascon
from kemies.errors import InvalidKeyLength
from kemies.primitives.suites import HashAlg

KDF_OUTPUT_LEN = 32
MAC_KEY_LEN = 16
MAC_TAG_LEN = 32

_HMAC_DIGEST = {HashAlg.SHA256: "sha256", HashAlg.SHA3_256: "sha3_256"}


class DerivedKeys(NamedTuple):
    k1: bytes
    k2: bytes


def digest(hash_alg: HashAlg, data: bytes, length: int = 32) -> bytes:
    """Hash ``data``; ``length`` only matters for the SHAKE-128 XOF."""
    if hash_alg is HashAlg.SHA256:
        return hashlib.sha256(data).digest()
    if hash_alg is HashAlg.SHA3_256:
        return hashlib.sha3_256(data).digest()
    if hash_alg is HashAlg.SHAKE128:
        return hashlib.shake_128(data).digest(length)
    if hash_alg is HashAlg.ASCON_HASH256:
        return ascon.hash256(data)
    raise ValueError(f"unsupported hash {hash_alg!r}")


def kdf2(hash_alg: HashAlg, z: bytes, p: bytes, length: int) -> bytes:
    """KDF2: ``Hash(z || counter || p)`` for counter = 1, 2, ... (4 bytes, BE).

    SHAKE-128 has no fixed block, so its output is read directly from
    ``SHAKE-128(z || p)``.
    """
    if not z:
        raise ValueError("KDF input secret must be nonempty")
    if hash_alg is HashAlg.SHAKE128:
        return digest(hash_alg, z + p, length)
    out = bytearray()
    counter = 1
    while len(out) < length:
        out += digest(hash_alg, z + counter.to_bytes(4, "big") + p)
        counter += 1
    return bytes(out[:length])


def kdf_derive(hash_alg: HashAlg, z: bytes, p: bytes = b"") -> DerivedKeys:
    okm = kdf2(hash_alg, z, p, KDF_OUTPUT_LEN)
    return DerivedKeys(okm[:16], okm[16:])


def mac_tag(hash_alg: HashAlg, k2: bytes, c: bytes) -> bytes:
    """32-byte tag over ``c``.

    HMAC for SHA-256 and SHA3-256.  The sponge hashes are keyed by prefixing:
    ``Hash(k2 || c)``.
    """
    if len(k2) != MAC_KEY_LEN:
        raise InvalidKeyLength(f"MAC key must be {MAC_KEY_LEN} bytes")
    if hash_alg in _HMAC_DIGEST:
        return hmac.new(k2, c, _HMAC_DIGEST[hash_alg]).digest()
    return digest(hash_alg, k2 + c, MAC_TAG_LEN)


def mac_verify(hash_alg: HashAlg, k2: bytes, c: bytes, t: bytes) -> bool:
    return hmac.compare_digest(mac_tag(hash_alg, k2, c), bytes(t))
