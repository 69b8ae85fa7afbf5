"""The three key-wrapping schemes: ECIES, KEM-IES and Hybrid-IES.

Each scheme establishes a key-encryption secret (ECDH x-coordinate, KEM
shared secret, or both concatenated ECDH-first), derives ``k1 || k2`` from it
with the suite's KDF and the shared information ``p``, and sends::

    encrypted_kek    v_a (ECIES), e (KEM-IES) or e || v_a (hybrid)
    c = s XOR k1     the wrapped 16-byte data-encryption key
    t = MAC(k2, c)   32-byte tag

Unwrapping always checks ``t`` before ``s`` is recovered.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from kemies.errors import (
    InvalidCiphertextLength,
    KeyMismatch,
    LengthMismatch,
    MacMismatch,
    UnsupportedSuite,
)
from kemies.primitives import (
    Mechanism,
    SuiteDescriptor,
    ecdh_keygen,
    ecdh_shared_x,
    get_suite,
    kdf_derive,
    kem_decaps,
    kem_encaps,
    kem_keygen,
    mac_tag,
    mac_verify,
)
from kemies.primitives.suites import DEK_LEN, ECC_POINT_LEN, TAG_LEN

__all__ = [
    "WrappedDek",
    "RecipientPublicKeys",
    "RecipientPrivateKeys",
    "generate_recipient_keys",
    "xor_wrap",
    "seal_dek",
    "open_dek",
    "ecies_wrap",
    "ecies_unwrap",
    "kemies_wrap",
    "kemies_unwrap",
    "hybrid_wrap",
    "hybrid_unwrap",
    "wrap",
    "unwrap",
]


@dataclass(frozen=True)
class WrappedDek:
    encrypted_kek: bytes
    c: bytes
    t: bytes
    suite_id: int

    def __post_init__(self):
        if len(self.c) != DEK_LEN:
            raise LengthMismatch(f"c must be {DEK_LEN} bytes")
        if len(self.t) != TAG_LEN:
            raise LengthMismatch(f"t must be {TAG_LEN} bytes")

    def to_bytes(self) -> bytes:
        return self.encrypted_kek + self.c + self.t

    @property
    def size(self) -> int:
        return len(self.encrypted_kek) + len(self.c) + len(self.t)


@dataclass(frozen=True)
class RecipientPublicKeys:
    ecc: bytes | None = None
    kem: bytes | None = None


@dataclass(frozen=True)
class RecipientPrivateKeys:
    ecc: int | None = field(default=None, repr=False)
    kem: bytes | None = field(default=None, repr=False)


def generate_recipient_keys(suite, rng, backend: str | None = None):
    """Long-term recipient keys for ``suite``: ``(public, private)``."""
    mechanism = get_suite(suite).kek_mechanism
    ecc_pub = ecc_priv = kem_pub = kem_priv = None
    if mechanism.uses_ecdh:
        pair = ecdh_keygen(rng)
        ecc_pub, ecc_priv = pair.public_point, pair.private_scalar
    if mechanism.kem is not None:
        pair = kem_keygen(mechanism.kem, rng, backend)
        kem_pub, kem_priv = pair.public_key, pair.private_key
    return RecipientPublicKeys(ecc_pub, kem_pub), RecipientPrivateKeys(ecc_priv, kem_priv)


def xor_wrap(k1: bytes, s: bytes) -> bytes:
    if len(k1) != DEK_LEN or len(s) != DEK_LEN:
        raise LengthMismatch(f"xor_wrap operands must both be {DEK_LEN} bytes")
    return bytes(a ^ b for a, b in zip(k1, s))


def seal_dek(suite: SuiteDescriptor, z: bytes, p: bytes, dek: bytes):
    k1, k2 = kdf_derive(suite.hash_alg, z, p)
    c = xor_wrap(k1, dek)
    return c, mac_tag(suite.hash_alg, k2, c)


def open_dek(suite: SuiteDescriptor, z: bytes, p: bytes, wrapped: WrappedDek) -> bytes:
    k1, k2 = kdf_derive(suite.hash_alg, z, p)
    if not mac_verify(suite.hash_alg, k2, wrapped.c, wrapped.t):
        raise MacMismatch("wrapped DEK failed tag verification")
    return xor_wrap(k1, wrapped.c)


def _require(suite, check, what: str) -> SuiteDescriptor:
    suite = get_suite(suite)
    if not check(suite.kek_mechanism):
        raise UnsupportedSuite(f"suite 0x{suite.suite_id:02x} is not a {what} suite")
    return suite


def _require_match(suite: SuiteDescriptor, wrapped: WrappedDek):
    if wrapped.suite_id != suite.suite_id:
        raise UnsupportedSuite(f"wrapped key is for suite 0x{wrapped.suite_id:02x}, "
                               f"not 0x{suite.suite_id:02x}")


def _check_dek(dek: bytes):
    if len(dek) != DEK_LEN:
        raise LengthMismatch(f"DEK must be {DEK_LEN} bytes")


def ecies_wrap(recipient_pub: bytes, info: bytes, dek: bytes, suite, rng) -> WrappedDek:
    suite = _require(suite, lambda m: m is Mechanism.ECDH_P256, "ECIES")
    _check_dek(dek)
    ephemeral = ecdh_keygen(rng)
    z1 = ecdh_shared_x(ephemeral.private_scalar, recipient_pub)
    c, t = seal_dek(suite, z1, info, dek)
    return WrappedDek(ephemeral.public_point, c, t, suite.suite_id)


def ecies_unwrap(recipient_priv: int, wrapped: WrappedDek, info: bytes, suite) -> bytes:
    suite = _require(suite, lambda m: m is Mechanism.ECDH_P256, "ECIES")
    _require_match(suite, wrapped)
    z1 = ecdh_shared_x(recipient_priv, wrapped.encrypted_kek)
    return open_dek(suite, z1, info, wrapped)


def kemies_wrap(recipient_kem_pub: bytes, info: bytes, dek: bytes, suite, rng) -> WrappedDek:
    suite = _require(suite, lambda m: m.is_kem, "KEM-IES")
    _check_dek(dek)
    z2, e = kem_encaps(recipient_kem_pub, suite.kek_mechanism, rng)
    c, t = seal_dek(suite, z2, info, dek)
    return WrappedDek(e, c, t, suite.suite_id)


def kemies_unwrap(recipient_kem_priv: bytes, wrapped: WrappedDek, info: bytes, suite) -> bytes:
    suite = _require(suite, lambda m: m.is_kem, "KEM-IES")
    _require_match(suite, wrapped)
    z2 = kem_decaps(recipient_kem_priv, wrapped.encrypted_kek, suite.kek_mechanism)
    return open_dek(suite, z2, info, wrapped)


def hybrid_wrap(recipient_ecc_pub: bytes, recipient_kem_pub: bytes, info: bytes,
                dek: bytes, suite, rng) -> WrappedDek:
    suite = _require(suite, lambda m: m.is_hybrid, "hybrid")
    _check_dek(dek)
    ephemeral = ecdh_keygen(rng)
    z1 = ecdh_shared_x(ephemeral.private_scalar, recipient_ecc_pub)
    z2, e = kem_encaps(recipient_kem_pub, suite.kek_mechanism.kem, rng)
    c, t = seal_dek(suite, z1 + z2, info, dek)
    return WrappedDek(e + ephemeral.public_point, c, t, suite.suite_id)


def hybrid_unwrap(recipient_ecc_priv: int, recipient_kem_priv: bytes,
                  wrapped: WrappedDek, info: bytes, suite) -> bytes:
    suite = _require(suite, lambda m: m.is_hybrid, "hybrid")
    _require_match(suite, wrapped)
    if len(wrapped.encrypted_kek) != suite.kek_ct_len:
        raise InvalidCiphertextLength(f"hybrid encrypted KEK must be {suite.kek_ct_len} bytes")
    e = wrapped.encrypted_kek[:-ECC_POINT_LEN]
    v_a = wrapped.encrypted_kek[-ECC_POINT_LEN:]
    z1 = ecdh_shared_x(recipient_ecc_priv, v_a)
    z2 = kem_decaps(recipient_kem_priv, e, suite.kek_mechanism.kem)
    return open_dek(suite, z1 + z2, info, wrapped)


def wrap(suite, keys: RecipientPublicKeys, info: bytes, dek: bytes, rng) -> WrappedDek:
    """Dispatch to the scheme matching the suite's mechanism."""
    suite = get_suite(suite)
    mechanism = suite.kek_mechanism
    _check_keys(suite, keys)
    if mechanism.is_hybrid:
        return hybrid_wrap(keys.ecc, keys.kem, info, dek, suite, rng)
    if mechanism.is_kem:
        return kemies_wrap(keys.kem, info, dek, suite, rng)
    return ecies_wrap(keys.ecc, info, dek, suite, rng)


def unwrap(suite, keys: RecipientPrivateKeys, wrapped: WrappedDek, info: bytes) -> bytes:
    suite = get_suite(suite)
    mechanism = suite.kek_mechanism
    _check_keys(suite, keys)
    if mechanism.is_hybrid:
        return hybrid_unwrap(keys.ecc, keys.kem, wrapped, info, suite)
    if mechanism.is_kem:
        return kemies_unwrap(keys.kem, wrapped, info, suite)
    return ecies_unwrap(keys.ecc, wrapped, info, suite)


def _check_keys(suite: SuiteDescriptor, keys):
    mechanism = suite.kek_mechanism
    if mechanism.uses_ecdh and keys.ecc is None:
        raise KeyMismatch(f"{mechanism.value} needs an ECC key")
    if mechanism.kem is not None and keys.kem is None:
        raise KeyMismatch(f"{mechanism.value} needs a KEM key")
