"""Pluggable algorithm families and the suite registry."""

from kemies.primitives.aead import aead_open, aead_seal
from kemies.primitives.ecdh import EcdhKeyPair, ecdh_keygen, ecdh_shared_x, public_from_private
from kemies.primitives.kdf import DerivedKeys, digest, kdf2, kdf_derive, mac_tag, mac_verify
from kemies.primitives.kem import (
    KemKeyPair,
    available_backends,
    get_backend,
    kem_decaps,
    kem_encaps,
    kem_keygen,
)
from kemies.primitives.keyfile import KeyFile, KeyKind, decode_key, encode_key
from kemies.primitives.rng import DeterministicRandom, draw, system_random
from kemies.primitives.suites import (
    CANONICAL_SUITE_IDS,
    SUITES,
    AeadAlg,
    HashAlg,
    Mechanism,
    SuiteDescriptor,
    get_suite,
    make_suite,
    validate_suite,
)

__all__ = [
    "AeadAlg", "CANONICAL_SUITE_IDS", "DerivedKeys", "DeterministicRandom",
    "EcdhKeyPair", "HashAlg", "KemKeyPair", "KeyFile", "KeyKind", "Mechanism",
    "SUITES", "SuiteDescriptor", "aead_open", "aead_seal", "available_backends",
    "decode_key", "digest", "draw", "ecdh_keygen", "ecdh_shared_x", "encode_key",
    "get_backend", "get_suite", "kdf2", "kdf_derive", "kem_decaps", "kem_encaps",
    "kem_keygen", "mac_tag", "mac_verify", "make_suite", "public_from_private",
    "system_random", "validate_suite",
]
