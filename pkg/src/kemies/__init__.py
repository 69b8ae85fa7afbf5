"""Classical, post-quantum and hybrid integrated encryption for V2X messages.

Quick start::

    from kemies import get_suite, generate_recipient_keys, encrypt_message, decrypt_message

    suite = get_suite(0x04)                     # Hybrid-IES, P-256 + ML-KEM-512
    pub, priv = generate_recipient_keys(suite, rng)
    spdu = encrypt_message(suite, pub, b"ctx", b"hello")
    assert decrypt_message(priv, spdu, b"ctx") == b"hello"
"""

from kemies import ascon, bench, errors, primitives, schemes, spdu
from kemies.errors import KemiesError
from kemies.primitives import (
    CANONICAL_SUITE_IDS,
    SUITES,
    DeterministicRandom,
    Mechanism,
    SuiteDescriptor,
    get_suite,
)
from kemies.schemes import (
    RecipientPrivateKeys,
    RecipientPublicKeys,
    WrappedDek,
    generate_recipient_keys,
    unwrap,
    wrap,
    xor_wrap,
)
from kemies.spdu import EncryptedSpdu, decode, decrypt_message, encode, encrypt_message

__version__ = "0.1.0"

__all__ = [
    "CANONICAL_SUITE_IDS", "SUITES", "DeterministicRandom", "EncryptedSpdu",
    "KemiesError", "Mechanism", "RecipientPrivateKeys", "RecipientPublicKeys",
    "SuiteDescriptor", "WrappedDek", "ascon", "bench", "decode", "decrypt_message",
    "encode", "encrypt_message", "errors", "generate_recipient_keys", "get_suite",
    "primitives", "schemes", "spdu", "unwrap", "wrap", "xor_wrap",
]
