"""Algorithm-suite registry.

A suite fixes one key-establishment mechanism, one hash (used for both the
KDF and the MAC) and one AEAD for payload encryption, together with every
fixed field length of the wrapped-key section.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType

from kemies.errors import MechanismUnavailable, RegistryMismatch, UnknownSuite

ECC_POINT_LEN = 33
DEK_LEN = 16
TAG_LEN = 32
SHARED_SECRET_LEN = 32


class Mechanism(Enum):
    ECDH_P256 = "ECDH-P256"
    ML_KEM_512 = "ML-KEM-512"
    HQC_128 = "HQC-128"
    HYBRID_P256_ML_KEM_512 = "HYBRID-P256+ML-KEM-512"
    HYBRID_P256_HQC_128 = "HYBRID-P256+HQC-128"

    @property
    def kem(self) -> Mechanism | None:
        """The post-quantum KEM component, if any."""
        return _KEM_COMPONENT[self]

    @property
    def uses_ecdh(self) -> bool:
        return self in (Mechanism.ECDH_P256, Mechanism.HYBRID_P256_ML_KEM_512,
                        Mechanism.HYBRID_P256_HQC_128)

    @property
    def is_hybrid(self) -> bool:
        return self.uses_ecdh and self.kem is not None

    @property
    def is_kem(self) -> bool:
        return self in (Mechanism.ML_KEM_512, Mechanism.HQC_128)

    @property
    def quantum_safe(self) -> bool:
        return self.kem is not None

    @property
    def scheme(self) -> str:
        if self.is_hybrid:
            return "Hybrid-IES"
        return "KEM-IES" if self.is_kem else "ECIES"

    @property
    def label(self) -> str:
        return _LABELS[self]


_KEM_COMPONENT = {
    Mechanism.ECDH_P256: None,
    Mechanism.ML_KEM_512: Mechanism.ML_KEM_512,
    Mechanism.HQC_128: Mechanism.HQC_128,
    Mechanism.HYBRID_P256_ML_KEM_512: Mechanism.ML_KEM_512,
    Mechanism.HYBRID_P256_HQC_128: Mechanism.HQC_128,
}

_LABELS = {
    Mechanism.ECDH_P256: "ECIES Based on P-256",
    Mechanism.ML_KEM_512: "KEM-IES Based on ML-KEM-512",
    Mechanism.HQC_128: "KEM-IES Based on HQC-128",
    Mechanism.HYBRID_P256_ML_KEM_512: "Hybrid IES Based on P-256 and ML-KEM-512",
    Mechanism.HYBRID_P256_HQC_128: "Hybrid IES Based on P-256 and HQC-128",
}

# Encapsulated-key lengths of the KEM components; hybrids add the ECC point.
KEM_CIPHERTEXT_LEN = MappingProxyType({
    Mechanism.ML_KEM_512: 768,
    Mechanism.HQC_128: 4433,
})


class HashAlg(Enum):
    SHA256 = "SHA-256"
    SHA3_256 = "SHA3-256"
    SHAKE128 = "SHAKE-128"
    ASCON_HASH256 = "Ascon-Hash256"


class AeadAlg(Enum):
    AES128_CCM = "AES-128-CCM"
    ASCON_AEAD128 = "Ascon-AEAD128"

    @property
    def nonce_len(self) -> int:
        return 12 if self is AeadAlg.AES128_CCM else 16


def default_kek_ct_len(mechanism: Mechanism) -> int:
    total = ECC_POINT_LEN if mechanism.uses_ecdh else 0
    if mechanism.kem is not None:
        total += KEM_CIPHERTEXT_LEN[mechanism.kem]
    return total


@dataclass(frozen=True)
class SuiteDescriptor:
    suite_id: int
    kek_mechanism: Mechanism
    hash_alg: HashAlg
    aead_alg: AeadAlg
    kek_ct_len: int
    dek_ct_len: int = DEK_LEN
    tag_len: int = TAG_LEN
    nonce_len: int = 0

    def __post_init__(self):
        if not 0 <= self.suite_id <= 0xFF:
            raise ValueError(f"suite_id must fit in one byte, got {self.suite_id}")
        if self.dek_ct_len != DEK_LEN or self.tag_len != TAG_LEN:
            raise ValueError("c is always 16 bytes and t always 32 bytes")
        if self.nonce_len == 0:
            object.__setattr__(self, "nonce_len", self.aead_alg.nonce_len)
        elif self.nonce_len != self.aead_alg.nonce_len:
            raise ValueError(f"{self.aead_alg.value} takes a "
                             f"{self.aead_alg.nonce_len}-byte nonce")

    @property
    def kek_section_len(self) -> int:
        """Size of the wrapped-key section: encrypted KEK, c and t."""
        return self.kek_ct_len + self.dek_ct_len + self.tag_len

    @property
    def name(self) -> str:
        return (f"{self.kek_mechanism.scheme}/{self.kek_mechanism.value}/"
                f"{self.hash_alg.value}/{self.aead_alg.value}")


def make_suite(suite_id: int, mechanism: Mechanism, hash_alg: HashAlg,
               aead_alg: AeadAlg, kek_ct_len: int | None = None) -> SuiteDescriptor:
    """Build a descriptor; ``kek_ct_len`` overrides the default table length."""
    if kek_ct_len is None:
        kek_ct_len = default_kek_ct_len(mechanism)
    return SuiteDescriptor(suite_id, mechanism, hash_alg, aead_alg, kek_ct_len)


def _build_registry():
    suites = {}
    for offset, mechanism in enumerate(Mechanism, start=1):
        suites[offset] = make_suite(offset, mechanism, HashAlg.SHA256, AeadAlg.AES128_CCM)
        suites[0x10 + offset] = make_suite(0x10 + offset, mechanism,
                                           HashAlg.ASCON_HASH256, AeadAlg.ASCON_AEAD128)
    return MappingProxyType(dict(sorted(suites.items())))


SUITES = _build_registry()

# The five rows of the size comparison, one per mechanism.
CANONICAL_SUITE_IDS = (0x01, 0x02, 0x03, 0x04, 0x05)


def validate_suite(suite: SuiteDescriptor) -> SuiteDescriptor:
    """Check the registry length against the KEM backend's declared length.

    Raises RegistryMismatch rather than reconciling the two.  Suites whose
    backend is not installed pass; they fail later with MechanismUnavailable.
    """
    from kemies.primitives.kem import get_backend

    mechanism = suite.kek_mechanism
    if mechanism.kem is None:
        expected = ECC_POINT_LEN
    else:
        try:
            backend = get_backend(mechanism.kem)
        except MechanismUnavailable:
            return suite
        expected = backend.ciphertext_len + (ECC_POINT_LEN if mechanism.uses_ecdh else 0)
    if suite.kek_ct_len != expected:
        raise RegistryMismatch(
            f"suite 0x{suite.suite_id:02x}: registry kek_ct_len {suite.kek_ct_len} "
            f"but the {mechanism.value} backend produces {expected} bytes")
    return suite


@functools.lru_cache(maxsize=None)
def _load(suite_id: int) -> SuiteDescriptor:
    return validate_suite(SUITES[suite_id])


def get_suite(suite) -> SuiteDescriptor:
    """Resolve a registered suite by id (or pass a descriptor through)."""
    if isinstance(suite, SuiteDescriptor):
        return suite
    if suite not in SUITES:
        raise UnknownSuite(f"suite 0x{int(suite):02x} is not registered")
    return _load(suite)
