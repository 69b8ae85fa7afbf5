"""KEM interface over conformant third-party backends.

Two backends are available:

``kyber-py``
    Pure-Python FIPS 203 ML-KEM.  Key generation and encapsulation draw their
    seeds (``d``, ``z`` and ``m``) from the supplied ``rng``, so a seeded
    stream reproduces keys and ciphertexts exactly.  Default for ML-KEM-512.

``pqclean``
    The PQClean C code via the ``pqcrypto`` package, covering ML-KEM-512 and
    HQC-128.  These draw randomness from the operating system and ignore
    ``rng``.  Default for HQC-128, which has no seedable implementation.

Both ML-KEM backends interoperate byte for byte.
"""

from __future__ import annotations

import importlib
from dataclasses import dataclass, field

from kemies.errors import (
    InvalidCiphertextLength,
    InvalidPrivateKey,
    InvalidPublicKey,
    MechanismUnavailable,
)
from kemies.primitives.rng import draw
from kemies.primitives.suites import Mechanism

__all__ = [
    "KemBackend",
    "KemKeyPair",
    "available_backends",
    "get_backend",
    "kem_keygen",
    "kem_encaps",
    "kem_decaps",
]

DEFAULT_BACKEND = {
    Mechanism.ML_KEM_512: "kyber-py",
    Mechanism.HQC_128: "pqclean",
}


@dataclass(frozen=True)
class KemKeyPair:
    public_key: bytes
    private_key: bytes = field(repr=False)
    mechanism: Mechanism


class KemBackend:
    """Adapter base; subclasses fill in the three raw operations."""

    name = ""
    mechanism: Mechanism
    public_key_len: int
    private_key_len: int
    ciphertext_len: int
    shared_secret_len = 32
    deterministic = False

    def keygen(self, rng) -> tuple[bytes, bytes]:
        raise NotImplementedError

    def encaps(self, public_key: bytes, rng) -> tuple[bytes, bytes]:
        """Return ``(shared_secret, ciphertext)``."""
        raise NotImplementedError

    def decaps(self, private_key: bytes, ciphertext: bytes) -> bytes:
        raise NotImplementedError


class KyberPyMlKem512(KemBackend):
    name = "kyber-py"
    mechanism = Mechanism.ML_KEM_512
    public_key_len = 800
    private_key_len = 1632
    ciphertext_len = 768
    deterministic = True

    def __init__(self):
        try:
            from kyber_py.ml_kem import ML_KEM_512
        except ImportError as exc:
            raise MechanismUnavailable("kyber-py is not installed") from exc
        self._kem = ML_KEM_512

    def keygen(self, rng):
        d = draw(rng, 32)
        z = draw(rng, 32)
        return self._kem._keygen_internal(d, z)

    def encaps(self, public_key, rng):
        m = draw(rng, 32)
        try:
            return self._kem._encaps_internal(public_key, m)
        except ValueError as exc:
            raise InvalidPublicKey("ML-KEM encapsulation key failed validation") from exc

    def decaps(self, private_key, ciphertext):
        try:
            return self._kem.decaps(private_key, ciphertext)
        except ValueError as exc:
            raise InvalidPrivateKey("ML-KEM decapsulation key failed validation") from exc


class PqcleanKem(KemBackend):
    name = "pqclean"

    def __init__(self, mechanism: Mechanism):
        module_name = {Mechanism.ML_KEM_512: "ml_kem_512",
                       Mechanism.HQC_128: "hqc_128"}[mechanism]
        try:
            mod = importlib.import_module(f"pqcrypto.kem.{module_name}")
        except ImportError as exc:
            raise MechanismUnavailable("pqcrypto is not installed") from exc
        self._mod = mod
        self.mechanism = mechanism
        self.public_key_len = mod.PUBLIC_KEY_SIZE
        self.private_key_len = mod.SECRET_KEY_SIZE
        self.ciphertext_len = mod.CIPHERTEXT_SIZE
        self.shared_secret_len = mod.SHARED_SECRET_SIZE

    def keygen(self, rng):
        pk, sk = self._mod.keygen()
        return bytes(pk), bytes(sk)

    def encaps(self, public_key, rng):
        ct, ss = self._mod.encaps(public_key)
        return bytes(ss), bytes(ct)

    def decaps(self, private_key, ciphertext):
        return bytes(self._mod.decaps(private_key, ciphertext))


_FACTORIES = {
    ("kyber-py", Mechanism.ML_KEM_512): KyberPyMlKem512,
    ("pqclean", Mechanism.ML_KEM_512): lambda: PqcleanKem(Mechanism.ML_KEM_512),
    ("pqclean", Mechanism.HQC_128): lambda: PqcleanKem(Mechanism.HQC_128),
}
_CACHE: dict[tuple[str, Mechanism], KemBackend] = {}


def get_backend(mechanism: Mechanism, backend: str | None = None) -> KemBackend:
    if mechanism not in DEFAULT_BACKEND:
        raise MechanismUnavailable(f"{mechanism.value} is not a KEM")
    key = (backend or DEFAULT_BACKEND[mechanism], mechanism)
    if key not in _CACHE:
        if key not in _FACTORIES:
            raise MechanismUnavailable(f"no backend {key[0]!r} for {mechanism.value}")
        _CACHE[key] = _FACTORIES[key]()
    return _CACHE[key]


def available_backends(mechanism: Mechanism) -> list[str]:
    names = []
    for name, mech in _FACTORIES:
        if mech is mechanism:
            try:
                get_backend(mechanism, name)
            except MechanismUnavailable:
                continue
            names.append(name)
    return names


def kem_keygen(mechanism: Mechanism, rng, backend: str | None = None) -> KemKeyPair:
    impl = get_backend(mechanism, backend)
    pk, sk = impl.keygen(rng)
    return KemKeyPair(pk, sk, mechanism)


def kem_encaps(public_key: bytes, mechanism: Mechanism, rng,
               backend: str | None = None) -> tuple[bytes, bytes]:
    """Return ``(z2, e)``: the 32-byte shared secret and its encapsulation."""
    impl = get_backend(mechanism, backend)
    if len(public_key) != impl.public_key_len:
        raise InvalidPublicKey(f"{mechanism.value} public key must be "
                               f"{impl.public_key_len} bytes")
    return impl.encaps(bytes(public_key), rng)


def kem_decaps(private_key: bytes, e: bytes, mechanism: Mechanism,
               backend: str | None = None) -> bytes:
    """Decapsulate ``e``.

    A well-sized but corrupted ``e`` yields an unrelated secret (implicit
    rejection) rather than an error; the MAC layer catches it.
    """
    impl = get_backend(mechanism, backend)
    if len(e) != impl.ciphertext_len:
        raise InvalidCiphertextLength(f"{mechanism.value} ciphertext must be "
                                      f"{impl.ciphertext_len} bytes")
    if len(private_key) != impl.private_key_len:
        raise InvalidPrivateKey(f"{mechanism.value} private key must be "
                                f"{impl.private_key_len} bytes")
    return impl.decaps(bytes(private_key), bytes(e))
