"""Binary key files.

Layout: ``b"PQIES\\x01" || kind (1) || mechanism (1) || length (4, BE) || key``.
ECDH private keys are stored as the 32-byte big-endian scalar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum

from kemies.errors import KeyFileError
from kemies.primitives.suites import Mechanism

MAGIC = b"PQIES\x01"
HEADER_LEN = len(MAGIC) + 1 + 1 + 4


class KeyKind(IntEnum):
    ECDH_PUBLIC = 0x01
    ECDH_PRIVATE = 0x02
    KEM_PUBLIC = 0x03
    KEM_PRIVATE = 0x04

    @property
    def is_private(self) -> bool:
        return self in (KeyKind.ECDH_PRIVATE, KeyKind.KEM_PRIVATE)

    @property
    def is_ecdh(self) -> bool:
        return self in (KeyKind.ECDH_PUBLIC, KeyKind.ECDH_PRIVATE)


MECHANISM_CODES = {
    Mechanism.ECDH_P256: 0x01,
    Mechanism.ML_KEM_512: 0x02,
    Mechanism.HQC_128: 0x03,
}
_MECHANISMS = {code: mech for mech, code in MECHANISM_CODES.items()}


@dataclass(frozen=True)
class KeyFile:
    kind: KeyKind
    mechanism: Mechanism
    key: bytes = field(repr=False)


def encode_key(kind: KeyKind, mechanism: Mechanism, key: bytes) -> bytes:
    if mechanism not in MECHANISM_CODES:
        raise KeyFileError(f"{mechanism.value} keys are stored as separate ECC and KEM files")
    if kind.is_ecdh != (mechanism is Mechanism.ECDH_P256):
        raise KeyFileError(f"key kind {kind.name} does not match {mechanism.value}")
    return (MAGIC + bytes([kind, MECHANISM_CODES[mechanism]])
            + len(key).to_bytes(4, "big") + bytes(key))


def decode_key(data: bytes) -> KeyFile:
    if len(data) < HEADER_LEN or not data.startswith(MAGIC):
        raise KeyFileError("not a key file (bad magic)")
    try:
        kind = KeyKind(data[6])
    except ValueError:
        raise KeyFileError(f"unknown key kind 0x{data[6]:02x}") from None
    if data[7] not in _MECHANISMS:
        raise KeyFileError(f"unknown mechanism 0x{data[7]:02x}")
    mechanism = _MECHANISMS[data[7]]
    if kind.is_ecdh != (mechanism is Mechanism.ECDH_P256):
        raise KeyFileError(f"key kind {kind.name} does not match {mechanism.value}")
    length = int.from_bytes(data[8:12], "big")
    if len(data) - HEADER_LEN != length:
        raise KeyFileError("key length field does not match file size")
    return KeyFile(kind, mechanism, bytes(data[HEADER_LEN:]))
