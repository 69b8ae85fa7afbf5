"""ECDH on NIST P-256 with compressed-point public keys."""

from __future__ import annotations

from dataclasses import dataclass, field

from cryptography.hazmat.primitives.asymmetric import ec
from cryptography.hazmat.primitives.serialization import Encoding, PublicFormat

from kemies.errors import InvalidPoint, InvalidPrivateKey
from kemies.primitives.rng import draw

CURVE = ec.SECP256R1()
ORDER = 0xFFFFFFFF00000000FFFFFFFFFFFFFFFFBCE6FAADA7179E84F3B9CAC2FC632551
SCALAR_LEN = 32
POINT_LEN = 33


@dataclass(frozen=True)
class EcdhKeyPair:
    private_scalar: int = field(repr=False)
    public_point: bytes

    @property
    def private_bytes(self) -> bytes:
        return self.private_scalar.to_bytes(SCALAR_LEN, "big")


def _private_key(scalar: int) -> ec.EllipticCurvePrivateKey:
    if not 1 <= scalar < ORDER:
        raise InvalidPrivateKey("P-256 scalar out of range")
    return ec.derive_private_key(scalar, CURVE)


def _compress(public_key: ec.EllipticCurvePublicKey) -> bytes:
    return public_key.public_bytes(Encoding.X962, PublicFormat.CompressedPoint)


def ecdh_keygen(rng) -> EcdhKeyPair:
    # rejection sampling keeps the scalar uniform on [1, n-1]
    while True:
        scalar = int.from_bytes(draw(rng, SCALAR_LEN), "big")
        if 1 <= scalar < ORDER:
            break
    key = ec.derive_private_key(scalar, CURVE)
    return EcdhKeyPair(scalar, _compress(key.public_key()))


def public_from_private(private_scalar: int) -> bytes:
    return _compress(_private_key(private_scalar).public_key())


def decode_point(encoded: bytes) -> ec.EllipticCurvePublicKey:
    """Parse a compressed point, rejecting malformed, off-curve and identity."""
    if len(encoded) != POINT_LEN or encoded[0] not in (0x02, 0x03):
        raise InvalidPoint("expected a 33-byte compressed P-256 point")
    try:
        return ec.EllipticCurvePublicKey.from_encoded_point(CURVE, bytes(encoded))
    except ValueError as exc:
        raise InvalidPoint("point is not on P-256") from exc


def ecdh_shared_x(private_scalar: int, peer_public: bytes) -> bytes:
    """Big-endian x-coordinate of ``private_scalar * peer_public``."""
    peer = decode_point(peer_public)
    return _private_key(private_scalar).exchange(ec.ECDH(), peer)
