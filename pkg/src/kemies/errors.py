"""Exception hierarchy.

Every error carries a short machine-readable ``code`` used by the command
line front end; messages never include key material or intermediate secrets.
"""


class KemiesError(Exception):
    """Base class for all library errors."""

    code = "ERROR"


class DecodeError(KemiesError, ValueError):
    code = "DECODE_ERROR"


# -- primitives ---------------------------------------------------------------

class InvalidPoint(DecodeError):
    """Bytes that do not encode a point of P-256."""

    code = "INVALID_POINT"


class InvalidPrivateKey(KemiesError, ValueError):
    code = "INVALID_PRIVATE_KEY"


class InvalidPublicKey(KemiesError, ValueError):
    code = "INVALID_PUBLIC_KEY"


class InvalidCiphertextLength(KemiesError, ValueError):
    code = "INVALID_CIPHERTEXT_LENGTH"


class MechanismUnavailable(KemiesError, RuntimeError):
    code = "MECHANISM_UNAVAILABLE"


class RegistryMismatch(KemiesError, RuntimeError):
    """A backend's declared sizes disagree with the suite registry."""

    code = "REGISTRY_MISMATCH"


class RngFailure(KemiesError, RuntimeError):
    code = "RNG_FAILURE"


class KeyFileError(KemiesError, ValueError):
    code = "BAD_KEY_FILE"


# -- symmetric layer ----------------------------------------------------------

class InvalidKeyLength(KemiesError, ValueError):
    code = "INVALID_KEY_LENGTH"


class InvalidNonceLength(KemiesError, ValueError):
    code = "INVALID_NONCE_LENGTH"


class InvalidLength(KemiesError, ValueError):
    code = "INVALID_LENGTH"


class InvalidRounds(KemiesError, ValueError):
    code = "INVALID_ROUNDS"


class AuthenticationFailure(KemiesError):
    """AEAD tag did not verify; no plaintext is released."""

    code = "AUTHENTICATION_FAILURE"


# -- schemes ------------------------------------------------------------------

class LengthMismatch(KemiesError, ValueError):
    code = "LENGTH_MISMATCH"


class MacMismatch(KemiesError):
    """The key-wrapping tag ``t`` did not verify."""

    code = "MAC_MISMATCH"


class KeyMismatch(KemiesError, ValueError):
    """Supplied keys do not fit the suite's key-establishment mechanism."""

    code = "KEY_MISMATCH"


# -- wire format --------------------------------------------------------------

class BadMagicOrVersion(DecodeError):
    code = "BAD_MAGIC_OR_VERSION"


class UnknownSuite(DecodeError, LookupError):
    code = "UNKNOWN_SUITE"


class TruncatedInput(DecodeError):
    code = "TRUNCATED_INPUT"


class TrailingBytes(DecodeError):
    code = "TRAILING_BYTES"


class UnsupportedSuite(KemiesError):
    code = "UNSUPPORTED_SUITE"


# -- benchmarking -------------------------------------------------------------

class UnsupportedPhase(KemiesError, ValueError):
    code = "UNSUPPORTED_PHASE"
