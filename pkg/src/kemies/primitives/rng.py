"""Randomness sources.

Any object with a ``randbytes(n) -> bytes`` method is accepted wherever an
``rng`` argument appears; :class:`random.SystemRandom` (backed by
``os.urandom``) is the default.  :class:`DeterministicRandom` replays a fixed
stream for reproducible vectors and tests.
"""

from __future__ import annotations

import hashlib
import random

from kemies.errors import RngFailure


class DeterministicRandom:
    """SHAKE-256 keyed stream; identical seeds give identical call sequences."""

    def __init__(self, seed: bytes):
        self._seed = bytes(seed)
        self._counter = 0

    def randbytes(self, n: int) -> bytes:
        block = hashlib.shake_256(self._seed + self._counter.to_bytes(8, "big"))
        self._counter += 1
        return block.digest(n)


def system_random() -> random.SystemRandom:
    return random.SystemRandom()


def draw(rng, n: int) -> bytes:
    """Pull exactly ``n`` bytes from ``rng``."""
    try:
        out = rng.randbytes(n)
    except Exception as exc:  # noqa: BLE001 - any source failure is fatal
        raise RngFailure(f"randomness source failed: {exc}") from exc
    if not isinstance(out, (bytes, bytearray)) or len(out) != n:
        raise RngFailure("randomness source returned the wrong amount of data")
    return bytes(out)
