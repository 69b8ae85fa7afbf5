import functools
from pathlib import Path

import pytest

from kemies.primitives import SUITES, DeterministicRandom
from kemies.schemes import generate_recipient_keys

VECTORS = Path(__file__).parent / "vectors"


def read_vectors(name):
    """Rows of whitespace-separated hex fields; '-' stands for empty."""
    rows = []
    for line in (VECTORS / name).read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        rows.append(tuple(b"" if f == "-" else bytes.fromhex(f) for f in line.split()))
    return rows


@functools.lru_cache(maxsize=None)
def recipient_keys(suite_id):
    return generate_recipient_keys(suite_id, DeterministicRandom(bytes([suite_id]) * 8))


@pytest.fixture
def rng():
    return DeterministicRandom(b"test-stream")


@pytest.fixture(params=sorted(SUITES), ids=lambda s: f"0x{s:02x}")
def suite_id(request):
    return request.param
