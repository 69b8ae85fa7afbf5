import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import VECTORS, read_vectors
from kemies import ascon
from kemies.errors import (
    AuthenticationFailure,
    InvalidKeyLength,
    InvalidLength,
    InvalidNonceLength,
    InvalidRounds,
)

AEAD = read_vectors("ascon_aead128.txt") + read_vectors("ascon_aead128_lwc.txt")
HASH = read_vectors("ascon_hash256.txt") + read_vectors("ascon_hash256_lwc.txt")


def _permutation_rows():
    rows = []
    for line in (VECTORS / "ascon_permutation.txt").read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        rounds, x_in, x_out = line.split()
        rows.append((int(rounds), [int(w, 16) for w in x_in.split(",")],
                     [int(w, 16) for w in x_out.split(",")]))
    return rows


@pytest.mark.parametrize("rounds,x_in,x_out", _permutation_rows())
def test_permutation_vectors(rounds, x_in, x_out):
    assert ascon.permute(ascon.AsconState(x_in), rounds).words == tuple(x_out)


@pytest.mark.parametrize("rounds", [0, 13, -1])
def test_permutation_rejects_round_counts(rounds):
    with pytest.raises(InvalidRounds):
        ascon.permute(ascon.AsconState(), rounds)


def test_state_needs_five_lanes():
    with pytest.raises(InvalidLength):
        ascon.AsconState((1, 2, 3))


@pytest.mark.parametrize("msg,expected", HASH, ids=range(len(HASH)))
def test_hash256_kat(msg, expected):
    assert ascon.hash256(msg) == expected


@pytest.mark.parametrize("key,nonce,ad,pt,ct", AEAD, ids=range(len(AEAD)))
def test_aead128_kat(key, nonce, ad, pt, ct):
    assert ascon.aead128_seal(key, nonce, ad, pt) == ct
    assert ascon.aead128_open(key, nonce, ad, ct) == pt


def test_kat_counts_cover_acceptance_minimum():
    assert len(HASH) >= 10 and len(AEAD) >= 10


def test_open_rejects_short_input():
    with pytest.raises(InvalidLength):
        ascon.aead128_open(bytes(16), bytes(16), b"", bytes(15))


@pytest.mark.parametrize("key,nonce,err", [
    (bytes(15), bytes(16), InvalidKeyLength),
    (bytes(16), bytes(12), InvalidNonceLength),
])
def test_key_and_nonce_lengths(key, nonce, err):
    with pytest.raises(err):
        ascon.aead128_seal(key, nonce, b"", b"x")
    with pytest.raises(err):
        ascon.aead128_open(key, nonce, b"", bytes(32))


@settings(max_examples=60, deadline=None)
@given(key=st.binary(min_size=16, max_size=16), nonce=st.binary(min_size=16, max_size=16),
       ad=st.binary(max_size=40), pt=st.binary(max_size=100))
def test_aead_roundtrip(key, nonce, ad, pt):
    ct = ascon.aead128_seal(key, nonce, ad, pt)
    assert len(ct) == len(pt) + ascon.TAG_LEN
    assert ascon.aead128_open(key, nonce, ad, ct) == pt


@settings(max_examples=60, deadline=None)
@given(pt=st.binary(max_size=64), ad=st.binary(max_size=16), data=st.data())
def test_any_bit_flip_is_rejected(pt, ad, data):
    key, nonce = bytes(range(16)), bytes(range(16, 32))
    ct = bytearray(ascon.aead128_seal(key, nonce, ad, pt))
    bit = data.draw(st.integers(0, 8 * len(ct) - 1))
    ct[bit // 8] ^= 1 << (bit % 8)
    with pytest.raises(AuthenticationFailure):
        ascon.aead128_open(key, nonce, ad, bytes(ct))


def test_ad_and_nonce_are_bound():
    key, nonce = bytes(16), bytes(16)
    ct = ascon.aead128_seal(key, nonce, b"ad", b"payload")
    with pytest.raises(AuthenticationFailure):
        ascon.aead128_open(key, nonce, b"ae", ct)
    with pytest.raises(AuthenticationFailure):
        ascon.aead128_open(key, b"\x01" + bytes(15), b"ad", ct)


@settings(max_examples=50, deadline=None)
@given(msg=st.binary(max_size=80), data=st.data())
def test_hash_changes_on_bit_flip(msg, data):
    if not msg:
        msg = b"\x00"
    bit = data.draw(st.integers(0, 8 * len(msg) - 1))
    flipped = bytearray(msg)
    flipped[bit // 8] ^= 1 << (bit % 8)
    assert ascon.hash256(bytes(flipped)) != ascon.hash256(msg)


@settings(max_examples=40, deadline=None)
@given(words=st.lists(st.integers(0, 2**64 - 1), min_size=5, max_size=5),
       lane=st.integers(0, 4), bit=st.integers(0, 63))
def test_permutation_is_injective_on_neighbours(words, lane, bit):
    other = list(words)
    other[lane] ^= 1 << bit
    a = ascon.permute(ascon.AsconState(words)).words
    b = ascon.permute(ascon.AsconState(other)).words
    assert a != b


def test_no_collisions_in_random_sweep():
    rng = random.Random(7)
    states = {tuple(rng.getrandbits(64) for _ in range(5)) for _ in range(10_000)}
    images = {ascon.permute(ascon.AsconState(s)).words for s in states}
    assert len(images) == len(states)
    digests = {ascon.hash256(i.to_bytes(4, "big")) for i in range(10_000)}
    assert len(digests) == 10_000


def test_uncompiled_kernels_agree():
    # same source with the JIT off must reproduce the vectors
    code = (
        "from conftest import VECTORS, read_vectors\n"
        "from kemies import ascon\n"
        "for m, d in read_vectors('ascon_hash256.txt')[:4]:\n"
        "    assert ascon.hash256(m) == d\n"
        "for k, n, a, p, c in read_vectors('ascon_aead128.txt')[:6]:\n"
        "    assert ascon.aead128_seal(k, n, a, p) == c\n"
        "    assert ascon.aead128_open(k, n, a, c) == p\n"
        "st = ascon.permute(ascon.AsconState())\n"
        "assert st.words[0] == 0x78ea7ae5cfebb108\n"
        "print('ok')\n"
    )
    env = dict(os.environ, NUMBA_DISABLE_JIT="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, cwd=os.path.dirname(__file__), timeout=300)
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "ok"
