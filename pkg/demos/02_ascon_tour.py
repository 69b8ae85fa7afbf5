# %%
import time

import numpy as np

from kemies import ascon
from kemies.primitives import AeadAlg, aead_seal

# %%
# The permutation on the all-zero state
s = ascon.permute(ascon.AsconState(), 12)
s

# %%
# Diffusion: flip one input bit, count flipped output bits per round count
def flipped_bits(rounds, lane=0, bit=0):
    a = ascon.permute(ascon.AsconState(), rounds).lanes
    x = [0] * 5
    x[lane] = 1 << bit
    b = ascon.permute(ascon.AsconState(x), rounds).lanes
    return int(sum(bin(int(v)).count("1") for v in np.bitwise_xor(a, b)))

[(r, flipped_bits(r)) for r in range(1, 13)]

# %%
ascon.hash256(b"").hex()

# %%
key, nonce = bytes(range(16)), bytes(range(16))
ct = ascon.aead128_seal(key, nonce, b"hdr", b"hello")
ct.hex(), ascon.aead128_open(key, nonce, b"hdr", ct)

# %%
# Payload AEAD timing against AES-128-CCM (AES-NI wins on most desktops)
def per_call_us(fn, n=2000):
    fn()
    t = np.empty(n)
    for i in range(n):
        t0 = time.perf_counter_ns()
        fn()
        t[i] = time.perf_counter_ns() - t0
    return np.median(t) / 1e3

for size in (64, 1024, 16384):
    pt = bytes(size)
    a = per_call_us(lambda: aead_seal(AeadAlg.ASCON_AEAD128, key, nonce, b"", pt))
    c = per_call_us(lambda: aead_seal(AeadAlg.AES128_CCM, key, nonce[:12], b"", pt))
    print(f"{size:>6} B  ascon {a:8.2f} us   aes-ccm {c:8.2f} us")
