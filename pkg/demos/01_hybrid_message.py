# %% [markdown]
# Sending one V2X message to a recipient with each key-wrapping scheme.

# %%
import kemies
from kemies import spdu
from kemies.errors import MacMismatch
from kemies.primitives import DeterministicRandom, get_suite

rng = DeterministicRandom(b"demo")

# %%
for sid in kemies.CANONICAL_SUITE_IDS:
    suite = get_suite(sid)
    print(f"0x{sid:02x}  {suite.kek_mechanism.label:<42} key section {suite.kek_section_len:>5} B")

# %%
# Hybrid: P-256 and ML-KEM-512 secrets both feed the KDF
suite = get_suite(0x04)
pub, priv = kemies.generate_recipient_keys(suite, rng)
len(pub.ecc), len(pub.kem)

# %%
info = bytes.fromhex("a1b2c3d4")  # e.g. hash of the request message
msg = spdu.encrypt_message(suite, pub, info, b"emergency brake ahead", rng)
wire = spdu.encode(msg)
print(len(wire), "bytes on the wire;", spdu.encoded_size(suite, 21), "expected")

# %%
w = msg.wrapped
e, v_a = w.encrypted_kek[:-33], w.encrypted_kek[-33:]
print(f"e {len(e)} B, v_a {len(v_a)} B, c {len(w.c)} B, t {len(w.t)} B")

# %%
spdu.decrypt_message(priv, spdu.decode(wire), info)

# %%
# the shared info p is bound into k1 || k2
try:
    spdu.decrypt_message(priv, spdu.decode(wire), b"other context")
except MacMismatch as exc:
    print("rejected:", exc.code)

# %%
# Same message under Ascon-Hash256 / Ascon-AEAD128
light = get_suite(0x14)
pub2, priv2 = kemies.generate_recipient_keys(light, rng)
m2 = spdu.encrypt_message(light, pub2, info, b"emergency brake ahead", rng)
print(len(spdu.encode(m2)), "bytes (16-byte nonce instead of 12)")
spdu.decrypt_message(priv2, m2, info)
