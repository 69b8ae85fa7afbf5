"""Benchmark harness for the four encryption phases and their inverses.

Phases, per suite:

KeyGen
    recipient long-term key generation (ECC, KEM, or both)
KekEncrypt / KekDecrypt
    establishing the key-encryption secret: ephemeral ECDH, KEM
    encapsulation, or both / recomputing it on the recipient side
DekEncrypt / DekDecrypt
    KDF, XOR wrap and MAC over a fixed secret / the tag-checked inverse
DataEncrypt / DataDecrypt
    payload AEAD under the DEK

Only the phase's own operation is timed; its inputs are prepared once
beforehand.  Absolute times depend on the machine and are reported, never
asserted.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence

import numpy as np

from kemies.errors import MechanismUnavailable, UnsupportedPhase
from kemies.primitives import (
    SuiteDescriptor,
    aead_open,
    aead_seal,
    available_backends,
    ecdh_keygen,
    ecdh_shared_x,
    get_suite,
    kem_decaps,
    kem_encaps,
    system_random,
)
from kemies.primitives.suites import DEK_LEN, SHARED_SECRET_LEN, Mechanism
from kemies.schemes import WrappedDek, generate_recipient_keys, open_dek, seal_dek

__all__ = [
    "Phase",
    "PhaseStats",
    "Finding",
    "ENCRYPT_PHASES",
    "DECRYPT_PHASES",
    "ALL_PHASES",
    "CSV_HEADER",
    "measure",
    "summarize",
    "prepare_phase",
    "measure_phase",
    "run_matrix",
    "report_csv",
    "parse_csv",
    "format_table",
    "additivity_findings",
    "ordering_findings",
]

DEFAULT_PAYLOAD_LEN = 1024
DEFAULT_WARMUP = 10
CSV_HEADER = "suite,phase,iterations,payload_len,mean_ms,median_ms,p95_ms,stddev_ms"


class Phase(Enum):
    KEYGEN = "KeyGen"
    KEK_ENCRYPT = "KekEncrypt"
    KEK_DECRYPT = "KekDecrypt"
    DEK_ENCRYPT = "DekEncrypt"
    DEK_DECRYPT = "DekDecrypt"
    DATA_ENCRYPT = "DataEncrypt"
    DATA_DECRYPT = "DataDecrypt"


ENCRYPT_PHASES = (Phase.KEYGEN, Phase.KEK_ENCRYPT, Phase.DEK_ENCRYPT, Phase.DATA_ENCRYPT)
DECRYPT_PHASES = (Phase.KEK_DECRYPT, Phase.DEK_DECRYPT, Phase.DATA_DECRYPT)
ALL_PHASES = tuple(Phase)


@dataclass(frozen=True)
class PhaseStats:
    suite_id: int
    phase: Phase
    iterations: int
    payload_len: int
    mean_ms: float
    median_ms: float
    p95_ms: float
    stddev_ms: float


@dataclass(frozen=True)
class Finding:
    claim: str
    status: str  # "pass", "warn" or "n/a"
    detail: str


def measure(op: Callable[[], object], iterations: int, *,
            clock: Callable[[], int] = time.perf_counter_ns,
            warmup: int = DEFAULT_WARMUP) -> np.ndarray:
    """Time ``iterations`` calls of ``op``; returns per-call milliseconds.

    ``clock`` returns nanoseconds and is read exactly twice per timed call.
    """
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    for _ in range(warmup):
        op()
    samples = np.empty(iterations, dtype=np.float64)
    for i in range(iterations):
        start = clock()
        op()
        samples[i] = clock() - start
    return samples / 1e6


def summarize(samples_ms: Sequence[float], suite_id: int, phase: Phase,
              payload_len: int) -> PhaseStats:
    x = np.asarray(samples_ms, dtype=np.float64)
    return PhaseStats(
        suite_id=suite_id,
        phase=phase,
        iterations=int(x.size),
        payload_len=payload_len,
        mean_ms=float(x.mean()),
        median_ms=float(np.median(x)),
        p95_ms=float(np.percentile(x, 95)),
        stddev_ms=float(x.std()),
    )


def _default_backend() -> str | None:
    # compiled ML-KEM keeps the comparison with OpenSSL ECDH and C HQC fair
    try:
        return "pqclean" if "pqclean" in available_backends(Mechanism.ML_KEM_512) else None
    except MechanismUnavailable:
        return None


def _kem_backend(mechanism: Mechanism, backend: str | None) -> str | None:
    return backend if mechanism is Mechanism.ML_KEM_512 else None


def prepare_phase(suite: SuiteDescriptor, phase: Phase, payload_len: int, rng,
                  backend: str | None = None) -> Callable[[], object]:
    """Do the untimed setup for ``phase`` and return the operation to time."""
    if not isinstance(phase, Phase):
        raise UnsupportedPhase(f"unknown phase {phase!r}")
    mechanism = suite.kek_mechanism
    kem = mechanism.kem
    kem_backend = _kem_backend(kem, backend) if kem else None

    if phase is Phase.KEYGEN:
        return lambda: generate_recipient_keys(suite, rng, kem_backend)

    if phase in (Phase.KEK_ENCRYPT, Phase.KEK_DECRYPT):
        pub, priv = generate_recipient_keys(suite, rng, kem_backend)
        if phase is Phase.KEK_ENCRYPT:
            def kek_encrypt():
                z1 = z2 = b""
                if mechanism.uses_ecdh:
                    eph = ecdh_keygen(rng)
                    z1 = ecdh_shared_x(eph.private_scalar, pub.ecc)
                if kem is not None:
                    z2, _ = kem_encaps(pub.kem, kem, rng, kem_backend)
                return z1 + z2
            return kek_encrypt

        v_a = ecdh_keygen(rng).public_point if mechanism.uses_ecdh else None
        e = kem_encaps(pub.kem, kem, rng, kem_backend)[1] if kem is not None else None

        def kek_decrypt():
            z1 = z2 = b""
            if v_a is not None:
                z1 = ecdh_shared_x(priv.ecc, v_a)
            if e is not None:
                z2 = kem_decaps(priv.kem, e, kem, kem_backend)
            return z1 + z2
        return kek_decrypt

    if phase in (Phase.DEK_ENCRYPT, Phase.DEK_DECRYPT):
        width = SHARED_SECRET_LEN * (2 if mechanism.is_hybrid else 1)
        z = rng.randbytes(width)
        p = rng.randbytes(32)
        dek = rng.randbytes(DEK_LEN)
        if phase is Phase.DEK_ENCRYPT:
            return lambda: seal_dek(suite, z, p, dek)
        c, t = seal_dek(suite, z, p, dek)
        wrapped = WrappedDek(b"", c, t, suite.suite_id)
        return lambda: open_dek(suite, z, p, wrapped)

    key = rng.randbytes(DEK_LEN)
    nonce = rng.randbytes(suite.nonce_len)
    plaintext = rng.randbytes(payload_len)
    if phase is Phase.DATA_ENCRYPT:
        return lambda: aead_seal(suite.aead_alg, key, nonce, b"", plaintext)
    ciphertext = aead_seal(suite.aead_alg, key, nonce, b"", plaintext)
    return lambda: aead_open(suite.aead_alg, key, nonce, b"", ciphertext)


def measure_phase(suite, phase: Phase, iterations: int,
                  payload_len: int = DEFAULT_PAYLOAD_LEN, rng=None, *,
                  clock: Callable[[], int] = time.perf_counter_ns,
                  warmup: int = DEFAULT_WARMUP, backend: str | None = "auto") -> PhaseStats:
    """Time one phase of one suite.

    ``backend`` picks the ML-KEM implementation; ``"auto"`` prefers the
    compiled PQClean code when installed.
    """
    suite = get_suite(suite)
    rng = rng or system_random()
    if backend == "auto":
        backend = _default_backend()
    op = prepare_phase(suite, phase, payload_len, rng, backend)
    samples = measure(op, iterations, clock=clock, warmup=warmup)
    return summarize(samples, suite.suite_id, phase, payload_len)


def run_matrix(suites: Iterable, phases: Iterable[Phase] = ENCRYPT_PHASES,
               iterations: int = 100, payload_len: int = DEFAULT_PAYLOAD_LEN, rng=None, *,
               clock: Callable[[], int] = time.perf_counter_ns,
               warmup: int = DEFAULT_WARMUP, backend: str | None = "auto",
               progress: Callable[[PhaseStats], None] | None = None) -> list[PhaseStats]:
    """One row per (suite, phase), suites outermost, measured sequentially."""
    suites = [get_suite(s) for s in suites]
    phases = list(phases)
    if backend == "auto":
        backend = _default_backend()
    rows = []
    for suite in suites:
        for phase in phases:
            row = measure_phase(suite, phase, iterations, payload_len, rng,
                                clock=clock, warmup=warmup, backend=backend)
            rows.append(row)
            if progress is not None:
                progress(row)
    return rows


def report_csv(stats: Iterable[PhaseStats]) -> str:
    lines = [CSV_HEADER]
    for s in stats:
        lines.append(f"0x{s.suite_id:02x},{s.phase.value},{s.iterations},{s.payload_len},"
                     f"{s.mean_ms:.6f},{s.median_ms:.6f},{s.p95_ms:.6f},{s.stddev_ms:.6f}")
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[PhaseStats]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != CSV_HEADER.split(","):
        raise ValueError("unexpected CSV header")
    return [
        PhaseStats(
            suite_id=int(row["suite"], 16),
            phase=Phase(row["phase"]),
            iterations=int(row["iterations"]),
            payload_len=int(row["payload_len"]),
            mean_ms=float(row["mean_ms"]),
            median_ms=float(row["median_ms"]),
            p95_ms=float(row["p95_ms"]),
            stddev_ms=float(row["stddev_ms"]),
        )
        for row in reader
    ]


def format_table(stats: Iterable[PhaseStats]) -> str:
    rows = [("suite", "scheme", "phase", "n", "mean ms", "median ms", "p95 ms")]
    for s in stats:
        suite = get_suite(s.suite_id)
        rows.append((f"0x{s.suite_id:02x}", suite.name, s.phase.value, str(s.iterations),
                     f"{s.mean_ms:.4f}", f"{s.median_ms:.4f}", f"{s.p95_ms:.4f}"))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths)) for r in rows)


# -- findings -----------------------------------------------------------------

def _index(stats):
    return {(s.suite_id, s.phase): s for s in stats}


def additivity_findings(stats: Iterable[PhaseStats], tolerance: float = 0.35,
                        phase: Phase = Phase.KEK_ENCRYPT) -> list[Finding]:
    """Hybrid time versus the sum of its ECIES and KEM-IES parts.

    Each hybrid suite is paired with the ECIES and KEM-IES suites that share
    its hash and AEAD.  Reports the ratio hybrid / (ecies + kem).
    """
    idx = _index(stats)
    by_id = {s.suite_id: get_suite(s.suite_id) for s in stats}
    findings = []
    for sid, suite in sorted(by_id.items()):
        mech = suite.kek_mechanism
        if not mech.is_hybrid or (sid, phase) not in idx:
            continue
        family = sid & 0xF0
        ecies_id = next((i for i, s in by_id.items() if i & 0xF0 == family
                         and s.kek_mechanism is Mechanism.ECDH_P256), None)
        kem_id = next((i for i, s in by_id.items() if i & 0xF0 == family
                       and s.kek_mechanism is mech.kem), None)
        claim = f"{phase.value} 0x{sid:02x} ~ ECIES + KEM-IES"
        if ecies_id is None or kem_id is None or (ecies_id, phase) not in idx \
                or (kem_id, phase) not in idx:
            findings.append(Finding(claim, "n/a", "component suites not measured"))
            continue
        parts = idx[ecies_id, phase].mean_ms + idx[kem_id, phase].mean_ms
        ratio = idx[sid, phase].mean_ms / parts if parts > 0 else float("inf")
        status = "pass" if abs(ratio - 1.0) <= tolerance else "warn"
        findings.append(Finding(
            claim, status,
            f"hybrid {idx[sid, phase].mean_ms:.4f} ms vs 0x{ecies_id:02x}+0x{kem_id:02x} "
            f"{parts:.4f} ms, ratio {ratio:.3f} (tolerance +/-{tolerance:.0%})"))
    return findings


def _rank(idx, phase, ids):
    present = [i for i in ids if (i, phase) in idx]
    return sorted(present, key=lambda i: idx[i, phase].mean_ms)


def ordering_findings(stats: Iterable[PhaseStats]) -> list[Finding]:
    """Relative-speed observations, qualified by the environment.

    Mechanisms are compared within the SHA-256/AES family (suites 0x01-0x03):
    ML-KEM-512 fastest and HQC-128 slowest at key generation and KEK
    encryption.  Payload AEAD compares each Ascon suite with its AES twin.
    """
    stats = list(stats)
    idx = _index(stats)
    findings = []
    ecdh, mlkem, hqc = 0x01, 0x02, 0x03
    for phase in (Phase.KEYGEN, Phase.KEK_ENCRYPT):
        order = _rank(idx, phase, (ecdh, mlkem, hqc))
        if len(order) < 3:
            findings.append(Finding(f"{phase.value}: ML-KEM fastest, HQC slowest", "n/a",
                                    "needs suites 0x01, 0x02 and 0x03"))
            continue
        ok_fast = order[0] == mlkem
        ok_slow = order[-1] == hqc
        detail = " < ".join(f"{get_suite(i).kek_mechanism.value} "
                            f"{idx[i, phase].mean_ms:.4f} ms" for i in order)
        findings.append(Finding(f"{phase.value}: ML-KEM-512 fastest",
                                "pass" if ok_fast else "warn", detail))
        findings.append(Finding(f"{phase.value}: HQC-128 slowest",
                                "pass" if ok_slow else "warn", detail))

    pairs = [(sid, sid & 0x0F) for sid in sorted({s.suite_id for s in stats})
             if sid & 0xF0 == 0x10]
    for ascon_id, aes_id in pairs:
        phase = Phase.DATA_ENCRYPT
        if (ascon_id, phase) not in idx or (aes_id, phase) not in idx:
            continue
        a, b = idx[ascon_id, phase].mean_ms, idx[aes_id, phase].mean_ms
        findings.append(Finding(
            f"DataEncrypt: Ascon-AEAD128 (0x{ascon_id:02x}) faster than AES-128-CCM "
            f"(0x{aes_id:02x})",
            "pass" if a < b else "warn",
            f"{a:.4f} ms vs {b:.4f} ms; expected only without AES hardware instructions"))
    return findings
