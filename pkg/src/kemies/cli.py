"""Command line front end.

Exit status: 0 success, 2 usage, 3 cryptographic or format failure, 4 I/O.
Failures print one line to stderr: ``error: <CODE>: <message>``.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

from kemies import bench, spdu
from kemies.errors import KemiesError, KeyMismatch
from kemies.primitives import (
    CANONICAL_SUITE_IDS,
    SUITES,
    DeterministicRandom,
    KeyKind,
    Mechanism,
    decode_key,
    encode_key,
    get_suite,
    system_random,
)
from kemies.primitives.keyfile import MAGIC
from kemies.schemes import RecipientPrivateKeys, RecipientPublicKeys, generate_recipient_keys

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CRYPTO = 3
EXIT_IO = 4


def _hex_bytes(text: str) -> bytes:
    try:
        return bytes.fromhex(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex string: {text!r}") from None


def _suite_id(text: str) -> int:
    try:
        value = int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex suite id: {text!r}") from None
    if value not in SUITES:
        known = ", ".join(f"0x{s:02x}" for s in SUITES)
        raise argparse.ArgumentTypeError(f"unknown suite 0x{value:02x} (known: {known})")
    return value


def _suite_list(text: str) -> list[int]:
    return [_suite_id(part) for part in text.split(",") if part.strip()]


def _phase_list(text: str) -> list[bench.Phase]:
    try:
        return [bench.Phase(part.strip()) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rng(args):
    if args.seed is None:
        return system_random()
    suite = getattr(args, "suite", None)
    if suite is not None and get_suite(suite).kek_mechanism.kem is Mechanism.HQC_128:
        print("warning: the HQC-128 backend draws from the OS and ignores --seed",
              file=sys.stderr)
    return DeterministicRandom(args.seed)


def _read(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _write_atomic(path: str, data: bytes, mode: int = 0o644):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".kemies-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.chmod(tmp, mode)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- commands -----------------------------------------------------------------

def cmd_keygen(args) -> int:
    suite = get_suite(args.suite)
    mechanism = suite.kek_mechanism
    pub, priv = generate_recipient_keys(suite, _rng(args))

    files = []
    if mechanism.uses_ecdh:
        stem = f"{args.out}.ecc" if mechanism.is_hybrid else args.out
        files.append((f"{stem}.pub", encode_key(KeyKind.ECDH_PUBLIC, Mechanism.ECDH_P256, pub.ecc)))
        files.append((f"{stem}.priv", encode_key(KeyKind.ECDH_PRIVATE, Mechanism.ECDH_P256,
                                                 priv.ecc.to_bytes(32, "big"))))
    if mechanism.kem is not None:
        stem = f"{args.out}.kem" if mechanism.is_hybrid else args.out
        files.append((f"{stem}.pub", encode_key(KeyKind.KEM_PUBLIC, mechanism.kem, pub.kem)))
        files.append((f"{stem}.priv", encode_key(KeyKind.KEM_PRIVATE, mechanism.kem, priv.kem)))
    for path, data in files:
        _write_atomic(path, data, 0o600 if path.endswith(".priv") else 0o644)
        print(f"wrote {path} ({len(data)} bytes)")
    return EXIT_OK


def _collect_keys(suite, paths, private: bool):
    """Match key files to the suite's ECC/KEM slots, or raise KeyMismatch."""
    mechanism = suite.kek_mechanism
    ecc = kem = None
    for path in paths:
        key = decode_key(_read(path))
        if key.kind.is_private != private:
            want = "private" if private else "public"
            raise KeyMismatch(f"{path}: expected a {want} key, got {key.kind.name}")
        if key.kind.is_ecdh:
            if not mechanism.uses_ecdh or ecc is not None:
                raise KeyMismatch(f"{path}: suite 0x{suite.suite_id:02x} "
                                  f"does not take this ECC key")
            ecc = int.from_bytes(key.key, "big") if private else key.key
        else:
            if key.mechanism is not mechanism.kem or kem is not None:
                raise KeyMismatch(f"{path}: {key.mechanism.value} key does not fit "
                                  f"suite 0x{suite.suite_id:02x} ({mechanism.value})")
            kem = key.key
    if (mechanism.uses_ecdh and ecc is None) or (mechanism.kem is not None and kem is None):
        raise KeyMismatch(f"suite 0x{suite.suite_id:02x} ({mechanism.value}) needs "
                          f"{'an ECC and a KEM key' if mechanism.is_hybrid else 'one key'}")
    cls = RecipientPrivateKeys if private else RecipientPublicKeys
    return cls(ecc, kem)


def cmd_encrypt(args) -> int:
    suite = get_suite(args.suite)
    keys = _collect_keys(suite, args.pub, private=False)
    plaintext = _read(args.infile)
    message = spdu.encrypt_message(suite, keys, args.info, plaintext, _rng(args))
    _write_atomic(args.out, spdu.encode(message))
    return EXIT_OK


def cmd_decrypt(args) -> int:
    message = spdu.decode(_read(args.infile))
    if args.suite is not None and args.suite != message.suite_id:
        raise KeyMismatch(f"SPDU is for suite 0x{message.suite_id:02x}, "
                          f"not 0x{args.suite:02x}")
    keys = _collect_keys(get_suite(message.suite_id), args.priv, private=True)
    plaintext = spdu.decrypt_message(keys, message, args.info)
    _write_atomic(args.out, plaintext, 0o600)
    return EXIT_OK


def cmd_inspect(args) -> int:
    data = _read(args.infile)
    if data.startswith(MAGIC):
        key = decode_key(data)
        print(f"key file: {key.kind.name} {key.mechanism.value}, {len(key.key)} key bytes")
        return EXIT_OK
    message = spdu.decode(data)
    suite = get_suite(message.suite_id)
    w, p = message.wrapped, message.payload
    print(f"version        0x{message.version:02x}")
    print(f"suite          0x{suite.suite_id:02x} {suite.name}")
    print(f"encrypted KEK  {len(w.encrypted_kek)} bytes")
    print(f"c              {len(w.c)} bytes")
    print(f"t              {len(w.t)} bytes")
    print(f"KEK section    {w.size} bytes")
    print(f"nonce          {len(p.nonce)} bytes")
    print(f"ciphertext     {len(p.ccm_ciphertext)} bytes "
          f"({len(p.ccm_ciphertext) - 16} plaintext + 16 tag)")
    print(f"total          {len(data)} bytes")
    return EXIT_OK


def sizes_table() -> str:
    rows = [("IES", "Quantum Safe", "Size of encrypted KEK", "Size of c", "Size of t", "Total")]
    for sid in CANONICAL_SUITE_IDS:
        suite = get_suite(sid)
        rows.append((suite.kek_mechanism.label,
                     "x" if suite.kek_mechanism.quantum_safe else "-",
                     str(suite.kek_ct_len), str(suite.dek_ct_len), str(suite.tag_len),
                     str(spdu.kek_section_size(suite))))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip()
                     for r in rows)


def cmd_sizes(args) -> int:
    print(sizes_table())
    return EXIT_OK


def cmd_bench(args) -> int:
    phases = args.phases or (bench.ALL_PHASES if args.all_phases else bench.ENCRYPT_PHASES)
    suites = args.suites or list(SUITES)
    backend = None if args.kem_backend == "default" else args.kem_backend
    progress = None
    if args.csv and not args.quiet:
        def progress(row):
            print(f"  0x{row.suite_id:02x} {row.phase.value:<12} {row.mean_ms:.4f} ms",
                  file=sys.stderr)
    rows = bench.run_matrix(suites, phases, args.iterations, args.payload_len,
                            warmup=args.warmup, backend=backend, progress=progress)
    text = bench.report_csv(rows)
    if args.csv:
        _write_atomic(args.csv, text.encode())
        print(bench.format_table(rows))
        findings = bench.additivity_findings(rows) + bench.ordering_findings(rows)
        if findings:
            print()
        for f in findings:
            print(f"[{f.status}] {f.claim}: {f.detail}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kemies",
        description="ECIES, KEM-IES and Hybrid-IES key wrapping with encrypted SPDUs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate recipient key files")
    p.add_argument("--suite", type=_suite_id, required=True)
    p.add_argument("--out", required=True, help="output path prefix")
    p.add_argument("--seed", type=_hex_bytes, help="deterministic randomness (hex)")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt a file into an SPDU")
    p.add_argument("--suite", type=_suite_id, required=True)
    p.add_argument("--pub", action="append", required=True, help="recipient public key file")
    p.add_argument("--info", type=_hex_bytes, default=b"", help="shared info p (hex)")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=_hex_bytes, help="deterministic randomness (hex)")
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt an SPDU file")
    p.add_argument("--suite", type=_suite_id, help="expected suite (default: from header)")
    p.add_argument("--priv", action="append", required=True, help="recipient private key file")
    p.add_argument("--info", type=_hex_bytes, default=b"", help="shared info p (hex)")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("inspect", help="describe an SPDU or key file")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("sizes", help="print the wrapped-key size table")
    p.set_defaults(func=cmd_sizes)

    p = sub.add_parser("bench", help="run the timing matrix")
    p.add_argument("--suites", type=_suite_list, help="comma-separated hex ids (default: all)")
    p.add_argument("--phases", type=_phase_list, help="comma-separated phase names")
    p.add_argument("--all-phases", action="store_true", help="include decryption phases")
    p.add_argument("--iterations", type=int, default=100)
    p.add_argument("--payload-len", type=int, default=bench.DEFAULT_PAYLOAD_LEN)
    p.add_argument("--warmup", type=int, default=bench.DEFAULT_WARMUP)
    p.add_argument("--kem-backend", choices=["auto", "default", "kyber-py", "pqclean"],
                   default="auto", help="ML-KEM implementation to time")
    p.add_argument("--csv", help="write CSV here and print a table to stdout")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "iterations", 1) < 1:
        parser.error("--iterations must be at least 1")
    if getattr(args, "payload_len", 0) < 0 or getattr(args, "warmup", 0) < 0:
        parser.error("--payload-len and --warmup must be non-negative")
    try:
        return args.func(args)
    except KemiesError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_CRYPTO
    except OSError as exc:
        print(f"error: IO: {exc.strerror or exc}: {exc.filename or ''}".rstrip(": "),
              file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
