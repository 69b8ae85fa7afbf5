import subprocess
import sys

import pytest

from kemies import spdu
from kemies.cli import main
from kemies.primitives import decode_key, get_suite


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def keygen(capsys, tmp_path, suite, name="k", seed="0011"):
    prefix = tmp_path / name
    assert run(capsys, "keygen", "--suite", suite, "--out", prefix, "--seed", seed)[0] == 0
    return prefix


def key_args(prefix, suite, kind):
    mech = get_suite(int(suite, 16)).kek_mechanism
    stems = [f"{prefix}.ecc", f"{prefix}.kem"] if mech.is_hybrid else [str(prefix)]
    args = []
    for stem in stems:
        args += [f"--{kind}", f"{stem}.{kind}"]
    return args


def test_sizes_table(capsys):
    code, out, _ = run(capsys, "sizes")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 6
    assert [line.split()[-1] for line in lines[1:]] == ["81", "816", "4481", "849", "4514"]
    assert lines[1].startswith("ECIES") and " - " in lines[1]
    assert all(" x " in line for line in lines[2:])
    assert run(capsys, "sizes")[1] == out


def test_keygen_ecies(capsys, tmp_path):
    prefix = keygen(capsys, tmp_path, "0x01")
    pub = (tmp_path / "k.pub").read_bytes()
    assert len(pub) == 6 + 1 + 1 + 4 + 33 == 45
    assert decode_key((tmp_path / "k.priv").read_bytes()).kind.is_private
    assert prefix.with_suffix(".pub").exists()


@pytest.mark.parametrize("suite", ["0x01", "0x02", "0x04"])
def test_keygen_seeded(capsys, tmp_path, suite):
    a = keygen(capsys, tmp_path, suite, "a")
    b = keygen(capsys, tmp_path, suite, "b")
    files_a = sorted(p.name[1:] for p in tmp_path.glob("a.*"))
    files_b = sorted(p.name[1:] for p in tmp_path.glob("b.*"))
    assert files_a == files_b
    for suffix in files_a:
        assert (tmp_path / f"a{suffix}").read_bytes() == (tmp_path / f"b{suffix}").read_bytes()
    assert a != b


def test_keygen_hybrid_writes_four_files(capsys, tmp_path):
    keygen(capsys, tmp_path, "0x05")
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "k.ecc.priv", "k.ecc.pub", "k.kem.priv", "k.kem.pub"]


def test_keygen_prints_no_secrets(capsys, tmp_path):
    code, out, err = run(capsys, "keygen", "--suite", "01", "--out", tmp_path / "s", "--seed", "aa")
    secret = decode_key((tmp_path / "s.priv").read_bytes()).key
    assert secret.hex() not in out + err
    assert str(int.from_bytes(secret, "big")) not in out + err


@pytest.mark.parametrize("suite", ["0x01", "0x03", "0x04", "0x13", "0x15"])
def test_encrypt_decrypt_roundtrip(capsys, tmp_path, suite):
    prefix = keygen(capsys, tmp_path, suite)
    msg = tmp_path / "msg"
    msg.write_bytes(b"basic safety message" * 5)
    out = tmp_path / "m.spdu"
    assert run(capsys, "encrypt", "--suite", suite, *key_args(prefix, suite, "pub"),
               "--info", "c0ffee", "--in", msg, "--out", out)[0] == 0
    s = get_suite(int(suite, 16))
    assert out.stat().st_size == 2 + s.kek_section_len + s.nonce_len + 4 + 100 + 16
    dec = tmp_path / "m.out"
    assert run(capsys, "decrypt", *key_args(prefix, suite, "priv"), "--info", "c0ffee",
               "--in", out, "--out", dec)[0] == 0
    assert dec.read_bytes() == msg.read_bytes()


def _encrypted(capsys, tmp_path, suite="0x02"):
    prefix = keygen(capsys, tmp_path, suite)
    msg = tmp_path / "msg"
    msg.write_bytes(b"payload")
    out = tmp_path / "m.spdu"
    run(capsys, "encrypt", "--suite", suite, *key_args(prefix, suite, "pub"),
        "--info", "01", "--in", msg, "--out", out)
    return prefix, out


def test_wrong_info_fails_without_output(capsys, tmp_path):
    prefix, spdu_path = _encrypted(capsys, tmp_path)
    dec = tmp_path / "never"
    code, _, err = run(capsys, "decrypt", "--priv", f"{prefix}.priv", "--info", "02",
                       "--in", spdu_path, "--out", dec)
    assert code == 3
    assert err.startswith("error: MAC_MISMATCH:") and err.count("\n") == 1
    assert not dec.exists()


@pytest.mark.parametrize("offset", [2, 300, -1])
def test_corrupted_spdu_fails_without_output(capsys, tmp_path, offset):
    prefix, spdu_path = _encrypted(capsys, tmp_path)
    data = bytearray(spdu_path.read_bytes())
    data[offset] ^= 0x40
    spdu_path.write_bytes(bytes(data))
    dec = tmp_path / "never"
    code, _, err = run(capsys, "decrypt", "--priv", f"{prefix}.priv", "--info", "01",
                       "--in", spdu_path, "--out", dec)
    assert code == 3 and err.startswith("error: ")
    assert not dec.exists()


def test_truncated_spdu(capsys, tmp_path):
    prefix, spdu_path = _encrypted(capsys, tmp_path)
    spdu_path.write_bytes(spdu_path.read_bytes()[:50])
    code, _, err = run(capsys, "decrypt", "--priv", f"{prefix}.priv", "--in", spdu_path,
                       "--out", tmp_path / "x")
    assert code == 3 and "TRUNCATED_INPUT" in err


def test_hqc_suite_with_ml_kem_key(capsys, tmp_path):
    prefix = keygen(capsys, tmp_path, "0x02")
    msg = tmp_path / "msg"
    msg.write_bytes(b"x")
    code, _, err = run(capsys, "encrypt", "--suite", "0x03", "--pub", f"{prefix}.pub",
                       "--in", msg, "--out", tmp_path / "o")
    assert code == 3 and err.startswith("error: KEY_MISMATCH:")


def test_private_key_where_public_expected(capsys, tmp_path):
    prefix = keygen(capsys, tmp_path, "0x01")
    msg = tmp_path / "msg"
    msg.write_bytes(b"x")
    code, _, err = run(capsys, "encrypt", "--suite", "01", "--pub", f"{prefix}.priv",
                       "--in", msg, "--out", tmp_path / "o")
    assert code == 3 and "KEY_MISMATCH" in err


def test_hybrid_needs_both_keys(capsys, tmp_path):
    prefix = keygen(capsys, tmp_path, "0x04")
    msg = tmp_path / "msg"
    msg.write_bytes(b"x")
    code, _, err = run(capsys, "encrypt", "--suite", "04", "--pub", f"{prefix}.ecc.pub",
                       "--in", msg, "--out", tmp_path / "o")
    assert code == 3 and "KEY_MISMATCH" in err


def test_missing_file_is_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "inspect", "--in", tmp_path / "absent")
    assert code == 4 and err.startswith("error: IO:")


@pytest.mark.parametrize("argv", [
    [],
    ["keygen", "--suite", "0x06", "--out", "x"],
    ["keygen", "--suite", "zz", "--out", "x"],
    ["encrypt", "--suite", "01", "--pub", "a", "--info", "xyz", "--in", "a", "--out", "b"],
    ["bench", "--iterations", "0"],
    ["bench", "--phases", "Nope"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    capsys.readouterr()


def test_inspect(capsys, tmp_path):
    prefix, spdu_path = _encrypted(capsys, tmp_path)
    code, out, _ = run(capsys, "inspect", "--in", spdu_path)
    assert code == 0
    assert "0x02" in out and "768 bytes" in out and "816 bytes" in out
    code, out, _ = run(capsys, "inspect", "--in", f"{prefix}.pub")
    assert code == 0 and "KEM_PUBLIC" in out


def test_bench_csv_to_stdout(capsys):
    code, out, _ = run(capsys, "bench", "--suites", "0x01", "--iterations", "1", "--warmup", "0")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "suite,phase,iterations,payload_len,mean_ms,median_ms,p95_ms,stddev_ms"
    assert len(lines) == 5
    assert all(line.startswith("0x01,") and len(line.split(",")) == 8 for line in lines[1:])


def test_bench_csv_file_and_table(capsys, tmp_path):
    path = tmp_path / "b.csv"
    code, out, _ = run(capsys, "bench", "--suites", "0x01,0x11", "--all-phases",
                       "--iterations", "2", "--warmup", "0", "--payload-len", "64",
                       "--csv", path, "--quiet")
    assert code == 0
    rows = path.read_text().strip().splitlines()
    assert len(rows) == 1 + 2 * 7
    assert all(",64," in r for r in rows[1:])
    assert "DataDecrypt" in out and "Ascon-AEAD128" in out


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "kemies", "sizes"], capture_output=True,
                         text=True, timeout=120)
    assert out.returncode == 0 and "4514" in out.stdout


def test_decrypt_suite_flag_must_match(capsys, tmp_path):
    prefix, spdu_path = _encrypted(capsys, tmp_path)
    code, _, err = run(capsys, "decrypt", "--suite", "0x12", "--priv", f"{prefix}.priv",
                       "--info", "01", "--in", spdu_path, "--out", tmp_path / "x")
    assert code == 3 and "KEY_MISMATCH" in err
    assert spdu.decode(spdu_path.read_bytes()).suite_id == 0x02
