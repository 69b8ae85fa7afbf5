import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kemies import bench
from kemies.bench import ALL_PHASES, ENCRYPT_PHASES, Phase, PhaseStats
from kemies.errors import UnsupportedPhase
from kemies.primitives import DeterministicRandom, get_suite


class StepClock:
    """Advances a fixed number of nanoseconds per read; counts reads."""

    def __init__(self, step_ns=500_000):
        self.step = step_ns
        self.now = 0
        self.reads = 0

    def __call__(self):
        self.reads += 1
        self.now += self.step
        return self.now


def test_measure_counts_and_fake_clock():
    calls = []
    clock = StepClock()
    samples = bench.measure(lambda: calls.append(1), 25, clock=clock, warmup=4)
    assert len(calls) == 25 + 4
    assert clock.reads == 2 * 25
    assert np.allclose(samples, 0.5)


def test_measure_requires_iterations():
    with pytest.raises(ValueError):
        bench.measure(lambda: None, 0)


def test_measure_phase_with_fake_clock():
    clock = StepClock(1_000_000)
    row = bench.measure_phase(0x01, Phase.DEK_ENCRYPT, 7, rng=DeterministicRandom(b"b"),
                              clock=clock, warmup=0)
    assert (row.mean_ms, row.median_ms, row.p95_ms, row.stddev_ms) == (1.0, 1.0, 1.0, 0.0)
    assert row.iterations == 7 and clock.reads == 14


def test_summarize_matches_numpy():
    x = [0.5, 1.5, 2.0, 9.0, 3.25]
    s = bench.summarize(x, 0x02, Phase.KEYGEN, 64)
    assert s.mean_ms == pytest.approx(np.mean(x))
    assert s.median_ms == pytest.approx(2.0)
    assert s.p95_ms == pytest.approx(np.percentile(x, 95))
    assert s.stddev_ms == pytest.approx(np.std(x))
    assert (s.suite_id, s.phase, s.iterations, s.payload_len) == (0x02, Phase.KEYGEN, 5, 64)


def test_matrix_shape_and_order():
    suites = [0x01, 0x02, 0x03, 0x04, 0x05]
    rows = bench.run_matrix(suites, ENCRYPT_PHASES, 2, 32, DeterministicRandom(b"m"),
                            clock=StepClock(), warmup=0)
    assert len(rows) == 20
    assert [(r.suite_id, r.phase) for r in rows] == list(itertools.product(suites, ENCRYPT_PHASES))
    assert all(r.payload_len == 32 and r.iterations == 2 for r in rows)


@pytest.mark.parametrize("phase", ALL_PHASES, ids=lambda p: p.value)
def test_every_phase_runs(suite_id, phase):
    op = bench.prepare_phase(get_suite(suite_id), phase, 16, DeterministicRandom(b"p"))
    op()


def test_unknown_phase():
    with pytest.raises(UnsupportedPhase):
        bench.prepare_phase(get_suite(0x01), "KeyGen", 16, DeterministicRandom(b""))


def test_csv_empty_and_single():
    assert bench.report_csv([]) == bench.CSV_HEADER + "\n"
    row = PhaseStats(0x14, Phase.DATA_ENCRYPT, 3, 1024, 1.0, 2.0, 3.0, 0.5)
    lines = bench.report_csv([row]).splitlines()
    assert len(lines) == 2
    assert lines[1] == "0x14,DataEncrypt,3,1024,1.000000,2.000000,3.000000,0.500000"
    assert all(len(line.split(",")) == 8 for line in lines)


finite = st.floats(0, 1e4, allow_nan=False)


@settings(max_examples=60)
@given(rows=st.lists(st.tuples(st.sampled_from([1, 2, 3, 4, 5, 17, 18]),
                               st.sampled_from(list(Phase)), st.integers(1, 10**6),
                               st.integers(0, 2**20), finite, finite, finite, finite),
                     max_size=8))
def test_csv_roundtrip(rows):
    stats = [PhaseStats(*r) for r in rows]
    parsed = bench.parse_csv(bench.report_csv(stats))
    assert len(parsed) == len(stats)
    for a, b in zip(parsed, stats):
        assert (a.suite_id, a.phase, a.iterations, a.payload_len) == \
            (b.suite_id, b.phase, b.iterations, b.payload_len)
        for field in ("mean_ms", "median_ms", "p95_ms", "stddev_ms"):
            assert getattr(a, field) == pytest.approx(getattr(b, field), abs=5e-7)
    assert bench.report_csv(parsed) == bench.report_csv(stats)


def test_parse_csv_rejects_header():
    with pytest.raises(ValueError):
        bench.parse_csv("a,b\n")


def _stats(means):
    return [PhaseStats(sid, phase, 1, 0, m, m, m, 0.0) for (sid, phase), m in means.items()]


def test_additivity_pass_and_warn():
    kek = Phase.KEK_ENCRYPT
    rows = _stats({(1, kek): 1.0, (2, kek): 0.5, (3, kek): 3.0, (4, kek): 1.6, (5, kek): 8.0})
    findings = {f.claim.split()[1]: f for f in bench.additivity_findings(rows)}
    assert findings["0x04"].status == "pass"
    assert findings["0x05"].status == "warn"
    assert "ratio 2.000" in findings["0x05"].detail


def test_additivity_missing_components():
    rows = _stats({(4, Phase.KEK_ENCRYPT): 1.0})
    [finding] = bench.additivity_findings(rows)
    assert finding.status == "n/a"


def test_ordering_findings():
    kg, kek, de = Phase.KEYGEN, Phase.KEK_ENCRYPT, Phase.DATA_ENCRYPT
    rows = _stats({(1, kg): 0.2, (2, kg): 0.1, (3, kg): 0.9,
                   (1, kek): 0.1, (2, kek): 0.2, (3, kek): 0.9,
                   (1, de): 0.02, (0x11, de): 0.01})
    got = {f.claim: f.status for f in bench.ordering_findings(rows)}
    assert got["KeyGen: ML-KEM-512 fastest"] == "pass"
    assert got["KekEncrypt: ML-KEM-512 fastest"] == "warn"
    assert got["KekEncrypt: HQC-128 slowest"] == "pass"
    assert got["DataEncrypt: Ascon-AEAD128 (0x11) faster than AES-128-CCM (0x01)"] == "pass"


def test_format_table_lists_rows():
    rows = _stats({(1, Phase.KEYGEN): 0.25})
    text = bench.format_table(rows)
    assert "0x01" in text and "KeyGen" in text and "0.2500" in text
