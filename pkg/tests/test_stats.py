import csv
import io
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chaosbreak.chaos import cks_image, random_key
from chaosbreak.special import erfc, igamc, normal_cdf
from chaosbreak.stats import (
    TESTS,
    InsufficientDataError,
    approximate_entropy_test,
    bits_from_string,
    block_frequency_test,
    bytes_to_bits,
    cusum_forward_test,
    extract_blue_bits,
    frequency_test,
    run_table1_experiment,
    runs_test,
)

# Q(a, x) evaluated with mpmath at 25 significant digits.
IGAMC_REFERENCE = [
    (0.5, 0.1, 0.6547208460185770517725246),
    (0.5, 4.0, 0.004677734981047265358511389),
    (3, 10, 0.00276939571551157594362562),
    (50, 40, 0.9296649333406050455487143),
    (50, 65, 0.0235123978098086757524516),
    (512, 500.25, 0.6944652816925052183499867),
    (512, 530, 0.2115516554056543688645906),
    (1024, 1100.5, 0.009541306247863725822780726),
    (2.5, 0.001, 0.9999999904914653736653918),
    (100, 0.001, 1.0),
]
ERFC_REFERENCE = [
    (0.0, 1.0),
    (0.1, 0.8875370839817151077967249),
    (0.5, 0.4795001221869534623172533),
    (1.0, 0.1572992070502851306587794),
    (2.5, 0.0004069520174449589395642157),
    (5.0, 1.537459794428034850188343e-12),
    (10 / math.sqrt(2), 1.523970604832105213378432e-23),
]

# SP 800-22 worked examples: (test, bits, kwargs, published p-value)
WORKED_EXAMPLES = [
    (frequency_test, "1011010101", {}, 0.527089),
    (block_frequency_test, "0110011010", {"m": 3}, 0.801252),
    (runs_test, "1001101011", {}, 0.147232),
    (cusum_forward_test, "1011010111", {}, 0.411659),
    (approximate_entropy_test, "0100110101", {"m": 3}, 0.261961),
]


class TestSpecialFunctions:
    @pytest.mark.parametrize("a, x, expected", IGAMC_REFERENCE)
    def test_igamc(self, a, x, expected):
        assert igamc(a, x) == pytest.approx(expected, abs=1e-10)

    @pytest.mark.parametrize("x, expected", ERFC_REFERENCE)
    def test_erfc(self, x, expected):
        assert erfc(x) == pytest.approx(expected, abs=1e-10)

    def test_igamc_edges(self):
        assert igamc(3.0, 0.0) == 1.0
        assert igamc(3.0, math.inf) == 0.0
        with pytest.raises(ValueError):
            igamc(0.0, 1.0)
        with pytest.raises(ValueError):
            igamc(1.0, -1.0)

    def test_igamc_exponential_case(self):
        for x in (0.1, 1.0, 2.0, 7.5, 30.0):
            assert igamc(1.0, x) == pytest.approx(math.exp(-x), rel=1e-12)

    def test_normal_cdf(self):
        assert normal_cdf(0.0) == 0.5
        assert normal_cdf(1.959963984540054) == pytest.approx(0.975, abs=1e-12)


class TestWorkedExamples:
    @pytest.mark.parametrize("test, bits, kwargs, expected", WORKED_EXAMPLES, ids=lambda v: getattr(v, "__name__", None))
    def test_published_p_value(self, test, bits, kwargs, expected):
        assert test(bits_from_string(bits), **kwargs) == pytest.approx(expected, abs=1e-4)


ALTERNATING = np.tile([0, 1], 500).astype(np.uint8)
ONES = np.ones(100, np.uint8)


class TestEdgeCases:
    def test_frequency(self):
        assert frequency_test(ALTERNATING) == 1.0
        assert frequency_test(ONES) < 1e-20

    def test_block_frequency(self):
        assert block_frequency_test(ALTERNATING, m=2) == 1.0
        assert block_frequency_test(np.ones(1000, np.uint8)) < 1e-20
        with pytest.raises(InsufficientDataError):
            block_frequency_test(ONES, m=101)

    def test_runs(self):
        assert runs_test(ALTERNATING) < 1e-20
        assert runs_test(ONES) == 0.0

    def test_cusum(self):
        assert cusum_forward_test(np.tile([0, 1], 50_000).astype(np.uint8)) == pytest.approx(1.0, abs=1e-6)
        assert cusum_forward_test(ONES) < 1e-20

    def test_approximate_entropy(self):
        assert approximate_entropy_test(np.zeros(4096, np.uint8), m=3) < 1e-20
        assert approximate_entropy_test(np.tile([0, 1], 5000).astype(np.uint8), m=1) < 1e-20
        with pytest.raises(InsufficientDataError):
            approximate_entropy_test(bits_from_string("0101"), m=4)

    def test_rejects_non_bits(self):
        with pytest.raises(ValueError):
            frequency_test([0, 1, 2])
        with pytest.raises(InsufficientDataError):
            frequency_test([])

    def test_frequency_monotone_in_excess(self):
        n = 1000
        ps = [frequency_test(np.r_[np.ones(n // 2 + e), np.zeros(n // 2 - e)]) for e in range(0, 60, 5)]
        assert all(a > b for a, b in zip(ps, ps[1:]))

    @given(st.lists(st.integers(0, 1), min_size=20, max_size=400))
    def test_p_values_in_unit_interval(self, bits):
        s = np.array(bits, np.uint8)
        for name, test in TESTS.items():
            if name == "block-frequency":
                p = test(s, m=10)
            elif name == "approximate-entropy":
                p = test(s, m=2)
            else:
                p = test(s)
            assert 0.0 <= p <= 1.0


class TestExtraction:
    def test_msb_first(self):
        assert bytes_to_bits(np.array([0b10110010], np.uint8)).tolist() == [1, 0, 1, 1, 0, 0, 1, 0]

    def test_blue_channel(self, published_key):
        bits = extract_blue_bits(published_key, 2, 2)
        assert bits.size == 32
        blue = cks_image(published_key, 2, 2)[..., 2].ravel()
        assert bits.tolist() == [int(b) for v in blue for b in f"{v:08b}"]
        assert np.array_equal(bits, extract_blue_bits(published_key, 2, 2))


class TestExperiment:
    def test_shape(self):
        report = run_table1_experiment(1, 8, 8, 0)
        assert report.sequence_length == 512 and report.key_count == 1
        assert set(report.p_values) == set(TESTS)
        assert all(len(ps) == 1 for ps in report.p_values.values())

    def test_deterministic_and_worker_independent(self):
        a = run_table1_experiment(3, 32, 32, 42)
        assert a.p_values == run_table1_experiment(3, 32, 32, 42).p_values
        assert a.p_values == run_table1_experiment(3, 32, 32, 42, workers=2).p_values

    def test_sampled_keys_in_range(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            key = random_key(rng)
            assert 18 < key.K <= 2000 and 100 < key.N < 1100

    def test_csv(self):
        report = run_table1_experiment(2, 16, 16, 5)
        text = report.to_csv()
        head, _, summary = text.partition("\n\n")
        rows = list(csv.reader(io.StringIO(head)))
        assert rows[0] == ["key_index", "test", "p_value", "passed"]
        assert len(rows) == 1 + 2 * len(TESTS)
        for idx, name, p, passed in rows[1:]:
            assert float(p) == report.p_values[name][int(idx)]
            assert int(passed) == (float(p) >= 0.01)
        srows = list(csv.reader(io.StringIO(summary)))
        assert srows[0] == ["test", "pass_count", "key_count", "sequence_length", "rng_seed"]
        assert {r[0]: int(r[1]) for r in srows[1:]} == report.pass_counts
