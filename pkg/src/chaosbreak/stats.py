"""Randomness tests on the blue-channel keystream.

Five NIST SP 800-22 statistics are implemented: frequency (monobit), block
frequency, runs, cumulative sums (forward) and approximate entropy. Bit
sequences are ``uint8`` numpy arrays of zeros and ones.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .chaos import SecretKey, cks_image, random_key
from .special import erfc, igamc, normal_cdf

SIGNIFICANCE = 0.01
BLOCK_LENGTH = 100
TEMPLATE_LENGTH = 10
K_MAX = 2000.0


class InsufficientDataError(ValueError):
    """The sequence is too short for the requested test parameters."""


def as_bits(bits) -> np.ndarray:
    s = np.asarray(bits, dtype=np.uint8).ravel()
    if s.size < 1:
        raise InsufficientDataError("bit sequence is empty")
    if s.max() > 1:
        raise ValueError("bit sequence may contain only 0 and 1")
    return s


def bits_from_string(text: str) -> np.ndarray:
    return as_bits([int(c) for c in text if c in "01"])


def bytes_to_bits(data: np.ndarray) -> np.ndarray:
    """Serialize bytes most-significant bit first."""
    return np.unpackbits(np.asarray(data, dtype=np.uint8).ravel())


def extract_blue_bits(key: SecretKey, H: int, W: int) -> np.ndarray:
    return bytes_to_bits(cks_image(key, H, W)[..., 2])


def frequency_test(bits) -> float:
    s = as_bits(bits)
    total = 2 * int(s.sum()) - s.size
    return erfc(abs(total) / math.sqrt(s.size) / math.sqrt(2.0))


def block_frequency_test(bits, m: int = BLOCK_LENGTH) -> float:
    s = as_bits(bits)
    if m < 1 or m > s.size:
        raise InsufficientDataError(f"block length {m} does not fit a sequence of {s.size} bits")
    blocks = s.size // m
    props = s[: blocks * m].reshape(blocks, m).sum(axis=1) / m
    chi2 = 4.0 * m * float(((props - 0.5) ** 2).sum())
    return igamc(blocks / 2.0, chi2 / 2.0)


def runs_test(bits) -> float:
    """Runs test; returns 0.0 when the frequency prerequisite fails."""
    s = as_bits(bits)
    n = s.size
    pi = s.sum() / n
    if abs(pi - 0.5) >= 2.0 / math.sqrt(n):
        return 0.0
    runs = 1 + int(np.count_nonzero(np.diff(s)))
    spread = 2.0 * math.sqrt(2.0 * n) * pi * (1.0 - pi)
    return erfc(abs(runs - 2.0 * n * pi * (1.0 - pi)) / spread)


def cusum_forward_test(bits) -> float:
    s = as_bits(bits)
    n = s.size
    z = int(np.abs(np.cumsum(2 * s.astype(np.int64) - 1)).max())
    root = math.sqrt(n)
    # Summation bounds use C integer division, truncating toward zero.
    ratio = n // z

    def bound(num: int) -> int:
        return int(num / 4)

    first = sum(
        normal_cdf((4 * k + 1) * z / root) - normal_cdf((4 * k - 1) * z / root)
        for k in range(bound(-ratio + 1), bound(ratio - 1) + 1)
    )
    second = sum(
        normal_cdf((4 * k + 3) * z / root) - normal_cdf((4 * k + 1) * z / root)
        for k in range(bound(-ratio - 3), bound(ratio - 1) + 1)
    )
    return min(max(1.0 - first + second, 0.0), 1.0)


def _phi(s: np.ndarray, m: int) -> float:
    if m == 0:
        return 0.0
    n = s.size
    ext = np.concatenate([s, s[: m - 1]]).astype(np.int64)
    codes = np.zeros(n, dtype=np.int64)
    for j in range(m):
        codes = (codes << 1) | ext[j : j + n]
    counts = np.bincount(codes, minlength=1 << m)
    c = counts[counts > 0] / n
    return float((c * np.log(c)).sum())


def approximate_entropy_test(bits, m: int = TEMPLATE_LENGTH) -> float:
    s = as_bits(bits)
    if m < 1 or m + 1 > s.size:
        raise InsufficientDataError(f"template length {m} is too large for {s.size} bits")
    apen = _phi(s, m) - _phi(s, m + 1)
    chi2 = 2.0 * s.size * (math.log(2.0) - apen)
    return igamc(2.0 ** (m - 1), max(chi2, 0.0) / 2.0)


TESTS = {
    "frequency": frequency_test,
    "block-frequency": block_frequency_test,
    "cusum-forward": cusum_forward_test,
    "runs": runs_test,
    "approximate-entropy": approximate_entropy_test,
}


@dataclass
class TestReport:
    sequence_length: int
    key_count: int
    rng_seed: int
    p_values: dict[str, list[float]] = field(default_factory=dict)

    __test__ = False  # not a pytest class

    @property
    def pass_counts(self) -> dict[str, int]:
        return {name: sum(p >= SIGNIFICANCE for p in ps) for name, ps in self.p_values.items()}

    def summary(self) -> str:
        lines = [
            f"{self.key_count} sequences of {self.sequence_length} bits, seed {self.rng_seed}, "
            f"significance {SIGNIFICANCE}"
        ]
        for name, passed in self.pass_counts.items():
            lines.append(f"{name:<20} {passed:>4}/{self.key_count}")
        return "\n".join(lines)

    def to_csv(self) -> str:
        """Per-key rows, a blank line, then one summary row per test."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key_index", "test", "p_value", "passed"])
        for name, ps in self.p_values.items():
            for i, p in enumerate(ps):
                w.writerow([i, name, repr(p), int(p >= SIGNIFICANCE)])
        w.writerow([])
        w.writerow(["test", "pass_count", "key_count", "sequence_length", "rng_seed"])
        for name, passed in self.pass_counts.items():
            w.writerow([name, passed, self.key_count, self.sequence_length, self.rng_seed])
        return buf.getvalue()

    def write_csv(self, path: str | Path) -> None:
        Path(path).write_text(self.to_csv())


def _run_one(args: tuple[np.random.SeedSequence, int, int]) -> dict[str, float]:
    seq, H, W = args
    key = random_key(np.random.default_rng(seq), K_MAX)
    bits = extract_blue_bits(key, H, W)
    return {name: test(bits) for name, test in TESTS.items()}


def run_table1_experiment(
    key_count: int, H: int, W: int, rng_seed: int, workers: int = 1
) -> TestReport:
    """Apply all five tests to the blue-channel keystream of ``key_count`` random keys.

    Each key is drawn from its own sub-seed of ``rng_seed``, so the report
    is the same for any ``workers``.
    """
    if key_count < 1:
        raise ValueError(f"key_count must be >= 1, got {key_count}")
    jobs = [(seq, H, W) for seq in np.random.SeedSequence(rng_seed).spawn(key_count)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            rows = list(pool.map(_run_one, jobs))
    else:
        rows = [_run_one(job) for job in jobs]
    report = TestReport(8 * H * W, key_count, rng_seed)
    for name in TESTS:
        report.p_values[name] = [row[name] for row in rows]
    return report
