"""A subset of the NIST SP 800-22 randomness tests and an ASCII exporter.

Implemented: frequency (monobit), block frequency, runs and the forward
cumulative sums test.  Full-suite runs use :func:`export_sts_ascii` and the
external NIST STS binary.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaincc, ndtr

from .bitstore import BitString, window

MIN_BITS = 100
DEFAULT_BLOCK_LEN = 128


class InsufficientDataError(ValueError):
    pass


def _bits(seq: BitString | np.ndarray) -> np.ndarray:
    if isinstance(seq, BitString):
        return seq.to_array()
    return np.asarray(seq, dtype=np.uint8)


def _require_length(n: int, minimum: int = MIN_BITS) -> None:
    if n < minimum:
        raise InsufficientDataError(f"sequence has {n} bits, at least {minimum} required")


def _clip(p: float) -> float:
    return float(min(1.0, max(0.0, p)))


def monobit_frequency(seq) -> float:
    bits = _bits(seq)
    n = bits.size
    _require_length(n)
    s_n = 2 * int(bits.sum()) - n
    return _clip(math.erfc(abs(s_n) / math.sqrt(2 * n)))


def block_frequency_test(seq, block_len: int = DEFAULT_BLOCK_LEN,
                         enforce_recommended: bool = True) -> float:
    """Chi-square over per-block proportions of ones.

    SP 800-22 recommends ``block_len >= 20``; ``enforce_recommended=False``
    lifts that check (the standard's own worked example uses M = 10).
    """
    bits = _bits(seq)
    n = bits.size
    if block_len < 1 or (enforce_recommended and block_len < 20):
        raise ValueError(f"block_len must be >= 20, got {block_len}")
    if n < block_len:
        raise InsufficientDataError(f"sequence of {n} bits shorter than block_len {block_len}")
    n_blocks = n // block_len
    pi = bits[: n_blocks * block_len].reshape(n_blocks, block_len).mean(axis=1)
    chi2 = 4.0 * block_len * float(((pi - 0.5) ** 2).sum())
    return _clip(gammaincc(n_blocks / 2.0, chi2 / 2.0))


def runs_test(seq) -> float:
    bits = _bits(seq)
    n = bits.size
    _require_length(n)
    pi = bits.sum() / n
    if abs(pi - 0.5) >= 2.0 / math.sqrt(n):
        return 0.0
    v_obs = 1 + int(np.count_nonzero(bits[1:] != bits[:-1]))
    num = abs(v_obs - 2.0 * n * pi * (1 - pi))
    den = 2.0 * math.sqrt(2.0 * n) * pi * (1 - pi)
    return _clip(math.erfc(num / den))


def cumulative_sums_test(seq) -> float:
    """Forward cumulative sums test."""
    bits = _bits(seq)
    n = bits.size
    _require_length(n)
    walk = np.cumsum(2 * bits.astype(np.int64) - 1)
    z = int(np.abs(walk).max())
    sqn = math.sqrt(n)
    # summation limits follow the reference implementation's integer truncation
    k = np.arange(int((-n / z + 1) / 4), int((n / z - 1) / 4) + 1)
    s1 = float((ndtr((4 * k + 1) * z / sqn) - ndtr((4 * k - 1) * z / sqn)).sum())
    k = np.arange(int((-n / z - 3) / 4), int((n / z - 1) / 4) + 1)
    s2 = float((ndtr((4 * k + 3) * z / sqn) - ndtr((4 * k + 1) * z / sqn)).sum())
    return _clip(1.0 - s1 + s2)


TESTS = {
    "monobit": monobit_frequency,
    "block_frequency": block_frequency_test,
    "runs": runs_test,
    "cumulative_sums": cumulative_sums_test,
}


@dataclass(frozen=True)
class TestRunConfig:
    __test__ = False  # not a pytest class

    bits_per_sequence: int = 8000
    n_sequences: int = 30
    alpha: float = 0.01

    def __post_init__(self):
        if self.bits_per_sequence < MIN_BITS:
            raise ValueError(f"bits_per_sequence must be >= {MIN_BITS}")
        if self.n_sequences < 1:
            raise ValueError(f"n_sequences must be >= 1, got {self.n_sequences}")
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")


@dataclass
class TestResult:
    __test__ = False

    name: str
    p_values: list[float]
    pass_proportion: float
    proportion_bound: float
    uniformity_p: float

    @property
    def passed(self) -> bool:
        return self.pass_proportion >= self.proportion_bound


@dataclass
class TestReport:
    __test__ = False

    config: TestRunConfig
    results: dict[str, TestResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def as_dict(self) -> dict:
        return {
            "bits_per_sequence": self.config.bits_per_sequence,
            "n_sequences": self.config.n_sequences,
            "alpha": self.config.alpha,
            "tests": {
                name: {
                    "p_values": [[i, p] for i, p in enumerate(r.p_values)],
                    "pass_proportion": r.pass_proportion,
                    "proportion_bound": r.proportion_bound,
                    "uniformity_p": r.uniformity_p,
                    "passed": r.passed,
                }
                for name, r in self.results.items()
            },
        }

    def summary(self) -> str:
        lines = [f"{'test':<16} {'proportion':>10} {'bound':>8} {'uniform p':>10}  result"]
        for name, r in self.results.items():
            lines.append(f"{name:<16} {r.pass_proportion:>10.4f} {r.proportion_bound:>8.4f} "
                         f"{r.uniformity_p:>10.6f}  {'PASS' if r.passed else 'FAIL'}")
        return "\n".join(lines)


def proportion_bound(alpha: float, n_sequences: int) -> float:
    p_hat = 1 - alpha
    return p_hat - 3 * math.sqrt(p_hat * (1 - p_hat) / n_sequences)


def uniformity_p_value(p_values) -> float:
    """Chi-square over ten equal-width bins of the p-value distribution."""
    p = np.asarray(p_values, dtype=float)
    counts = np.histogram(np.minimum(p, 1 - 1e-12), bins=10, range=(0.0, 1.0))[0]
    expected = p.size / 10
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    return float(gammaincc(9 / 2, chi2 / 2))


def run_battery(data: BitString, cfg: TestRunConfig, workers: int = 1) -> TestReport:
    needed = cfg.bits_per_sequence * cfg.n_sequences
    if data.length < needed:
        raise InsufficientDataError(
            f"battery needs {needed} bits ({cfg.n_sequences} x {cfg.bits_per_sequence}), "
            f"only {data.length} available"
        )
    arr = data.to_array()[:needed].reshape(cfg.n_sequences, cfg.bits_per_sequence)

    def evaluate(row):
        return {name: fn(row) for name, fn in TESTS.items()}

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_seq = list(pool.map(evaluate, arr))
    else:
        per_seq = [evaluate(row) for row in arr]

    bound = proportion_bound(cfg.alpha, cfg.n_sequences)
    report = TestReport(cfg)
    for name in TESTS:
        ps = [r[name] for r in per_seq]
        report.results[name] = TestResult(
            name=name,
            p_values=ps,
            pass_proportion=sum(p >= cfg.alpha for p in ps) / len(ps),
            proportion_bound=bound,
            uniformity_p=uniformity_p_value(ps),
        )
    return report


def split_sequences(data: BitString, bits_per_sequence: int) -> list[BitString]:
    return [window(data, i * bits_per_sequence, bits_per_sequence)
            for i in range(data.length // bits_per_sequence)]


def export_sts_ascii(data: BitString, path: str | os.PathLike) -> None:
    """Write one ASCII '0'/'1' per bit with no separators."""
    with open(path, "w", newline="") as f:
        f.write(str(data))


def read_sts_ascii(path: str | os.PathLike) -> BitString:
    with open(path) as f:
        return BitString.from_str(f.read().strip())
