"""Min-entropy estimation and leftover-hash output sizing."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .bitstore import BitString


class InsufficientEntropyError(ValueError):
    pass


@dataclass(frozen=True)
class SymbolHistogram:
    counts: tuple[int, ...]
    total: int

    def __post_init__(self):
        if len(self.counts) != 256:
            raise ValueError(f"expected 256 symbol counts, got {len(self.counts)}")
        if sum(self.counts) != self.total:
            raise ValueError("counts do not sum to total")

    @classmethod
    def from_counts(cls, counts) -> "SymbolHistogram":
        counts = tuple(int(c) for c in counts)
        return cls(counts, sum(counts))

    @classmethod
    def from_bytes(cls, data: bytes) -> "SymbolHistogram":
        counts = np.bincount(np.frombuffer(data, dtype=np.uint8), minlength=256)
        return cls.from_counts(counts)

    @classmethod
    def from_bitstring(cls, raw: BitString) -> "SymbolHistogram":
        if raw.length % 8:
            raise ValueError(f"raw length {raw.length} is not a whole number of 8-bit samples")
        return cls.from_bytes(raw.to_bytes())

    def merge(self, other: "SymbolHistogram") -> "SymbolHistogram":
        return SymbolHistogram.from_counts(a + b for a, b in zip(self.counts, other.counts))


@dataclass(frozen=True)
class ExtractionParams:
    bs: int = 1000
    m: int = 300
    eps_exponent: float = 12.5
    hmin_per_symbol: float = 2.6
    K: int = 40
    sample_bits: int = 800_000

    def __post_init__(self):
        if self.bs <= 0 or self.bs % 8:
            raise ValueError(f"bs must be a positive multiple of 8, got {self.bs}")
        if not 0 < self.m <= self.bs:
            raise ValueError(f"need 0 < m <= bs, got m={self.m}, bs={self.bs}")
        if self.K < 1:
            raise ValueError(f"K must be >= 1, got {self.K}")
        if self.sample_bits <= 0 or self.sample_bits % (self.K * self.bs):
            raise ValueError(
                f"sample_bits={self.sample_bits} is not a whole number of "
                f"batches of K*bs={self.K * self.bs}"
            )
        if not 0 < self.hmin_per_symbol <= 8:
            raise ValueError(f"hmin_per_symbol must be in (0, 8], got {self.hmin_per_symbol}")

    @property
    def batches(self) -> int:
        return self.sample_bits // (self.K * self.bs)


def min_entropy(h: SymbolHistogram) -> float:
    """-log2 of the most probable symbol's empirical frequency."""
    if h.total < 1:
        raise ValueError("empty histogram")
    p_max = max(h.counts) / h.total
    if p_max == 1.0:
        warnings.warn("histogram has a single symbol; min-entropy is zero", RuntimeWarning)
        return 0.0
    return -math.log2(p_max)


def output_length(bs: int, hmin_per_symbol: float, eps_exponent: float) -> int:
    """Secure output length: floor(bs * H/8 - 2 * log2(1/eps))."""
    if bs <= 0 or bs % 8:
        raise ValueError(f"bs must be a positive multiple of 8, got {bs}")
    if not 0 < hmin_per_symbol <= 8:
        raise ValueError(f"hmin_per_symbol must be in (0, 8], got {hmin_per_symbol}")
    if eps_exponent <= 0:
        raise ValueError(f"eps_exponent must be positive, got {eps_exponent}")
    # round away float noise such as 324.99999999999994 before flooring
    m = math.floor(round(bs * hmin_per_symbol / 8 - 2 * eps_exponent, 9))
    if m <= 0:
        raise InsufficientEntropyError(
            f"insufficient entropy for requested security: bs={bs}, "
            f"H_min={hmin_per_symbol}, eps=2^-{eps_exponent} gives m={m}"
        )
    return m


def extraction_ratio(p: ExtractionParams) -> float:
    return p.m / p.bs
