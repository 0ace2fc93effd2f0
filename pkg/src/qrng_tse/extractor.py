"""Toeplitz strong extractor over blocks and batches.

Matrix convention: ``T[i][j] = ts[i - j + bs - 1]``, so row ``i`` is the
window ``ts[i : i + bs]`` read backwards and consecutive rows are one-bit
shifts of the same string.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal

from .bitstore import BitString, and_parity, concat, window


@dataclass(frozen=True)
class ToeplitzSpec:
    ts: BitString
    bs: int
    m: int

    def __post_init__(self):
        if self.bs < 1 or self.m < 1:
            raise ValueError(f"bs and m must be positive, got bs={self.bs}, m={self.m}")
        if self.ts.length != self.bs + self.m - 1:
            raise ValueError(
                f"Toeplitz string has {self.ts.length} bits, need bs+m-1 = {self.bs + self.m - 1}"
            )


@dataclass(frozen=True)
class BatchPlan:
    K: int
    bs: int
    batches: int

    def __post_init__(self):
        if min(self.K, self.bs, self.batches) < 1:
            raise ValueError(f"invalid plan {self}")

    @property
    def sample_bits(self) -> int:
        return self.K * self.bs * self.batches

    @classmethod
    def for_sample(cls, sample_bits: int, bs: int, K: int) -> "BatchPlan":
        if sample_bits % (K * bs):
            raise ValueError(
                f"sample of {sample_bits} bits is not a whole number of batches "
                f"of {K} x {bs} bits"
            )
        return cls(K, bs, sample_bits // (K * bs))


def toeplitz_row(spec: ToeplitzSpec, i: int) -> BitString:
    if not 0 <= i < spec.m:
        raise IndexError(f"row {i} out of range for m={spec.m}")
    return window(spec.ts, i, spec.bs).reversed()


def _check_block(spec: ToeplitzSpec, x: BitString) -> None:
    if x.length != spec.bs:
        raise ValueError(f"block has {x.length} bits, expected bs={spec.bs}")


def extract_block_oracle(spec: ToeplitzSpec, x: BitString) -> BitString:
    """Reference product: materialize every row, one inner product each."""
    _check_block(spec, x)
    return BitString.from_bits(and_parity(toeplitz_row(spec, i), x) for i in range(spec.m))


def extract_block_fast(spec: ToeplitzSpec, x: BitString) -> BitString:
    # Reversing x once turns every reversed row into a plain shifted window of
    # ts: out[i] = parity((ts >> i) & reverse(x)).  Bits of ts above the
    # window fall outside reverse(x) and are masked by the AND.
    _check_block(spec, x)
    xr = x.reversed().value
    ts = spec.ts.value
    out = 0
    for i in range(spec.m):
        out |= ((ts & xr).bit_count() & 1) << i
        ts >>= 1
    return BitString(out, spec.m)


def _extract_span(spec: ToeplitzSpec, raw: BitString, first_block: int, n_blocks: int) -> BitString:
    bs = spec.bs
    return concat([
        extract_block_fast(spec, window(raw, (first_block + k) * bs, bs))
        for k in range(n_blocks)
    ])


def extract_sample(plan: BatchPlan, spec: ToeplitzSpec, raw: BitString,
                   workers: int = 1,
                   executor: Literal["process", "thread"] = "process") -> BitString:
    """Extract every block of ``raw`` with the one shared Toeplitz string.

    Blocks are laid out batch-major (batch 0 block 0, batch 0 block 1, ...)
    and outputs are concatenated in the same order.  Each batch is an
    independent task, so ``workers`` only affects scheduling, never the
    result.
    """
    if raw.length != plan.sample_bits:
        raise ValueError(f"raw sample has {raw.length} bits, plan expects {plan.sample_bits}")
    if spec.bs != plan.bs:
        raise ValueError(f"spec bs={spec.bs} does not match plan bs={plan.bs}")

    spans = [(b * plan.K, plan.K) for b in range(plan.batches)]
    if workers <= 1:
        parts = [_extract_span(spec, raw, first, n) for first, n in spans]
    else:
        pool_cls = ProcessPoolExecutor if executor == "process" else ThreadPoolExecutor
        with pool_cls(max_workers=workers) as pool:
            futures = [pool.submit(_extract_span, spec, raw, first, n) for first, n in spans]
            parts = [f.result() for f in futures]
    return concat(parts)
