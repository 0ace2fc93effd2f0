"""LFSR seed construction and Toeplitz string generation.

The register is a 25-cell Fibonacci LFSR.  Each step emits cell 0, shifts
every cell one position toward cell 0 and writes the XOR of the tapped cells
into the top cell.  Taps ``{0} | E`` give the recurrence
``s[n+25] = s[n] ^ XOR(s[n+e] for e in E)``, characteristic polynomial
``x^25 + sum(x^e) + 1``.

The default is the primitive heptanomial x^25 + x^24 + x^20 + x^15 + x^9 + x + 1.
Every extracted block is a window of the LFSR sequence, so it inherits this
recurrence; the sparse trinomial x^25 + x^22 + 1 (taps ``(0, 22)``) is also
maximal-length but its three-term relation measurably inflates
block-frequency failures in the extracted output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitstore import BitString

WIDTH = 25
DEFAULT_TAPS = (0, 1, 9, 15, 20, 24)
TRINOMIAL_TAPS = (0, 22)
DEFAULT_FIXED_ONES = (0, 24)
N_RAW_SEED_BITS = 23


@dataclass(frozen=True)
class LfsrState:
    register: int
    taps: tuple[int, ...] = DEFAULT_TAPS
    width: int = WIDTH

    def __post_init__(self):
        if not 0 < self.register < (1 << self.width):
            raise ValueError(
                f"register must be a non-zero {self.width}-bit value, got {self.register:#x}"
            )
        if not self.taps or any(not 0 <= t < self.width for t in self.taps):
            raise ValueError(f"taps {self.taps} outside [0, {self.width})")
        if 0 not in self.taps:
            # without cell 0 in the feedback the step is not invertible and
            # the register can collapse to all-zero
            raise ValueError("taps must include cell 0")

    @property
    def tap_mask(self) -> int:
        m = 0
        for t in self.taps:
            m |= 1 << t
        return m

    def cells(self) -> list[int]:
        return [(self.register >> i) & 1 for i in range(self.width)]


@dataclass(frozen=True)
class SeedRecipe:
    raw_bit_offsets: tuple[int, ...]
    fixed_one_positions: tuple[int, ...] = DEFAULT_FIXED_ONES

    def __post_init__(self):
        if len(self.raw_bit_offsets) != N_RAW_SEED_BITS:
            raise ValueError(
                f"need {N_RAW_SEED_BITS} raw bit offsets, got {len(self.raw_bit_offsets)}"
            )
        if any(o < 0 for o in self.raw_bit_offsets):
            raise ValueError("raw bit offsets must be non-negative")
        fixed = self.fixed_one_positions
        if len(fixed) != 2 or len(set(fixed)) != 2:
            raise ValueError(f"need 2 distinct fixed positions, got {fixed}")
        if any(not 0 <= p < WIDTH for p in fixed):
            raise ValueError(f"fixed positions {fixed} outside [0, {WIDTH})")

    @classmethod
    def from_nonce(cls, raw_len: int, nonce: int,
                   fixed_one_positions: tuple[int, ...] = DEFAULT_FIXED_ONES) -> "SeedRecipe":
        """Pick 23 distinct raw offsets uniformly, reproducibly from ``nonce``."""
        if raw_len < N_RAW_SEED_BITS:
            raise ValueError(f"raw sample of {raw_len} bits is too short for a seed")
        rng = np.random.default_rng(nonce)
        offsets = np.sort(rng.choice(raw_len, size=N_RAW_SEED_BITS, replace=False))
        return cls(tuple(int(o) for o in offsets), tuple(fixed_one_positions))


def free_cells(recipe: SeedRecipe) -> list[int]:
    return [c for c in range(WIDTH) if c not in recipe.fixed_one_positions]


def build_seed(raw: BitString, recipe: SeedRecipe,
               taps: tuple[int, ...] = DEFAULT_TAPS) -> LfsrState:
    """Fill the free cells (ascending) with raw bits at the recipe offsets."""
    bad = [o for o in recipe.raw_bit_offsets if o >= raw.length]
    if bad:
        raise IndexError(f"seed offsets {bad} out of range for raw length {raw.length}")
    reg = 0
    for p in recipe.fixed_one_positions:
        reg |= 1 << p
    for cell, off in zip(free_cells(recipe), recipe.raw_bit_offsets):
        reg |= ((raw.value >> off) & 1) << cell
    return LfsrState(reg, tuple(taps))


def lfsr_step(state: LfsrState) -> tuple[int, LfsrState]:
    s = state.register
    fb = (s & state.tap_mask).bit_count() & 1
    nxt = (s >> 1) | (fb << (state.width - 1))
    return s & 1, LfsrState(nxt, state.taps, state.width)


def generate_toeplitz_string(state: LfsrState, length: int) -> tuple[BitString, LfsrState]:
    """Emit ``length`` LFSR output bits; returns the string and the advanced state."""
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    s, mask, top = state.register, state.tap_mask, state.width - 1
    out = 0
    for i in range(length):
        out |= (s & 1) << i
        s = (s >> 1) | (((s & mask).bit_count() & 1) << top)
    return BitString(out, length), LfsrState(s, state.taps, state.width)


def state_period(state: LfsrState, limit: int | None = None) -> int:
    """Number of steps until the register first returns to its start value."""
    start = s = state.register
    mask, top = state.tap_mask, state.width - 1
    limit = (1 << state.width) if limit is None else limit
    for n in range(1, limit + 1):
        s = (s >> 1) | (((s & mask).bit_count() & 1) << top)
        if s == start:
            return n
    raise RuntimeError(f"no return to start state within {limit} steps")
