import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qrng_tse.bitstore import BitString
from qrng_tse.seedgen import (
    DEFAULT_TAPS, TRINOMIAL_TAPS, LfsrState, SeedRecipe, build_seed, generate_toeplitz_string,
    lfsr_step, state_period,
)


def reference_outputs(cells, taps, n):
    """List-based Fibonacci LFSR, independent of the packed-int implementation."""
    cells, out = list(cells), []
    for _ in range(n):
        out.append(cells[0])
        cells = cells[1:] + [sum(cells[t] for t in taps) % 2]
    return out, cells


def state_from_cells(cells, taps=DEFAULT_TAPS):
    return LfsrState(sum(b << i for i, b in enumerate(cells)), taps, len(cells))


RECIPE_0_22 = SeedRecipe(tuple(range(23)), (0, 24))


def test_build_seed_all_zero_raw_keeps_fixed_ones():
    st_ = build_seed(BitString.zeros(64), RECIPE_0_22)
    assert st_.cells() == [1] + [0] * 23 + [1]


def test_build_seed_all_ones_raw():
    assert build_seed(BitString.ones(64), RECIPE_0_22).register == (1 << 25) - 1


def test_build_seed_alternating_placement():
    raw = BitString.from_str("10" * 20)
    # raw[0..22] fill cells 1..23 in order
    expected = [1] + [int(c) for c in ("10" * 12)[:23]] + [1]
    assert build_seed(raw, RECIPE_0_22).cells() == expected


def test_build_seed_respects_other_fixed_positions():
    recipe = SeedRecipe(tuple(range(23)), (3, 10))
    cells = build_seed(BitString.zeros(30), recipe).cells()
    assert [i for i, c in enumerate(cells) if c] == [3, 10]


def test_build_seed_errors():
    with pytest.raises(IndexError, match="out of range"):
        build_seed(BitString.zeros(10), RECIPE_0_22)
    with pytest.raises(ValueError):
        SeedRecipe(tuple(range(22)))
    with pytest.raises(ValueError):
        SeedRecipe(tuple(range(23)), (4, 4))
    with pytest.raises(ValueError):
        SeedRecipe(tuple(range(23)), (0, 25))


def test_recipe_from_nonce_reproducible():
    a = SeedRecipe.from_nonce(800_000, 7)
    assert a == SeedRecipe.from_nonce(800_000, 7)
    assert a != SeedRecipe.from_nonce(800_000, 8)
    assert list(a.raw_bit_offsets) == sorted(set(a.raw_bit_offsets))
    assert max(a.raw_bit_offsets) < 800_000


def test_state_rejects_degenerate():
    with pytest.raises(ValueError):
        LfsrState(0)
    with pytest.raises(ValueError):
        LfsrState(1 << 25)
    with pytest.raises(ValueError, match="cell 0"):
        LfsrState(1, taps=(24, 21))


def test_step_single_low_bit():
    bit, nxt = lfsr_step(LfsrState(1))
    assert bit == 1
    # feedback is the XOR of the tapped cells; only cell 0 is set, so it is 1
    assert nxt.register == 1 << 24
    out, cells = reference_outputs([1] + [0] * 24, DEFAULT_TAPS, 1)
    assert out == [1] and nxt.cells() == cells


def test_step_all_ones():
    bit, nxt = lfsr_step(LfsrState((1 << 25) - 1))
    assert bit == 1
    # an even number of taps over all-ones feeds back 0
    assert len(DEFAULT_TAPS) % 2 == 0
    assert nxt.register == (1 << 24) - 1


def test_toeplitz_string_length_one():
    state = build_seed(BitString.from_str("1" * 23), RECIPE_0_22)
    ts, _ = generate_toeplitz_string(state, 1)
    assert str(ts) == str(state.register & 1)


def test_toeplitz_string_default_length():
    ts, _ = generate_toeplitz_string(LfsrState(0x1234567), 1000 + 300 - 1)
    assert len(ts) == 1299


@pytest.mark.parametrize("taps", [DEFAULT_TAPS, TRINOMIAL_TAPS])
def test_toeplitz_string_matches_reference(rng, taps):
    for _ in range(20):
        cells = rng.integers(0, 2, 25).tolist()
        if not any(cells):
            continue
        state = state_from_cells(cells, taps)
        ts, after = generate_toeplitz_string(state, 30)
        out, ref_cells = reference_outputs(cells, taps, 30)
        assert [int(c) for c in str(ts)] == out
        assert after.cells() == ref_cells
        # stepping one at a time agrees with the bulk generator
        s, bits = state, []
        for _ in range(30):
            b, s = lfsr_step(s)
            bits.append(b)
        assert bits == out


def test_toeplitz_string_rejects_zero_length():
    with pytest.raises(ValueError):
        generate_toeplitz_string(LfsrState(1), 0)


@given(st.integers(1, (1 << 25) - 1))
def test_first_25_outputs_are_the_seed(reg):
    ts, _ = generate_toeplitz_string(LfsrState(reg), 50)
    assert ts.value & ((1 << 25) - 1) == reg
    out = [int(c) for c in str(ts)]
    for n in range(25):
        assert out[n + 25] == sum(out[n + t] for t in DEFAULT_TAPS) % 2


@given(st.binary(min_size=8, max_size=64), st.integers(0, 2**32))
def test_seed_never_zero_and_deterministic(data, nonce):
    raw = BitString.from_bytes(data)
    recipe = SeedRecipe.from_nonce(raw.length, nonce)
    a = build_seed(raw, recipe)
    assert a.register != 0
    assert generate_toeplitz_string(a, 64)[0] == generate_toeplitz_string(build_seed(raw, recipe), 64)[0]


@pytest.mark.parametrize("taps", [(0, 6), (0, 1)])
def test_degree7_period(taps):
    assert state_period(LfsrState(1, taps, 7)) == 127


def test_degree7_pure_cycle_short_period():
    # feedback from cell 0 alone just rotates the register
    assert state_period(LfsrState(1, (0,), 7)) == 7


@pytest.mark.slow
def test_trinomial_taps_are_maximal_too():
    assert state_period(LfsrState(1, TRINOMIAL_TAPS)) == 2**25 - 1
