"""Per-sequence failure rates of extracted output for different LFSR feedback polynomials.

Raw input is uniform here so any excess failure comes from the Toeplitz string.
"""

import argparse

import numpy as np

from qrng_tse.bitstore import BitString
from qrng_tse.extractor import BatchPlan, ToeplitzSpec, extract_sample
from qrng_tse.seedgen import DEFAULT_TAPS, TRINOMIAL_TAPS, LfsrState, generate_toeplitz_string
from qrng_tse.statsuite import TESTS

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--runs", type=int, default=20, help="runs of 30 sequences each")
ap.add_argument("--seed", type=int, default=11)
args = ap.parse_args()

plan = BatchPlan(40, 1000, 20)
print(f"{'taps':<24}" + "".join(f"{n:>17}" for n in TESTS))
for taps in (TRINOMIAL_TAPS, DEFAULT_TAPS, None):
    rng = np.random.default_rng(args.seed)
    fails = np.zeros(len(TESTS))
    n = 0
    for _ in range(args.runs):
        raw = BitString.from_array(rng.integers(0, 2, plan.sample_bits, dtype=np.uint8))
        if taps is None:
            ts = BitString.from_array(rng.integers(0, 2, 1299, dtype=np.uint8))
        else:
            ts, _ = generate_toeplitz_string(LfsrState(int(rng.integers(1, 2**25)), taps), 1299)
        out = extract_sample(plan, ToeplitzSpec(ts, 1000, 300), raw).to_array().reshape(-1, 8000)
        for row in out:
            fails += [fn(row) < 0.01 for fn in TESTS.values()]
            n += 1
    label = "uniform random ts" if taps is None else str(taps)
    print(f"{label:<24}" + "".join(f"{f / n:>17.4f}" for f in fails))
print(f"({n} sequences per row, alpha = 0.01)")
