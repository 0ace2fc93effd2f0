"""End-to-end extraction run and its JSON report."""

from __future__ import annotations

import hashlib
import secrets
import time
from dataclasses import asdict, dataclass, field

from . import hwmodel
from .bitstore import BitString
from .entropy import ExtractionParams, SymbolHistogram, min_entropy, output_length
from .extractor import BatchPlan, ToeplitzSpec, extract_sample
from .seedgen import DEFAULT_FIXED_ONES, DEFAULT_TAPS, SeedRecipe, build_seed, generate_toeplitz_string

SCHEMA_VERSION = 1
MATRIX_CONVENTION = "T[i][j] = ts[i - j + bs - 1]"


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


@dataclass
class ExtractionRun:
    output: BitString
    params: ExtractionParams
    recipe: SeedRecipe
    taps: tuple[int, ...]
    nonce: int
    seed_register: int
    ts: BitString
    measured_hmin: float
    pinned_hmin: float | None
    m_override: bool
    extract_seconds: float
    warnings: list[str] = field(default_factory=list)

    def report(self, raw: BitString, *, raw_path: str | None = None,
               output_path: str | None = None, hw: hwmodel.HwConfig | None = None) -> dict:
        p = self.params
        rep = {
            "schema_version": SCHEMA_VERSION,
            "parameters": {
                **asdict(p),
                "batches": p.batches,
                "extraction_ratio": p.m / p.bs,
                "m_override": self.m_override,
                "taps": list(self.taps),
                "nonce": self.nonce,
                "seed_recipe": {
                    "raw_bit_offsets": list(self.recipe.raw_bit_offsets),
                    "fixed_one_positions": list(self.recipe.fixed_one_positions),
                },
                "seed_register": self.seed_register,
                "toeplitz_string_bits": self.ts.length,
                "toeplitz_string_sha256": sha256_hex(self.ts.to_bytes()),
                "matrix_convention": MATRIX_CONVENTION,
                "block_order": "batch-major, block-major within batch",
            },
            "entropy": {
                "measured_hmin_per_symbol": self.measured_hmin,
                "pinned_hmin_per_symbol": self.pinned_hmin,
                "used_hmin_per_symbol": p.hmin_per_symbol,
            },
            "timing": {
                "extract_seconds": self.extract_seconds,
                "software_input_gbps": p.sample_bits / self.extract_seconds / 1e9
                if self.extract_seconds > 0 else None,
            },
            "warnings": list(self.warnings),
            "artifacts": {
                "raw": {"path": raw_path, "bits": raw.length,
                        "sha256": sha256_hex(raw.to_bytes())},
                "output": {"path": output_path, "bits": self.output.length,
                           "sha256": sha256_hex(self.output.to_bytes()),
                           "packing": "MSB-first within each byte, final byte zero-padded"},
            },
        }
        if hw is not None:
            rep["hwmodel"] = hwmodel.report_for_m(hw, p.m).as_dict()
        return rep


def run_extraction(raw: BitString, *, bs: int = 1000, eps_exponent: float = 12.5, K: int = 40,
                   pin_hmin: float | None = None, m_override: int | None = None,
                   taps: tuple[int, ...] = DEFAULT_TAPS, nonce: int | None = None,
                   recipe: SeedRecipe | None = None,
                   fixed_one_positions: tuple[int, ...] = DEFAULT_FIXED_ONES,
                   workers: int = 1) -> ExtractionRun:
    """Entropy estimate -> output length -> LFSR seed -> Toeplitz string -> extraction."""
    plan = BatchPlan.for_sample(raw.length, bs, K)
    measured = min_entropy(SymbolHistogram.from_bitstring(raw))
    hmin = pin_hmin if pin_hmin is not None else measured

    warnings = []
    if m_override is not None:
        m = m_override
        warnings.append(
            f"m={m} set by override; the leftover-hash security guarantee for "
            f"eps=2^-{eps_exponent} does not apply"
        )
        if m == bs:
            warnings.append("extraction ratio 1.0: no compression, output cannot be closer to uniform than the input")
    else:
        m = output_length(bs, hmin, eps_exponent)
    params = ExtractionParams(bs=bs, m=m, eps_exponent=eps_exponent, hmin_per_symbol=hmin,
                              K=K, sample_bits=raw.length)

    if nonce is None:
        nonce = secrets.randbits(63)
    if recipe is None:
        recipe = SeedRecipe.from_nonce(raw.length, nonce, fixed_one_positions)
    state = build_seed(raw, recipe, taps)
    ts, _ = generate_toeplitz_string(state, bs + m - 1)
    spec = ToeplitzSpec(ts, bs, m)

    t0 = time.perf_counter()
    out = extract_sample(plan, spec, raw, workers=workers)
    elapsed = time.perf_counter() - t0

    return ExtractionRun(
        output=out, params=params, recipe=recipe, taps=tuple(taps), nonce=nonce,
        seed_register=state.register, ts=ts, measured_hmin=measured, pinned_hmin=pin_hmin,
        m_override=m_override is not None, extract_seconds=elapsed, warnings=warnings,
    )


def replay_extraction(raw: BitString, report: dict, workers: int = 1) -> ExtractionRun:
    """Re-run an extraction from the parameters recorded in a report."""
    p = report["parameters"]
    recipe = SeedRecipe(tuple(p["seed_recipe"]["raw_bit_offsets"]),
                        tuple(p["seed_recipe"]["fixed_one_positions"]))
    return run_extraction(
        raw, bs=p["bs"], eps_exponent=p["eps_exponent"], K=p["K"],
        pin_hmin=p["hmin_per_symbol"],
        m_override=p["m"] if p["m_override"] else None,
        taps=tuple(p["taps"]), nonce=p["nonce"], recipe=recipe, workers=workers,
    )
