"""Toeplitz strong extraction for QRNG raw data, with an FPGA cycle model."""

from .bitstore import BitString, and_parity, concat, get_bit, window
from .entropy import ExtractionParams, SymbolHistogram, extraction_ratio, min_entropy, output_length
from .extractor import (BatchPlan, ToeplitzSpec, extract_block_fast, extract_block_oracle,
                        extract_sample, toeplitz_row)
from .hwmodel import HwConfig, extraction_cycles, extraction_speed, overhead_time, sweep_report
from .seedgen import LfsrState, SeedRecipe, build_seed, generate_toeplitz_string, lfsr_step

__version__ = "0.1.0"
