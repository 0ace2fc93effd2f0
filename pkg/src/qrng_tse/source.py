"""Raw QRNG data: file ingestion and a simulated 8-bit ADC source.

The simulator draws i.i.d. normal samples, rounds them to integer codes and
clamps to [0, 255].  That reproduces the one statistic the pipeline consumes,
the symbol histogram, without modelling the optics.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect, minimize_scalar
from scipy.special import ndtr

from .bitstore import BitString

_CODES = np.arange(256)


class CalibrationError(ValueError):
    pass


@dataclass(frozen=True)
class SimSourceConfig:
    n_samples: int = 100_000
    noise_sigma: float = 2.4014
    dc_offset: float = 128.0
    rng_nonce: int = 0

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError(f"n_samples must be >= 1, got {self.n_samples}")
        if not self.noise_sigma > 0:
            raise ValueError(f"noise_sigma must be positive, got {self.noise_sigma}")
        if not 0 <= self.dc_offset <= 255:
            raise ValueError(f"dc_offset must be in [0, 255], got {self.dc_offset}")


def simulate_codes(cfg: SimSourceConfig) -> np.ndarray:
    rng = np.random.default_rng(cfg.rng_nonce)
    x = rng.normal(cfg.dc_offset, cfg.noise_sigma, size=cfg.n_samples)
    return np.clip(np.rint(x), 0, 255).astype(np.uint8)


def simulate_raw(cfg: SimSourceConfig) -> BitString:
    return BitString.from_bytes(simulate_codes(cfg).tobytes())


def code_probabilities(sigma: float, dc_offset: float) -> np.ndarray:
    """Exact bin probabilities of the clamped, rounded normal."""
    upper = np.where(_CODES == 255, np.inf, _CODES + 0.5)
    lower = np.where(_CODES == 0, -np.inf, _CODES - 0.5)
    return ndtr((upper - dc_offset) / sigma) - ndtr((lower - dc_offset) / sigma)


def max_code_probability(sigma: float, dc_offset: float) -> float:
    return float(code_probabilities(sigma, dc_offset).max())


def calibrate_sigma(target_hmin: float, dc_offset: float = 128.0) -> float:
    """Find sigma whose most likely code has probability 2**-target_hmin.

    p_max falls as sigma grows until clamping piles mass into the edge codes,
    so the search is restricted to the decreasing branch below the sigma that
    minimises p_max.
    """
    if not 0 < target_hmin < 8:
        raise CalibrationError(f"target min-entropy must be in (0, 8), got {target_hmin}")
    target = 2.0 ** -target_hmin

    res = minimize_scalar(lambda ls: max_code_probability(np.exp(ls), dc_offset),
                          bounds=(np.log(0.01), np.log(1e4)), method="bounded")
    sigma_hi = float(np.exp(res.x))
    p_floor = max_code_probability(sigma_hi, dc_offset)
    sigma_lo = 1e-3
    p_ceil = max_code_probability(sigma_lo, dc_offset)
    if target < p_floor:
        raise CalibrationError(
            f"min-entropy {target_hmin} unattainable at dc_offset={dc_offset}: "
            f"clamping keeps p_max >= {p_floor:.5f} (H_min <= {-np.log2(p_floor):.3f})"
        )
    if target > p_ceil:
        raise CalibrationError(
            f"min-entropy {target_hmin} too low for dc_offset={dc_offset}: "
            f"p_max cannot exceed {p_ceil:.5f}"
        )
    return bisect(lambda s: max_code_probability(s, dc_offset) - target,
                  sigma_lo, sigma_hi, xtol=1e-12)


def load_raw(path: str | os.PathLike) -> BitString:
    """Read a headerless byte file, one ADC sample per byte, MSB first."""
    with open(path, "rb") as f:
        data = f.read()
    if not data:
        raise ValueError(f"raw file {os.fspath(path)!r} is empty")
    return BitString.from_bytes(data)


def save_raw(raw: BitString, path: str | os.PathLike) -> None:
    if raw.length % 8:
        raise ValueError(f"raw length {raw.length} is not a whole number of bytes")
    with open(path, "wb") as f:
        f.write(raw.to_bytes())
