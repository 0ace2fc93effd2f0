import numpy as np
import pytest

from qrng_tse.entropy import SymbolHistogram, min_entropy
from qrng_tse.source import (
    CalibrationError, SimSourceConfig, calibrate_sigma, code_probabilities, load_raw,
    max_code_probability, save_raw, simulate_codes, simulate_raw,
)


def test_code_probabilities_sum_to_one():
    for sigma, mu in [(0.3, 0.0), (2.4, 128.0), (80.0, 250.0)]:
        assert code_probabilities(sigma, mu).sum() == pytest.approx(1.0)


def test_calibrate_default_target():
    sigma = calibrate_sigma(2.6, 128.0)
    assert max_code_probability(sigma, 128.0) == pytest.approx(2 ** -2.6, abs=1e-9)
    assert max_code_probability(sigma, 128.0) == pytest.approx(0.16494, abs=1e-5)


def test_calibrate_one_bit_analytic():
    # centred bin: p = erf(0.5 / (sigma sqrt 2)) = 0.5  ->  sigma = 0.5 / 0.6744897...
    sigma = calibrate_sigma(1.0, 128.0)
    assert sigma == pytest.approx(0.5 / 0.6744897501960817, rel=1e-8)


def test_calibrate_unattainable():
    with pytest.raises(CalibrationError, match="unattainable"):
        calibrate_sigma(7.999, 128.0)
    with pytest.raises(CalibrationError):
        calibrate_sigma(9.0)
    with pytest.raises(CalibrationError):
        calibrate_sigma(0.0)


def test_simulate_length_and_determinism():
    cfg = SimSourceConfig(n_samples=100_000, rng_nonce=3)
    raw = simulate_raw(cfg)
    assert raw.length == 800_000
    assert raw == simulate_raw(cfg)
    assert raw != simulate_raw(SimSourceConfig(n_samples=100_000, rng_nonce=4))


def test_simulate_clamps():
    codes = simulate_codes(SimSourceConfig(n_samples=20_000, noise_sigma=200.0, dc_offset=5.0))
    assert codes.min() == 0 and codes.max() == 255


@pytest.mark.parametrize("nonce", [0, 1, 2])
def test_simulated_entropy_near_target(nonce):
    sigma = calibrate_sigma(2.6, 128.0)
    raw = simulate_raw(SimSourceConfig(100_000, sigma, 128.0, nonce))
    assert abs(min_entropy(SymbolHistogram.from_bitstring(raw)) - 2.6) <= 0.1


def test_config_validation():
    with pytest.raises(ValueError):
        SimSourceConfig(n_samples=0)
    with pytest.raises(ValueError):
        SimSourceConfig(noise_sigma=0)
    with pytest.raises(ValueError):
        SimSourceConfig(dc_offset=300)


def test_load_raw(tmp_path):
    p = tmp_path / "raw.bin"
    p.write_bytes(b"\xa5" + bytes(99_999))
    raw = load_raw(p)
    assert raw.length == 800_000
    assert [raw[i] for i in range(8)] == [1, 0, 1, 0, 0, 1, 0, 1]


def test_load_raw_errors(tmp_path):
    empty = tmp_path / "empty.bin"
    empty.write_bytes(b"")
    with pytest.raises(ValueError, match="empty"):
        load_raw(empty)
    with pytest.raises(FileNotFoundError):
        load_raw(tmp_path / "missing.bin")


def test_save_load_roundtrip(tmp_path):
    data = np.random.default_rng(1).integers(0, 256, 5000, dtype=np.uint8).tobytes()
    p = tmp_path / "in.bin"
    p.write_bytes(data)
    q = tmp_path / "out.bin"
    save_raw(load_raw(p), q)
    assert q.read_bytes() == data
