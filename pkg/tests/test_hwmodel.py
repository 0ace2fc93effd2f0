import csv
import io
import json
from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qrng_tse.hwmodel import (
    HwConfig, extraction_cycles, extraction_speed, format_table, output_speed, overhead_time,
    sweep_report, to_csv, to_json,
)

DEFAULT = HwConfig()
TABLE1 = {300: 6021, 500: 10021, 600: 12021, 800: 16021}


@pytest.mark.parametrize("m, cycles", sorted(TABLE1.items()))
def test_table1(m, cycles):
    assert extraction_cycles(DEFAULT, m) == cycles


def test_degenerate_m():
    assert extraction_cycles(DEFAULT, 1) == 41


@pytest.mark.parametrize("m", [0, 1001, 2.5])
def test_invalid_m(m):
    with pytest.raises(ValueError):
        extraction_cycles(DEFAULT, m)


@pytest.mark.parametrize("m, gbps", [(300, 26.57), (600, 13.31), (800, 9.99)])
def test_quoted_speeds(m, gbps):
    assert round(extraction_speed(DEFAULT, m) / 1e9, 2) == gbps


def test_speed_definition():
    assert extraction_speed(DEFAULT, 300) == 8e5 * 2e8 / 6021
    # output-referred alternative does not reproduce the quoted figure
    assert round(output_speed(DEFAULT, 300) / 1e9, 2) == 7.97


def test_overhead():
    assert overhead_time(DEFAULT) == pytest.approx(501.37e-6, abs=1e-12)
    assert round(overhead_time(DEFAULT) * 1e6) == 501
    assert overhead_time(replace(DEFAULT, f_clk=4e8)) == pytest.approx(250.685e-6)
    assert overhead_time(replace(DEFAULT, overhead_cycles=0)) == 0


def test_sweep_table1_and_extrapolation():
    reports = sweep_report(DEFAULT, [0.3, 0.5, 0.6, 0.8])
    assert [r.extraction_cycles for r in reports] == [6021, 10021, 12021, 16021]
    assert not any(r.extrapolated for r in reports)
    speeds = [r.speed_bps for r in reports]
    assert all(a > b for a, b in zip(speeds, speeds[1:]))

    (full,) = sweep_report(DEFAULT, [1.0])
    assert full.m == 1000 and full.extraction_cycles == 20021
    assert round(full.speed_bps / 1e9, 2) == 7.99
    assert full.extrapolated


def test_sweep_rejects_non_integral_m():
    with pytest.raises(ValueError, match="integral"):
        sweep_report(DEFAULT, [0.3005])
    with pytest.raises(ValueError):
        sweep_report(DEFAULT, [1.2])


def test_report_invariants():
    r = sweep_report(DEFAULT, [0.3])[0]
    assert r.extraction_time == r.extraction_cycles / DEFAULT.f_clk
    assert r.overhead_time == DEFAULT.overhead_cycles / DEFAULT.f_clk


@given(st.integers(1, 999))
def test_affine_in_m(m):
    assert extraction_cycles(DEFAULT, m + 1) - extraction_cycles(DEFAULT, m) == DEFAULT.batches
    assert extraction_cycles(DEFAULT, m) - DEFAULT.batches * m == DEFAULT.pipeline_constant


@given(st.integers(1, 1000))
def test_speed_times_cycles(m):
    assert extraction_speed(DEFAULT, m) * extraction_cycles(DEFAULT, m) == pytest.approx(
        DEFAULT.sample_bits * DEFAULT.f_clk, rel=1e-15)


def test_config_validation():
    with pytest.raises(ValueError):
        HwConfig(sample_bits=800_100)
    with pytest.raises(ValueError):
        HwConfig(f_clk=0)


def test_outputs():
    reports = sweep_report(DEFAULT, [0.3, 0.8])
    table = format_table(reports)
    assert "6021" in table and "26.57" in table and "501.37" in table
    rows = list(csv.DictReader(io.StringIO(to_csv(reports))))
    assert [int(r["extraction_cycles"]) for r in rows] == [6021, 16021]
    doc = json.loads(to_json(DEFAULT, reports))
    assert doc["config"]["f_clk"] == 2e8 and len(doc["points"]) == 2
