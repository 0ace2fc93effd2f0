"""Cycle model of the FPGA extraction datapath.

Every clock each of the K parallel block units emits one output bit, so one
batch takes m cycles; batches run back to back and a fixed pipeline constant
covers fill and drain.  Throughput is input-referred: raw bits consumed per
second of extraction.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass

# extraction ratios with measured cycle counts on the reference board
TABLE1_RATIOS = (0.3, 0.5, 0.6, 0.8)


@dataclass(frozen=True)
class HwConfig:
    f_clk: float = 200e6
    K: int = 40
    bs: int = 1000
    sample_bits: int = 800_000
    pipeline_constant: int = 21
    overhead_cycles: int = 100_274

    def __post_init__(self):
        if self.f_clk <= 0 or self.K < 1 or self.bs < 1 or self.sample_bits < 1:
            raise ValueError(f"HwConfig fields must be positive: {self}")
        if self.pipeline_constant < 0 or self.overhead_cycles < 0:
            raise ValueError("cycle constants must be non-negative")
        if self.sample_bits % (self.K * self.bs):
            raise ValueError(
                f"sample_bits={self.sample_bits} is not a whole number of batches of {self.K * self.bs}"
            )

    @property
    def batches(self) -> int:
        return self.sample_bits // (self.K * self.bs)


@dataclass(frozen=True)
class HwModelReport:
    er: float
    m: int
    extraction_cycles: int
    extraction_time: float
    speed_bps: float
    output_speed_bps: float
    overhead_time: float
    extrapolated: bool

    def as_dict(self) -> dict:
        return asdict(self)


def _check_m(cfg: HwConfig, m: int) -> None:
    if int(m) != m or not 0 < m <= cfg.bs:
        raise ValueError(f"m must be an integer in (0, {cfg.bs}], got {m}")


def extraction_cycles(cfg: HwConfig, m: int) -> int:
    _check_m(cfg, m)
    return cfg.batches * int(m) + cfg.pipeline_constant


def extraction_speed(cfg: HwConfig, m: int) -> float:
    """Input-referred throughput in bits/s."""
    return cfg.sample_bits * cfg.f_clk / extraction_cycles(cfg, m)


def output_speed(cfg: HwConfig, m: int) -> float:
    """Output-referred throughput (extracted bits/s), for comparison only."""
    return cfg.batches * cfg.K * m * cfg.f_clk / extraction_cycles(cfg, m)


def overhead_time(cfg: HwConfig) -> float:
    return cfg.overhead_cycles / cfg.f_clk


def m_for_ratio(cfg: HwConfig, er: float) -> int:
    if not 0 < er <= 1:
        raise ValueError(f"extraction ratio must be in (0, 1], got {er}")
    m = round(er * cfg.bs)
    if abs(m - er * cfg.bs) > 1e-9 * cfg.bs:
        raise ValueError(f"ER {er} x bs {cfg.bs} is not an integral output length")
    return m


def report_for_m(cfg: HwConfig, m: int) -> HwModelReport:
    cycles = extraction_cycles(cfg, m)
    er = m / cfg.bs
    return HwModelReport(
        er=er,
        m=m,
        extraction_cycles=cycles,
        extraction_time=cycles / cfg.f_clk,
        speed_bps=extraction_speed(cfg, m),
        output_speed_bps=output_speed(cfg, m),
        overhead_time=overhead_time(cfg),
        extrapolated=not any(abs(er - r) < 1e-12 for r in TABLE1_RATIOS),
    )


def sweep_report(cfg: HwConfig, ratios) -> list[HwModelReport]:
    return [report_for_m(cfg, m_for_ratio(cfg, er)) for er in ratios]


def format_table(reports: list[HwModelReport]) -> str:
    header = (f"{'Extraction Ratio':>16}  {'m':>5}  {'Clock Cycles':>12}  "
              f"{'Time (us)':>10}  {'In Gbps':>8}  {'Out Gbps':>8}  note")
    lines = [header, "-" * len(header)]
    for r in reports:
        lines.append(
            f"{r.er:>16g}  {r.m:>5d}  {r.extraction_cycles:>12d}  "
            f"{r.extraction_time * 1e6:>10.3f}  {r.speed_bps / 1e9:>8.2f}  "
            f"{r.output_speed_bps / 1e9:>8.2f}  {'extrapolated' if r.extrapolated else ''}"
        )
    if reports:
        lines.append(f"one-time overhead: {reports[0].overhead_time * 1e6:.2f} us")
    return "\n".join(lines)


def to_csv(reports: list[HwModelReport]) -> str:
    buf = io.StringIO()
    fields = list(HwModelReport.__dataclass_fields__)
    w = csv.DictWriter(buf, fieldnames=fields)
    w.writeheader()
    for r in reports:
        w.writerow(r.as_dict())
    return buf.getvalue()


def to_json(cfg: HwConfig, reports: list[HwModelReport]) -> str:
    return json.dumps({"config": asdict(cfg), "points": [r.as_dict() for r in reports]}, indent=2)
