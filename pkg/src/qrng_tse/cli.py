"""Command-line interface: ``qrng-tse <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import statistics
import sys
import time

import numpy as np

from . import hwmodel, statsuite
from .bitstore import BitString
from .entropy import InsufficientEntropyError, SymbolHistogram, min_entropy, output_length
from .extractor import BatchPlan, ToeplitzSpec, extract_sample
from .pipeline import SCHEMA_VERSION, replay_extraction, run_extraction, sha256_hex
from .seedgen import DEFAULT_TAPS
from .source import CalibrationError, SimSourceConfig, calibrate_sigma, load_raw, simulate_raw

log = logging.getLogger("qrng_tse")


def _int_list(s: str) -> list[int]:
    return [int(x) for x in s.split(",") if x]


def _float_list(s: str) -> list[float]:
    return [float(x) for x in s.split(",") if x]


def _write_json(obj, path):
    text = json.dumps(obj, indent=2)
    if path:
        with open(path, "w") as f:
            f.write(text + "\n")
    else:
        print(text)


def _read_bits(path: str, fmt: str, length: int | None) -> BitString:
    if fmt == "ascii":
        bits = statsuite.read_sts_ascii(path)
        return bits if length is None else BitString(bits.value & ((1 << length) - 1), length)
    with open(path, "rb") as f:
        return BitString.from_bytes(f.read(), length)


# -- commands ---------------------------------------------------------------

def cmd_simulate(args) -> int:
    if args.sigma is not None:
        sigma = args.sigma
    else:
        sigma = calibrate_sigma(args.target_hmin, args.dc_offset)
    cfg = SimSourceConfig(n_samples=args.samples, noise_sigma=sigma,
                          dc_offset=args.dc_offset, rng_nonce=args.nonce)
    raw = simulate_raw(cfg)
    data = raw.to_bytes()
    with open(args.out, "wb") as f:
        f.write(data)
    h = min_entropy(SymbolHistogram.from_bytes(data))
    print(f"wrote {len(data)} samples to {args.out}; sigma={sigma:.6f} "
          f"measured H_min={h:.4f} bits/sample")
    return 0


def cmd_analyze(args) -> int:
    raw = load_raw(args.raw)
    hist = SymbolHistogram.from_bitstring(raw)
    h = min_entropy(hist)
    result = {
        "schema_version": SCHEMA_VERSION,
        "samples": hist.total,
        "bits": raw.length,
        "hmin_per_symbol": h,
        "most_likely_symbol": int(np.argmax(hist.counts)),
        "bs": args.bs,
        "eps_exponent": args.eps_exp,
    }
    try:
        m = output_length(args.bs, h, args.eps_exp)
        result.update(m=m, extraction_ratio=m / args.bs)
    except InsufficientEntropyError as e:
        result.update(m=None, extraction_ratio=None, error=str(e))
    _write_json(result, args.report)
    return 0


def cmd_extract(args) -> int:
    raw = load_raw(args.raw)
    hw = hwmodel.HwConfig(K=args.blocks, bs=args.bs, sample_bits=raw.length) if args.hwmodel else None
    if args.replay:
        with open(args.replay) as f:
            run = replay_extraction(raw, json.load(f), workers=args.workers)
    else:
        run = run_extraction(
            raw, bs=args.bs, eps_exponent=args.eps_exp, K=args.blocks,
            pin_hmin=args.pin_hmin, m_override=args.m_override,
            taps=tuple(args.taps), nonce=args.nonce, workers=args.workers,
        )
    with open(args.out, "wb") as f:
        f.write(run.output.to_bytes())
    report = run.report(raw, raw_path=args.raw, output_path=args.out, hw=hw)
    report["command"] = "extract"
    for w in run.warnings:
        log.warning(w)
    _write_json(report, args.report or args.out + ".json")
    print(f"extracted {run.output.length} bits (m={run.params.m}, "
          f"ER={run.params.m / run.params.bs:g}) to {args.out}")
    return 0


def cmd_hwmodel(args) -> int:
    cfg = hwmodel.HwConfig(f_clk=args.f_clk, K=args.blocks, bs=args.bs,
                           sample_bits=args.sample_bits,
                           pipeline_constant=args.pipeline_constant,
                           overhead_cycles=args.overhead_cycles)
    if args.m:
        reports = [hwmodel.report_for_m(cfg, m) for m in args.m]
    else:
        reports = hwmodel.sweep_report(cfg, args.er or hwmodel.TABLE1_RATIOS)
    if args.format == "json":
        print(hwmodel.to_json(cfg, reports))
    elif args.format == "csv":
        sys.stdout.write(hwmodel.to_csv(reports))
    else:
        print(hwmodel.format_table(reports))
    return 0


def cmd_bench(args) -> int:
    plan = BatchPlan(args.blocks, args.bs, args.batches)
    rng = np.random.default_rng(args.nonce)
    raw = BitString.from_array(rng.integers(0, 2, plan.sample_bits, dtype=np.uint8))
    ts = BitString.from_array(rng.integers(0, 2, args.bs + args.m - 1, dtype=np.uint8))
    spec = ToeplitzSpec(ts, args.bs, args.m)

    rows = []
    digests = set()
    for workers in args.threads:
        times = []
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            out = extract_sample(plan, spec, raw, workers=workers)
            times.append(time.perf_counter() - t0)
        digest = sha256_hex(out.to_bytes())
        digests.add(digest)
        med = statistics.median(times)
        rows.append({"workers": workers, "median_seconds": med, "runs": times,
                     "input_gbps": plan.sample_bits / med / 1e9,
                     "output_bits": out.length, "sha256": digest})
    if len(digests) != 1:
        print("output differs between worker counts", file=sys.stderr)
        return 1
    result = {"schema_version": SCHEMA_VERSION, "bs": args.bs, "m": args.m, "K": args.blocks,
              "batches": args.batches, "sample_bits": plan.sample_bits, "results": rows}
    if args.report:
        _write_json(result, args.report)
    for r in rows:
        print(f"workers={r['workers']:>3}  median={r['median_seconds']:.4f}s  "
              f"input-referred {r['input_gbps'] * 1e3:.3f} Mbps  sha256={r['sha256'][:16]}")
    return 0


def cmd_test(args) -> int:
    data = _read_bits(args.data, args.format, args.length)
    n_seq = args.seqs if args.seqs is not None else data.length // args.bits_per_seq
    cfg = statsuite.TestRunConfig(args.bits_per_seq, n_seq, args.alpha)
    report = statsuite.run_battery(data, cfg)
    print(report.summary())
    if args.report:
        _write_json({"schema_version": SCHEMA_VERSION, **report.as_dict()}, args.report)
    return 0 if report.passed else 1


def cmd_export_sts(args) -> int:
    data = _read_bits(args.data, "packed", args.length)
    statsuite.export_sts_ascii(data, args.out)
    print(f"wrote {data.length} ASCII bits to {args.out}")
    return 0


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qrng-tse", description="Toeplitz extraction toolkit for QRNG raw data")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="write simulated 8-bit ADC samples")
    s.add_argument("--samples", type=int, default=100_000)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--target-hmin", type=float, default=2.6)
    g.add_argument("--sigma", type=float)
    s.add_argument("--dc-offset", type=float, default=128.0)
    s.add_argument("--nonce", type=int, default=0)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("analyze", help="estimate min-entropy and output length")
    s.add_argument("raw")
    s.add_argument("--bs", type=int, default=1000)
    s.add_argument("--eps-exp", type=float, default=12.5)
    s.add_argument("--report")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("extract", help="run the full extraction chain")
    s.add_argument("raw")
    s.add_argument("--out", required=True)
    s.add_argument("--report", help="JSON report path (default: <out>.json)")
    s.add_argument("--bs", type=int, default=1000)
    s.add_argument("--eps-exp", type=float, default=12.5)
    s.add_argument("--blocks", type=int, default=40)
    s.add_argument("--pin-hmin", type=float)
    s.add_argument("--m-override", type=int)
    s.add_argument("--taps", type=_int_list, default=list(DEFAULT_TAPS))
    s.add_argument("--nonce", type=int)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--hwmodel", action="store_true", help="attach the FPGA cycle model")
    s.add_argument("--replay", help="reuse every parameter from an earlier report")
    s.set_defaults(func=cmd_extract)

    s = sub.add_parser("hwmodel", help="FPGA clock-cycle and throughput model")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--er", type=_float_list)
    g.add_argument("--m", type=_int_list)
    s.add_argument("--f-clk", type=float, default=200e6)
    s.add_argument("--blocks", type=int, default=40)
    s.add_argument("--bs", type=int, default=1000)
    s.add_argument("--sample-bits", type=int, default=800_000)
    s.add_argument("--pipeline-constant", type=int, default=21)
    s.add_argument("--overhead-cycles", type=int, default=100_274)
    s.add_argument("--format", choices=("table", "json", "csv"), default="table")
    s.set_defaults(func=cmd_hwmodel)

    s = sub.add_parser("bench", help="time software extraction")
    s.add_argument("--bs", type=int, default=1000)
    s.add_argument("--m", type=int, default=300)
    s.add_argument("--blocks", type=int, default=40)
    s.add_argument("--batches", type=int, default=20)
    s.add_argument("--threads", type=_int_list, default=sorted({1, os.cpu_count() or 1}),
                   help="comma-separated worker counts")
    s.add_argument("--repeat", type=int, default=3)
    s.add_argument("--nonce", type=int, default=0)
    s.add_argument("--report")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("test", help="run the statistical test battery")
    s.add_argument("data")
    s.add_argument("--format", choices=("packed", "ascii"), default="packed")
    s.add_argument("--length", type=int, help="true bit length of a packed file")
    s.add_argument("--bits-per-seq", type=int, default=8000)
    s.add_argument("--seqs", type=int)
    s.add_argument("--alpha", type=float, default=0.01)
    s.add_argument("--report")
    s.set_defaults(func=cmd_test)

    s = sub.add_parser("export-sts", help="convert packed bits to NIST STS ASCII input")
    s.add_argument("data")
    s.add_argument("--out", required=True)
    s.add_argument("--length", type=int)
    s.set_defaults(func=cmd_export_sts)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ValueError, IndexError, OSError, CalibrationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
