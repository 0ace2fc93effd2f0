"""Print the cycle-model table for the board's extraction ratios and write the speed curve."""

import argparse
from pathlib import Path

import numpy as np

from qrng_tse.hwmodel import HwConfig, format_table, sweep_report, to_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--csv", type=Path, default=Path("speed_vs_er.csv"))
    ap.add_argument("--plot", type=Path, help="optional PNG of speed vs extraction ratio")
    args = ap.parse_args()

    cfg = HwConfig()
    print(format_table(sweep_report(cfg, [0.3, 0.5, 0.6, 0.8])))

    curve = sweep_report(cfg, np.round(np.arange(0.1, 1.0001, 0.05), 2))
    args.csv.write_text(to_csv(curve))
    print(f"\nwrote {len(curve)} points to {args.csv}")

    if args.plot:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(5, 3.5))
        ax.plot([r.er for r in curve], [r.speed_bps / 1e9 for r in curve], "-", lw=1)
        table = [r for r in curve if not r.extrapolated]
        ax.plot([r.er for r in table], [r.speed_bps / 1e9 for r in table], "o")
        ax.set_xlabel("extraction ratio m/bs")
        ax.set_ylabel("input-referred speed (Gbps)")
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)
        print(f"wrote {args.plot}")


if __name__ == "__main__":
    main()
