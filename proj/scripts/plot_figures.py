#!/usr/bin/env python3
"""Plot fig4-1.csv and fig-av.csv as written by `crnlab reproduce` or the A10 check."""
import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("dir", type=Path, help="directory holding the CSVs")
    ap.add_argument("--out", type=Path, default=None, help="where to write PNGs (default: dir)")
    args = ap.parse_args()
    out = args.out or args.dir
    out.mkdir(parents=True, exist_ok=True)

    f1 = args.dir / "fig4-1.csv"
    if f1.exists():
        d = pd.read_csv(f1)
        fig, ax = plt.subplots(figsize=(8, 3.5))
        ax.plot(d.t, d.x2_over_N, label="X2/N")
        ax.plot(d.t, d.x4_over_sqrtN, label="X4/sqrt(N)", lw=0.8)
        ax.set_xlabel("t (sqrt(N) clock)")
        ax.legend()
        fig.tight_layout()
        fig.savefig(out / "fig4-1.png", dpi=150)

    fa = args.dir / "fig-av.csv"
    if fa.exists():
        d = pd.read_csv(fa)
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.errorbar(d.t, d.x2_mean, yerr=2 * d.x2_se, fmt=".", ms=3, label="mean X2/N")
        ax.plot(d.t, d.x2_limit, label="y(1 - t/t_inf)^2")
        ax.set_xlabel("t (sqrt(N) clock)")
        ax.legend()
        fig.tight_layout()
        fig.savefig(out / "fig-av.png", dpi=150)


if __name__ == "__main__":
    main()
