#!/usr/bin/env python3
"""Render the three-row panel grid (variety, avg complexity, vertical
incidence) from sweep output.

Usage: plot_panels.py SWEEP_DIR [--x step|n] [--out FILE.png]

Reads manifest.json to order the cells; one column per (rho, r) cell in a
row per rho. Needs matplotlib; everything else is stdlib.
"""
import argparse
import csv
import json
import sys
from pathlib import Path


def read_panels(path):
    cols = {}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            for key, value in row.items():
                cols.setdefault(key, []).append(float(value))
    return cols


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("sweep_dir", type=Path)
    ap.add_argument("--x", choices=["step", "n"], default="step")
    ap.add_argument("--out", type=Path, default=None)
    args = ap.parse_args()

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        sys.exit("plot_panels.py needs matplotlib (pip install matplotlib)")

    manifest = json.loads((args.sweep_dir / "manifest.json").read_text())
    rhos = manifest["spec"]["rho_values"]
    rs = manifest["spec"]["r_values"]
    cells = {(c["rho"], c["r"]): c for c in manifest["cells"] if c["status"] == "ok"}

    fig, axes = plt.subplots(3 * len(rhos), len(rs), squeeze=False,
                             figsize=(3.2 * len(rs), 2.2 * 3 * len(rhos)))
    rows = [("variety", "variety"), ("avg_complexity", "avg complexity"),
            ("vertical_fraction", "vertical incidence")]
    for i, rho in enumerate(rhos):
        for j, r in enumerate(rs):
            cell = cells.get((rho, r))
            if cell is None:
                continue
            panels = read_panels(args.sweep_dir / cell["dir"] / "panels.csv")
            x = panels[args.x]
            for k, (col, label) in enumerate(rows):
                ax = axes[3 * i + k][j]
                ax.plot(x, panels[col], lw=1.0)
                if k == 0:
                    ax.set_title(f"rho={rho} r={r}", fontsize=9)
                    ax.set_yscale("log")
                if j == 0:
                    ax.set_ylabel(label, fontsize=8)
                if k == 2:
                    ax.set_xlabel(args.x, fontsize=8)
                ax.tick_params(labelsize=7)
    fig.tight_layout()
    out = args.out or args.sweep_dir / "panels.png"
    fig.savefig(out, dpi=130)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
