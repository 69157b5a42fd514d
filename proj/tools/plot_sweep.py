#!/usr/bin/env python3
"""Plot a sweep CSV produced by `hypersim sweep`.

Usage: plot_sweep.py sweep.csv [out.png]
"""

import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main() -> int:
    if len(sys.argv) < 2:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    csv_path = sys.argv[1]
    out_path = sys.argv[2] if len(sys.argv) > 2 else "sweep.png"

    g, eta_t, eta_d = [], [], []
    with open(csv_path, newline="") as fh:
        for row in csv.DictReader(fh):
            g.append(float(row["g_over_kappa"]))
            eta_t.append(float(row["eta_T"]))
            eta_d.append(float(row["eta_D"]))

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(g, eta_t, "o-", color="tab:blue", label=r"$\eta_T$")
    ax.plot(g, eta_d, "s--", color="tab:red", label=r"$\eta_D$")
    ax.set_xlabel(r"$g/\kappa$")
    ax.set_ylabel("probability")
    ax.set_ylim(-0.02, 1.02)
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    print(f"wrote {out_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
