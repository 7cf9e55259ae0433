#!/usr/bin/env python3
"""Plot the CSVs written by `savskit report`.

usage: plot_report.py REPORT_DIR [--out DIR]
"""
import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def boxplot_mcc(src: Path, out: Path) -> None:
    df = pd.read_csv(src)
    cells = list(dict.fromkeys(df["design_cell"]))
    fig, ax = plt.subplots(figsize=(max(4, 1.6 * len(cells)), 4))
    ax.boxplot([df.loc[df["design_cell"] == c, "mcc"] for c in cells], tick_labels=cells)
    ax.set_ylabel("MCC")
    ax.tick_params(axis="x", labelrotation=30)
    fig.tight_layout()
    fig.savefig(out / "mcc_boxplot.png", dpi=150)


def objective_trace(src: Path, out: Path) -> None:
    df = pd.read_csv(src)
    fig, ax = plt.subplots(figsize=(5, 4))
    for name, g in df.groupby("source", sort=False):
        ax.plot(g["pass"], g["objective"], marker="o", label=name)
    ax.set_xlabel("pass")
    ax.set_ylabel("objective")
    ax.set_yscale("log")
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(out / "objective_trace.png", dpi=150)


def null_coefficients(src: Path, out: Path) -> None:
    df = pd.read_csv(src)
    fig, ax = plt.subplots(figsize=(6, 3))
    for name, g in df.groupby("source", sort=False):
        ax.scatter(g["index"], g["beta_hat"], s=4, label=name)
    ax.axhline(0.0, color="black", linewidth=0.5)
    ax.set_xlabel("index")
    ax.set_ylabel("posterior mean")
    fig.tight_layout()
    fig.savefig(out / "null_coefficients.png", dpi=150)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("report_dir", type=Path)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()
    out = args.out or args.report_dir
    out.mkdir(parents=True, exist_ok=True)
    plots = {
        "fig_boxplot_mcc.csv": boxplot_mcc,
        "fig2_objective_trace.csv": objective_trace,
        "fig1_null_coefficients.csv": null_coefficients,
    }
    for name, plot in plots.items():
        src = args.report_dir / name
        if src.exists():
            plot(src, out)


if __name__ == "__main__":
    main()
