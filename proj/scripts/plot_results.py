#!/usr/bin/env python3
"""Example plots for the CLI outputs.

Usage:
  python3 scripts/plot_results.py batch     out/batch.csv
  python3 scripts/plot_results.py coverage  out/coverage.csv
  python3 scripts/plot_results.py runs      out/sudden.csv.runs.json [env.json]

Each subcommand writes a PNG next to the input file.
"""

import csv
import json
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def plot_batch(path):
    trajectories = {}
    with open(path) as f:
        rows = csv.reader(line for line in f if not line.startswith("#"))
        header = next(rows)
        for row in rows:
            traj = trajectories.setdefault(int(row[0]), [])
            traj.append((float(row[2]), float(row[3]) if len(row) > 4 else 0.0))
    fig, ax = plt.subplots(figsize=(6, 6))
    for points in trajectories.values():
        xs, ys = zip(*points)
        ax.plot(xs, ys, lw=0.4, alpha=0.35)
    ax.set_aspect("equal")
    ax.set_xlabel("x [m]")
    ax.set_ylabel("y [m]")
    ax.set_title(f"{len(trajectories)} sampled trajectories")
    out = path + ".png"
    fig.savefig(out, dpi=150, bbox_inches="tight")
    print("wrote", out)


def plot_coverage(path):
    with open(path) as f:
        rows = csv.reader(line for line in f if not line.startswith("#"))
        header = next(rows)
        table = list(rows)
    ks = [int(r[0]) for r in table]
    fig, ax = plt.subplots(figsize=(7, 5))
    for col in range(1, len(header)):
        counts = [int(r[col].split()[0]) for r in table]
        ax.plot(ks, counts, marker="o", label=header[col])
    ax.set_xscale("log")
    ax.set_xlabel("sampled trajectories")
    ax.set_ylabel("covered (t, cell) pairs")
    ax.legend(fontsize=8)
    out = path + ".png"
    fig.savefig(out, dpi=150, bbox_inches="tight")
    print("wrote", out)


def plot_runs(path, env_path=None):
    runs = json.load(open(path))
    fig, ax = plt.subplots(figsize=(7, 6))
    if env_path:
        env = json.load(open(env_path))
        for obs in env.get("obstacles", []):
            if obs["kind"] == "circle":
                ax.add_patch(plt.Circle(obs["center"], obs["radius"], color="0.6"))
            else:
                (x0, y0), (x1, y1) = obs["min"], obs["max"]
                ax.add_patch(plt.Rectangle((x0, y0), x1 - x0, y1 - y0, color="0.6"))
        ax.plot(*env["goal"], "k*", markersize=14)
    colors = {"mppi": "tab:red", "logmppi": "tab:orange", "cuniform": "tab:blue"}
    seen = set()
    for run in runs:
        xs = [s[0] for s in run["executed"]]
        ys = [s[1] for s in run["executed"]]
        label = run["method"] if run["method"] not in seen else None
        seen.add(run["method"])
        ax.plot(xs, ys, color=colors.get(run["method"], "k"), lw=0.7,
                alpha=0.5, label=label)
    ax.set_aspect("equal")
    ax.legend()
    out = path + ".png"
    fig.savefig(out, dpi=150, bbox_inches="tight")
    print("wrote", out)


def main():
    if len(sys.argv) < 3:
        print(__doc__)
        return 1
    kind = sys.argv[1]
    if kind == "batch":
        plot_batch(sys.argv[2])
    elif kind == "coverage":
        plot_coverage(sys.argv[2])
    elif kind == "runs":
        plot_runs(sys.argv[2], sys.argv[3] if len(sys.argv) > 3 else None)
    else:
        print(__doc__)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
