"""CSV tables and matplotlib figures for a solved linear system."""

from __future__ import annotations

import csv
import os
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Circle  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

PNG_METADATA = {"Software": None}  # keeps the files free of version strings


def write_solutions_csv(path, solutions, dim):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([f"x{i + 1}" for i in range(dim)])
        for x in solutions:
            w.writerow(list(x))


def write_arcs_csv(path, aut):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["source", "label", "target"])
        for p, h, q in aut.arcs:
            w.writerow([_vec(p), h.label(), _vec(q)])


def _vec(v):
    return "(" + ",".join(map(str, v)) + ")"


def plot_solutions(path, solutions, dim, coord_bound, title=""):
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    if dim == 1:
        xs = [x[0] for x in solutions]
        ax.scatter(xs, [0] * len(xs), s=30)
        ax.set_yticks([])
        ax.set_xlabel("x1")
    else:
        ax.scatter([x[0] for x in solutions], [x[1] for x in solutions], s=30)
        ax.set_xlabel("x1")
        ax.set_ylabel("x2" if dim == 2 else "x2 (projection)")
        ax.set_ylim(-0.5, coord_bound + 0.5)
        ax.set_aspect("equal")
    ax.set_xlim(-0.5, coord_bound + 0.5)
    ax.grid(True, lw=0.3)
    ax.set_title(title or f"{len(solutions)} solution(s), coordinates <= {coord_bound}")
    fig.tight_layout()
    fig.savefig(path, metadata=PNG_METADATA)
    plt.close(fig)


def plot_automaton(path, aut, max_labels=40):
    """States at their first two coordinates.

    Parallel arcs share one arrow carrying all their labels; an arrow is
    dashed when every arc on it doubles. Self-loops are drawn as small rings.
    """
    fig, ax = plt.subplots(figsize=(5, 5))
    pos = {s: (s[0], s[1] if aut.dim > 1 else 0) for s in aut.states}
    grouped = defaultdict(list)
    for p, h, q in aut.arcs:
        grouped[pos[p], pos[q]].append(h)
    show_labels = len(grouped) <= max_labels
    for ((x0, y0), (x1, y1)), maps in grouped.items():
        doubling = all(h.is_double for h in maps)
        style = dict(lw=0.7, ls="--" if doubling else "-", color="0.45" if doubling else "C0")
        label = ", ".join(h.label() for h in maps)
        if (x0, y0) == (x1, y1):
            ax.add_patch(Circle((x0, y0 + 0.12), 0.12, fill=False, **style))
            where = (x0, y0 + 0.3)
        else:
            ax.annotate("", xy=(x1, y1), xytext=(x0, y0),
                        arrowprops=dict(arrowstyle="->", connectionstyle="arc3,rad=0.25", **style))
            # arc3 bends to the right of the travel direction
            dx, dy = x1 - x0, y1 - y0
            where = ((x0 + x1) / 2 + 0.125 * dy, (y0 + y1) / 2 - 0.125 * dx)
        if show_labels:
            ax.text(*where, label, fontsize=6, ha="center", va="center",
                    bbox=dict(boxstyle="round,pad=0.1", fc="white", ec="none", alpha=0.8))
    if pos:
        ax.scatter(*zip(*pos.values()), s=25, color="k", zorder=3)
        ax.scatter(*pos[aut.initial], s=80, facecolors="none", edgecolors="g", zorder=4,
                   label="initial")
        ax.scatter(*pos[aut.final], s=140, facecolors="none", edgecolors="r", zorder=4,
                   label="final")
        ax.legend(loc="upper right", fontsize=8)
        xs = [x for x, _ in pos.values()]
        ys = [y for _, y in pos.values()]
        ax.set_xlim(min(xs) - 1, max(xs) + 1)
        ax.set_ylim(min(ys) - 1, max(ys) + 1)
    for axis in (ax.xaxis, ax.yaxis):
        axis.set_major_locator(MaxNLocator(integer=True))
    ax.set_xlabel("b1")
    ax.set_ylabel("b2" if aut.dim > 1 else "")
    ax.set_title(f"{len(aut.states)} states, {len(aut.arcs)} arcs")
    ax.grid(True, lw=0.3)
    fig.tight_layout()
    fig.savefig(path, metadata=PNG_METADATA)
    plt.close(fig)


def write_report(directory, aut, solutions, dim, coord_bound):
    """Write solutions.csv, arcs.csv, solutions.png and automaton.png; return the paths."""
    os.makedirs(directory, exist_ok=True)
    paths = {
        "solutions.csv": os.path.join(directory, "solutions.csv"),
        "arcs.csv": os.path.join(directory, "arcs.csv"),
        "solutions.png": os.path.join(directory, "solutions.png"),
        "automaton.png": os.path.join(directory, "automaton.png"),
    }
    write_solutions_csv(paths["solutions.csv"], solutions, dim)
    write_arcs_csv(paths["arcs.csv"], aut)
    plot_solutions(paths["solutions.png"], solutions, dim, coord_bound)
    plot_automaton(paths["automaton.png"], aut)
    return paths
