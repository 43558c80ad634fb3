"""Figure rendering for the report paths (written to files, never shown)."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from plumblat.plumbing import PlumbingGraph


def save_graph_figure(g: PlumbingGraph, path: str) -> str:
    """Draw the weighted tree: center at the origin, legs along rays."""
    fig, ax = plt.subplots(figsize=(6, 4))
    positions = {}
    labels = {}
    if g.is_star:
        positions[0] = (0.0, 0.0)
        labels[0] = -g.center
        directions = [(1.0, 0.6), (1.0, 0.0), (1.0, -0.6)]
        idx = 1
        for leg, (dx, dy) in zip(g.legs, directions):
            for k, a in enumerate(leg, start=1):
                positions[idx] = (k * dx, k * dy)
                labels[idx] = -a
                idx += 1
    else:
        for i, a in enumerate(g.legs[0]):
            positions[i] = (float(i), 0.0)
            labels[i] = -a
    for i, j in g.edges():
        (x1, y1), (x2, y2) = positions[i], positions[j]
        ax.plot([x1, x2], [y1, y2], color="black", lw=1, zorder=1)
    for i, (x, y) in positions.items():
        ax.scatter([x], [y], s=60, color="black", zorder=2)
        ax.annotate(str(labels[i]), (x, y), textcoords="offset points", xytext=(0, 9), ha="center")
    ax.set_axis_off()
    ax.set_title(g.to_text())
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_point_rule_figure(string, complement, path: str) -> str:
    """The Riemenschneider dot diagram with row and column counts."""
    fig, ax = plt.subplots(figsize=(6, 4))
    col = 0
    for row, a in enumerate(string):
        xs = list(range(col, col + a - 1))
        ax.scatter(xs, [-row] * len(xs), s=40, color="black")
        col += a - 2
    ax.set_yticks([-i for i in range(len(string))])
    ax.set_yticklabels([str(a) for a in string])
    ax.set_xticks(range(len(complement)))
    ax.set_xticklabels([str(b) for b in complement])
    ax.xaxis.tick_top()
    ax.set_frame_on(False)
    ax.set_title(
        "rows %s | columns %s" % (",".join(map(str, string)), ",".join(map(str, complement))),
        pad=28,
    )
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_sweep_figure(report, path: str) -> str:
    """Bar chart of embeddable vs non-embeddable counts per I value."""
    fig, ax = plt.subplots(figsize=(6, 4))
    values = sorted({v.I for v in report.verdicts})
    emb = [sum(1 for v in report.verdicts if v.I == i and v.embeddable) for i in values]
    non = [sum(1 for v in report.verdicts if v.I == i and not v.embeddable) for i in values]
    xs = range(len(values))
    ax.bar(xs, non, color="lightgray", label="not embeddable")
    ax.bar(xs, emb, bottom=non, color="black", label="embeddable")
    ax.set_xticks(list(xs))
    ax.set_xticklabels([str(i) for i in values])
    ax.set_xlabel("I")
    ax.set_ylabel("graphs")
    ax.set_title("n = %d" % report.n)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_families_figure(report, path: str) -> str:
    """Instances checked per family row, failures highlighted."""
    fig, ax = plt.subplots(figsize=(7, 4))
    rows: dict[str, list[int]] = {}
    for c in report.checks:
        key = "%s %s" % (c.descriptor.source, c.descriptor.row)
        ok, bad = rows.setdefault(key, [0, 0])
        rows[key][0 if c.ok else 1] += 1
    keys = sorted(rows)
    xs = range(len(keys))
    ax.bar(xs, [rows[k][0] for k in keys], color="black", label="ok")
    ax.bar(xs, [rows[k][1] for k in keys], bottom=[rows[k][0] for k in keys], color="red", label="fail")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(keys, rotation=60, ha="right", fontsize=7)
    ax.set_ylabel("instances")
    ax.set_title("family instances with n <= %d" % report.max_n)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def ensure_dir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path
