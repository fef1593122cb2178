"""Report output: delimited component summaries and matplotlib renderings of
graphs, written to files next to the textual results."""

from __future__ import annotations

import math
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .graphs import components_and_diameters


def component_rows(graph):
    """Delimited rows (header first) describing each connected component."""
    rows = ["component\tsize\tis_clique\tdiameter\tvertices"]
    for i, summary in enumerate(components_and_diameters(graph)):
        verts = ",".join(str(v) for v in summary.vertices)
        rows.append(f"{i}\t{summary.size}\t{int(summary.is_clique)}\t{summary.diameter}\t{verts}")
    return rows


def write_component_table(path, graph):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(component_rows(graph)) + "\n")
    return path


def _layout(graph):
    """Deterministic positions: one circle per component, components packed on
    a grid, larger components first."""
    summaries = sorted(
        components_and_diameters(graph), key=lambda s: (-s.size, s.vertices)
    )
    cols = max(1, math.ceil(math.sqrt(len(summaries)))) if summaries else 1
    pos = {}
    for idx, summary in enumerate(summaries):
        cx, cy = (idx % cols) * 3.0, -(idx // cols) * 3.0
        k = summary.size
        radius = 1.0 if k > 1 else 0.0
        for j, v in enumerate(summary.vertices):
            angle = 2 * math.pi * j / max(k, 1)
            pos[v] = (cx + radius * math.cos(angle), cy + radius * math.sin(angle))
    return pos


def render_graph_figure(graph, path, title=None):
    """Draw the graph to an image file; returns the path."""
    path = os.fspath(path)
    pos = _layout(graph)
    fig, ax = plt.subplots(figsize=(8, 8))
    for u, v in graph.edges():
        (x1, y1), (x2, y2) = pos[u], pos[v]
        ax.plot([x1, x2], [y1, y2], color="#4477aa", linewidth=0.8, zorder=1)
    xs = [pos[v][0] for v in range(graph.order)]
    ys = [pos[v][1] for v in range(graph.order)]
    ax.scatter(xs, ys, s=30, color="#222222", zorder=2)
    if graph.order <= 60:
        for v in range(graph.order):
            tag = graph.vertex_tags[v] if graph.vertex_tags is not None else str(v)
            ax.annotate(tag, pos[v], textcoords="offset points", xytext=(4, 4), fontsize=7)
    if title:
        ax.set_title(title)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.tight_layout()
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
