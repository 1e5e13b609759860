"""Upper-half-plane pictures and experiment charts.

Vertices sit on the real axis at their rational values; an edge is the
semicircle orthogonal to the axis through its endpoints, and edges to 1/0
are vertical rays.  Figures are written through a temp file so partial
output never lands at the target path.
"""

from __future__ import annotations

import colorsys
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Arc

from .core import FareyVertex, INFINITY
from .levelgraph import LevelGraph


@dataclass(frozen=True)
class Scene:
    """Plot-ready geometry: labeled axis points, semicircle arcs, rays."""

    points: tuple[tuple[float, str, str], ...]  # (x, label, color)
    arcs: tuple[tuple[float, float, str], ...]  # (x1, x2, color)
    rays: tuple[tuple[float, str], ...]         # (x, color) vertical to 1/0
    x_lo: float
    x_hi: float
    title: str = ""


def palette(n: int) -> list[str]:
    """n visually distinct colors, deterministic, injective for any n."""
    base = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"]
    if n <= len(base):
        return base[:n]
    out = []
    for i in range(n):
        r, g, b = colorsys.hsv_to_rgb(i / n, 0.75, 0.85 if i % 2 else 0.65)
        out.append(f"#{int(r * 255):02x}{int(g * 255):02x}{int(b * 255):02x}")
    assert len(set(out)) == n
    return out


def _value(v: FareyVertex) -> float:
    return v.p / v.q


def component_scene(g: LevelGraph, x_lo: float | None = None,
                    x_hi: float | None = None) -> Scene:
    """One color per connected component, as in the half-plane pictures."""
    labels = sorted({g.component_rep(v) for v in g.vertices},
                    key=lambda v: v.key)
    colors = dict(zip(labels, palette(len(labels))))
    points = []
    finite_x = []
    for v in g.vertices:
        if v.is_infinity:
            continue
        x = _value(v)
        finite_x.append(x)
        points.append((x, str(v), colors[g.component_rep(v)]))
    arcs = []
    rays = []
    for i, v in enumerate(g.vertices):
        c = colors[g.component_rep(v)]
        for j in g.adj[i]:
            if j < i:
                continue
            w = g.vertices[j]
            if v.is_infinity:
                rays.append((_value(w), c))
            elif w.is_infinity:
                rays.append((_value(v), c))
            else:
                arcs.append((_value(v), _value(w), c))
    if not finite_x:
        finite_x = [0.0]
    lo = x_lo if x_lo is not None else min(finite_x) - 0.5
    hi = x_hi if x_hi is not None else max(finite_x) + 0.5
    title = f"{g.mode} k={g.k}, {g.window.kind} {g.window.bound}"
    return Scene(tuple(points), tuple(arcs), tuple(rays), lo, hi, title)


def certificate_scene(vertices, k: int) -> Scene:
    """All pairwise edges of a clique certificate in one color."""
    from .core import det_pair

    color = "#1f77b4"
    pts = []
    arcs = []
    rays = []
    finite = [v for v in vertices if not v.is_infinity]
    has_inf = any(v.is_infinity for v in vertices)
    for v in finite:
        pts.append((_value(v), str(v), color))
        if has_inf:
            rays.append((_value(v), color))
    for i, v in enumerate(finite):
        for w in finite[i + 1:]:
            if det_pair(v, w) <= k:
                arcs.append((_value(v), _value(w), color))
    xs = [x for x, _, _ in pts] or [0.0]
    return Scene(tuple(pts), tuple(arcs), tuple(rays),
                 min(xs) - 0.5, max(xs) + 0.5,
                 f"clique certificate, {len(list(vertices))} vertices, k={k}")


def draw_scene(scene: Scene, path: str, width: float = 11.0) -> None:
    span = max(scene.x_hi - scene.x_lo, 1e-9)
    max_r = max([abs(b - a) / 2 for a, b, _ in scene.arcs] or [span / 8])
    height = width * min(max_r * 1.15 / span + 0.12, 0.75)
    fig, ax = plt.subplots(figsize=(width, max(height, 2.2)))
    ray_h = max_r * 1.1
    for a, b, c in scene.arcs:
        center = (a + b) / 2
        r = abs(b - a)
        ax.add_patch(Arc((center, 0), r, r, theta1=0, theta2=180,
                         edgecolor=c, linewidth=0.8))
    for x, c in scene.rays:
        ax.plot([x, x], [0, ray_h], color=c, linewidth=0.8)
    if scene.points:
        xs, cs = zip(*[(x, c) for x, _, c in scene.points])
        ax.scatter(xs, [0] * len(xs), c=list(cs), s=14, zorder=3)
    if len(scene.points) <= 40:
        for x, label, _ in scene.points:
            ax.annotate(label, (x, 0), xytext=(0, -10),
                        textcoords="offset points", ha="center", fontsize=7)
    ax.set_xlim(scene.x_lo, scene.x_hi)
    ax.set_ylim(-max_r * 0.12, ray_h * 1.05)
    ax.set_aspect("equal")
    ax.axhline(0, color="black", linewidth=0.6)
    ax.set_yticks([])
    if scene.title:
        ax.set_title(scene.title, fontsize=10)
    _save(fig, path)


def sweep_figure(levels, b0_values, k: int, path: str) -> None:
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.step(levels, b0_values, where="post")
    ax.set_xlabel("level cap m")
    ax.set_ylabel("components")
    ax.set_title(f"component count of the exact-{k} graph by window level")
    ax.grid(True, alpha=0.3)
    _save(fig, path)


def table_figure(rows, path: str) -> None:
    """Chart of lower/upper/Agol clique bounds by k."""
    ks = [r.k for r in rows]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.plot(ks, [r.agol_bound for r in rows], "s--", label="1 + next prime",
            color="#7f7f7f", markersize=4)
    ax.plot(ks, [r.upper for r in rows], "^-", label="line-count upper",
            color="#d62728", markersize=4)
    ax.plot(ks, [r.lower for r in rows], "o-", label="best clique found",
            color="#1f77b4", markersize=4)
    ax.set_xlabel("k")
    ax.set_ylabel("clique size / colors")
    ax.legend()
    ax.grid(True, alpha=0.3)
    _save(fig, path)


def _save(fig, path: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    suffix = os.path.splitext(path)[1] or ".svg"
    fd, tmp = tempfile.mkstemp(suffix=suffix, dir=directory)
    os.close(fd)
    try:
        fig.savefig(tmp, bbox_inches="tight")
        os.replace(tmp, path)
    finally:
        plt.close(fig)
        if os.path.exists(tmp):  # replace failed
            os.unlink(tmp)
