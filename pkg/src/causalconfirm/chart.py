"""Group-rate chart: CSV data and a static SVG bar chart.

Bars show the outcome rate of every (group, cause) cell. Horizontal markers
show the pooled rate of each cause (dashed) and the adjusted rate (solid);
the distance between the two is the effect of re-weighting the groups.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .adjust import DoTable
from .tables import StratifiedDataset

WIDTH, HEIGHT = 800, 400
LEFT, RIGHT, TOP, BOTTOM = 70, 150, 30, 60
COLORS = ("#4c72b0", "#dd8452")


@dataclass(frozen=True)
class GroupChart:
    csv: str
    svg: str


def _nice_ceiling(x: float) -> float:
    if x <= 0.0:
        return 1.0
    exp = math.floor(math.log10(x))
    for step in (1, 2, 2.5, 5, 10):
        top = step * 10**exp
        if top >= x - 1e-12:
            return min(top, 1.0) if x <= 1.0 else top
    return 10 ** (exp + 1)


def _f(x: float) -> str:
    return f"{x:.2f}"


def emit_group_chart(dataset: StratifiedDataset, adjusted: DoTable) -> GroupChart:
    ref, alt = dataset.causes
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["group", "cause", "rate", "weight"])
    weights = (dataset.conditional_weights(0), dataset.conditional_weights(1))
    for i, g in enumerate(dataset.groups):
        for c, cause in enumerate(dataset.causes):
            w.writerow([g.label, cause, repr(float(dataset.rate(i, c))), repr(float(weights[c][i]))])

    pooled = [float(v) for v in dataset.pooled_rates()]
    adj = [adjusted.p_y1_do_x0, adjusted.p_y1_do_x1]
    rates = [float(dataset.rate(i, c)) for i in range(len(dataset.groups)) for c in (0, 1)]
    ymax = _nice_ceiling(max(rates + pooled + adj))
    plot_w = WIDTH - LEFT - RIGHT
    plot_h = HEIGHT - TOP - BOTTOM

    def y(v: float) -> float:
        return TOP + plot_h * (1.0 - v / ymax)

    n = len(dataset.groups)
    slot = plot_w / n
    bar = slot * 0.35
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    for k in range(5):
        v = ymax * k / 4
        parts.append(
            f'<line x1="{LEFT}" y1="{_f(y(v))}" x2="{LEFT + plot_w}" y2="{_f(y(v))}" stroke="#dddddd"/>'
        )
        parts.append(
            f'<text x="{LEFT - 6}" y="{_f(y(v) + 4)}" text-anchor="end">{v:.4g}</text>'
        )
    parts.append(f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{TOP + plot_h}" stroke="black"/>')
    parts.append(
        f'<line x1="{LEFT}" y1="{TOP + plot_h}" x2="{LEFT + plot_w}" y2="{TOP + plot_h}" stroke="black"/>'
    )
    label = escape(f"P({dataset.outcome_labels[0]}|x,g)")
    parts.append(
        f'<text x="14" y="{_f(TOP + plot_h / 2)}" text-anchor="middle" '
        f'transform="rotate(-90 14 {_f(TOP + plot_h / 2)})">{label}</text>'
    )
    for i, g in enumerate(dataset.groups):
        x0 = LEFT + slot * i + (slot - 2 * bar) / 2
        for c in (0, 1):
            v = float(dataset.rate(i, c))
            parts.append(
                f'<rect class="bar" data-group="{escape(g.label)}" data-cause="{escape(dataset.causes[c])}" '
                f'x="{_f(x0 + c * bar)}" y="{_f(y(v))}" width="{_f(bar)}" '
                f'height="{_f(TOP + plot_h - y(v))}" fill="{COLORS[c]}"/>'
            )
        parts.append(
            f'<text x="{_f(LEFT + slot * (i + 0.5))}" y="{TOP + plot_h + 16}" '
            f'text-anchor="middle">{escape(g.label)}</text>'
        )
    for c, cause in enumerate((ref, alt)):
        for kind, v, dash in (("observed", pooled[c], ' stroke-dasharray="6 4"'), ("adjusted", adj[c], "")):
            parts.append(
                f'<line class="marker" data-kind="{kind}" data-cause="{escape(cause)}" '
                f'x1="{LEFT}" y1="{_f(y(v))}" x2="{LEFT + plot_w}" y2="{_f(y(v))}" '
                f'stroke="{COLORS[c]}" stroke-width="2"{dash}/>'
            )
    lx = LEFT + plot_w + 12
    legend = [
        (COLORS[0], "", f"{ref}: bars"),
        (COLORS[1], "", f"{alt}: bars"),
        ("#555555", ' stroke-dasharray="6 4"', "pooled P(y|x)"),
        ("#555555", "", f"adjusted ({adjusted.role_used.value})"),
    ]
    for k, (color, dash, text) in enumerate(legend):
        ly = TOP + 10 + 18 * k
        parts.append(
            f'<line x1="{lx}" y1="{ly}" x2="{lx + 20}" y2="{ly}" stroke="{color}" stroke-width="4"{dash}/>'
        )
        parts.append(f'<text x="{lx + 26}" y="{ly + 4}">{escape(text)}</text>')
    parts.append("</svg>")
    return GroupChart(buf.getvalue(), "\n".join(parts) + "\n")
