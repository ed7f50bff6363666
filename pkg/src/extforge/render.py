"""SVG and ASCII renderings of Ext charts (Adams grading: x = t - s, y = s).

Layout constants live here and nowhere else so that renders are byte-stable.
"""

from __future__ import annotations

import numpy as np

from .extcalc.resolution import ExtChart

CELL = 20        # px per unit in x and y
DOT_R = 3        # dot radius, px
MARGIN = 30      # room for axis labels, px
DOT_SPREAD = 6   # horizontal offset between dots sharing a bidegree, px
OP_COLOURS = {"h0": "#000000", "v1": "#1f77b4", "y1": "#d62728", "y2": "#2ca02c",
              "h1": "#9467bd", "h2": "#8c564b"}


def chart_extent(chart: ExtChart) -> tuple[int, int]:
    """``(max stem, max filtration)`` drawn for the chart."""
    stems = [t - s for s, t in chart.nonzero()]
    return max(stems + [chart.max_t, 0]), max(chart.max_s, 0)


def _dot_positions(chart: ExtChart, n_max: int, s_max: int) -> dict:
    pos = {}
    height = MARGIN + (s_max + 1) * CELL
    for (s, t) in chart.nonzero():
        n = t - s
        if n > n_max or s > s_max:
            continue
        d = chart.dim(s, t)
        x0 = MARGIN + n * CELL + CELL // 2 - (d - 1) * DOT_SPREAD // 2
        y = height - s * CELL - CELL // 2
        for i in range(d):
            pos[(s, t, i)] = (x0 + i * DOT_SPREAD, y)
    return pos


def chart_to_svg(chart: ExtChart, title: str | None = None) -> str:
    n_max, s_max = chart_extent(chart)
    width = MARGIN * 2 + (n_max + 1) * CELL
    height = MARGIN * 2 + (s_max + 1) * CELL
    base = MARGIN + (s_max + 1) * CELL
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
    ]
    if title:
        out.append(f'<title>{title}</title>')
    # axes and grid labels
    out.append(f'<line x1="{MARGIN}" y1="{base}" x2="{MARGIN + (n_max + 1) * CELL}" y2="{base}" '
               'stroke="#888888" stroke-width="1"/>')
    out.append(f'<line x1="{MARGIN}" y1="{base}" x2="{MARGIN}" y2="{MARGIN}" '
               'stroke="#888888" stroke-width="1"/>')
    for n in range(0, n_max + 1):
        x = MARGIN + n * CELL + CELL // 2
        out.append(f'<text x="{x}" y="{base + 14}" font-size="9" text-anchor="middle">{n}</text>')
    for s in range(0, s_max + 1):
        y = base - s * CELL - CELL // 2 + 3
        out.append(f'<text x="{MARGIN - 6}" y="{y}" font-size="9" text-anchor="end">{s}</text>')
    pos = _dot_positions(chart, n_max, s_max)
    # edges
    for op in sorted(chart.edges):
        k = chart.op_degrees.get(op)
        colour = OP_COLOURS.get(op, "#555555")
        for (s, t) in sorted(chart.edges[op]):
            m = np.asarray(chart.edges[op][(s, t)])
            for a in range(m.shape[0]):
                for b in range(m.shape[1]):
                    if m[a, b] % chart.prime == 0:
                        continue
                    p0 = pos.get((s, t, b))
                    p1 = pos.get((s + 1, t + k, a))
                    if p0 is None or p1 is None:
                        continue
                    out.append(f'<line class="{op}" x1="{p0[0]}" y1="{p0[1]}" x2="{p1[0]}" '
                               f'y2="{p1[1]}" stroke="{colour}" stroke-width="1"/>')
    for key in sorted(pos):
        x, y = pos[key]
        out.append(f'<circle cx="{x}" cy="{y}" r="{DOT_R}" fill="#000000"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def chart_to_ascii(chart: ExtChart, max_stem: int | None = None) -> str:
    """One character per stem: ``.`` empty, the dimension otherwise (``*`` if > 9).

    Positions with ``t > max_t`` (not computed) are left blank.
    """
    n_max, s_max = chart_extent(chart)
    if max_stem is not None:
        n_max = max_stem
    lines = []
    for s in range(s_max, -1, -1):
        row = []
        for n in range(0, n_max + 1):
            d = chart.dim(s, n + s)
            if n + s > chart.max_t:
                row.append(" ")  # outside the computed range
                continue
            row.append("." if d == 0 else (str(d) if d < 10 else "*"))
        lines.append(f"{s:>3} |" + "".join(row))
    lines.append("    +" + "-" * (n_max + 1))
    lines.append("     " + "".join(str(n % 10) for n in range(0, n_max + 1)))
    return "\n".join(lines) + "\n"
