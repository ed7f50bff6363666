import re

from extforge.extcalc import ExtChart, compute_chart, trivial_module
from extforge.pipelines import n3_chart
from extforge.render import CELL, DOT_R, chart_to_ascii, chart_to_svg
from extforge.steenrod import builtin_algebra


def e1_chart():
    return compute_chart(trivial_module(builtin_algebra("E1(2)")), 4, 8, ops=("h0",))


def test_svg_is_deterministic():
    c = e1_chart()
    assert chart_to_svg(c) == chart_to_svg(c)
    assert chart_to_svg(c, "t").encode() == chart_to_svg(e1_chart(), "t").encode()


def test_svg_constants_and_vertical_h0_edges():
    chart, _ = n3_chart(6, 21)
    svg = chart_to_svg(chart)
    assert svg.startswith("<?xml") and 'version="1.1"' in svg
    assert f'r="{DOT_R}"' in svg
    lines = re.findall(r'<line class="h0" x1="(\d+)" y1="(\d+)" x2="(\d+)" y2="(\d+)"', svg)
    assert lines
    for x1, y1, x2, y2 in lines:
        # one filtration up, same stem column (dots sharing a bidegree are spread sideways)
        assert int(y1) - int(y2) == CELL and abs(int(x1) - int(x2)) < CELL // 2
    assert sum(x1 == x2 for x1, _, x2, _ in lines) > len(lines) // 2
    xs = sorted({(int(a) - 30) // CELL for a, _, _, _ in lines})
    assert [x for x in xs if x <= 15] == [0, 4, 8, 12]


def test_empty_chart():
    c = ExtChart(prime=2, dims={}, edges={}, max_s=0, max_t=0)
    svg = chart_to_svg(c)
    assert "<circle" not in svg and svg.rstrip().endswith("</svg>")
    assert chart_to_ascii(c).splitlines()[0] == "  0 |."


def test_ascii_e1_towers():
    c = compute_chart(trivial_module(builtin_algebra("E1(2)")), 6, 16, ops=("h0",))
    rows = chart_to_ascii(c, max_stem=8).splitlines()
    grid = [r.split("|", 1)[1] for r in rows[:-2]]
    occupied = sorted({n for r in grid for n, ch in enumerate(r) if ch.isdigit()})
    assert occupied == [0, 2, 4, 6, 8]
    assert rows[-1].strip() == "012345678"
