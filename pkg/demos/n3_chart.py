"""Ext of N3 over the tmf algebra at p = 3, with h0, y1, y2 and an ASCII chart.

    python3 demos/n3_chart.py [max_s] [max_t]
"""

import sys

from extforge.pipelines import n3_chart
from extforge.render import chart_to_ascii, chart_to_svg

max_s = int(sys.argv[1]) if len(sys.argv) > 1 else 6
max_t = int(sys.argv[2]) if len(sys.argv) > 2 else 22

chart, over_b = n3_chart(max_s, max_t)
print(chart_to_ascii(chart, max_stem=15))
print("nonzero stems <= 15:", [n for n in chart.columns() if n <= 15])
for op in ("h0", "y1", "y2"):
    ok = all(chart.op_injective_in_column(n, op) for n in range(16))
    print(f"{op} injective through stem 15: {ok}")
with open("n3_chart.svg", "w", encoding="utf-8") as fh:
    fh.write(chart_to_svg(chart, title="Ext over A^tmf of N3"))
print("wrote n3_chart.svg")
