"""Atiyah-Hirzebruch pages and long exact sequences end to end."""

import json

from extforge.pipelines import TARGETS, load_les
from extforge.ssengine import deduce

for target in ("ex-spin", "dim9-lift", "bordism-ranks"):
    rep = TARGETS[target]()
    print(f"{target}: {rep['verdict']}")

for group in ("U2", "SU3", "Sp2"):
    print(f"ex-even {group}: {TARGETS['ex-even'](group)['verdict']}")

table = deduce(load_les("FIG_BSTRINGH"))
print(table)
print(json.dumps(table.provenance, indent=1))
