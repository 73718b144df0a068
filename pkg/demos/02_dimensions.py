"""Quotient dimensions of DD and wedge diagram spaces.

Run with ``python demos/02_dimensions.py``.  Takes a few seconds.
"""

import math

from ddlab import relations as rl
from ddlab import workbench as wb

table = wb.cmd_table(2, 4)
print(table.text())

# Degree 2 comes out as m + C(m, 3): one class per circle (seen by the
# framed chord invariant of that component) plus one per triple of circles.
print("\nm + C(m,3):", [m + math.comb(m, 3) for m in range(1, 5)])

# On one circle the DD quotient matches chord diagrams modulo 4T and the
# framing relation, degree by degree.
for d in range(3):
    print(f"degree {d}: dd {rl.gen_dd_relations(d, 1).quotient_dim()}, "
          f"framed chord {rl.gen_framing(d, 1).quotient_dim()}")
