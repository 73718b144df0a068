"""A tour of the diagram data model.

Run with ``python demos/01_diagrams.py``.
"""

from ddlab import diagrams as dg
from ddlab import maps as mp

# A DD diagram pairs a + chord with a - chord.  On one circle the two
# degree-1 diagrams are the parallel block and the crossed pattern.
for d in dg.enumerate_diagrams("dd", 1, 1):
    print(d, "\nisolated pairs:", dg.isolated_pairs(d), "\n")

# Rotating a circle does not change the diagram.
a = dg.parse_diagram("kind: dd\nskeleton: C\ncomp 1: 1+ 1- 1- 1+")
print("canonical form of 1+ 1- 1- 1+:", str(a.canonical()).splitlines()[-1])

# Degree 2 on three circles splits into three classes by isolated pairs.
counts = {}
for d in dg.enumerate_diagrams("dd", 2, 3):
    c = dg.classify_degree2(d)
    counts[c] = counts.get(c, 0) + 1
for cls, title in dg.CLASS_TITLES.items():
    print(f"{title}: {counts[cls]}")

# The Milnor generator lives in the last class.
mu = mp.mu_generator()
print("\nmu generator:\n" + str(mu))
print("class:", dg.classify_degree2(mu))

# A wedge shares one tip between the two chords of a pair; splitting the
# tip gives a DD diagram.
w = dg.make("wedge", "CC", [(3,), (4, 5)])
print("\nwedge:\n" + str(w) + "\nas a DD diagram:\n" + str(dg.wedge_to_dd(w)))
