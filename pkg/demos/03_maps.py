"""iota, nu and STU on small examples.

Run with ``python demos/03_maps.py``.
"""

from ddlab import diagrams as dg
from ddlab import exactlin as el
from ddlab import maps as mp
from ddlab import relations as rl
from ddlab import trivalent as tv

# iota keeps one chord from each pair, with a sign per chosen - chord.
crossed = dg.make("chord", "C", [(1, 2, 1, 2)])
d = mp.nu(crossed)
print("nu of 1 2 1 2:\n" + str(d))
print("\niota(nu(D)):\n" + mp.serialize_combo(mp.iota(d)))
rest = mp.iota(d) - el.combo((1, crossed))
print("every other term has an isolated chord:",
      all(dg.has_isolated_chord(c) for c in rest.keys()))

# The four selections of the Milnor generator are isomorphic chord
# diagrams with signs + - - +, so its iota image cancels.
print("\niota(mu) before merging:")
for sign, c in mp.iota_expansion(mp.mu_generator()):
    print(f"  {sign:+d} * " + str(c).replace("\n", " / "))
print("iota(mu) is zero:", not mp.iota(mp.mu_generator()))

# STU turns the Y diagram on a circle into T - U.
y = tv.make_trivalent("C", [(1, 2, 3)], 1, [((1, 0), (4, 0)), ((2, 0), (4, 1)), ((3, 0), (4, 2))])
print("\nY diagram:\n" + str(y))
print("STU:\n" + mp.serialize_combo(mp.stu_reduce(y)))

# On three strands the naive nu depends on the order the - chords are added.
s = rl.gen_dd_relations(2, "III")
for c in dg.enumerate_diagrams("chord", 2, "III"):
    a, b = mp.nu_stacked(c, [1, 2]), mp.nu_stacked(c, [2, 1])
    if not s.contains(el.combo((1, a), (-1, b))):
        print("\norder matters for:\n" + str(c))
        break
