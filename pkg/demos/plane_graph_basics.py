"""Plane graphs as rotation systems.

Builds a wheel, walks its faces, cuts it open along a path and checks
that the canonical form ignores vertex names.
"""
import random

from listcrit.plane_graph import (
    canonical_form,
    cut_along_path,
    euler_holds,
    outer_cycle,
    trace_faces,
    wheel_graph,
    write_plg,
)

g = wheel_graph(6)
print(write_plg(g))
print("faces:", [f.vertices for f in trace_faces(g)])
print("outer cycle (counter-clockwise):", outer_cycle(g))
print("Euler formula holds:", euler_holds(g))

# Cut along a path through the hub; both sides of the cut get a copy.
hub = g.n - 1
cyc = outer_cycle(g)
cut, q_left, q_right, origin = cut_along_path(g, [cyc[0], hub, cyc[3]])
print("after the cut: n=%d m=%d" % (cut.n, cut.m))
print("left copy", q_left, "right copy", q_right)

# Relabel at random: the canonical form does not move.
perm = list(range(g.n))
random.Random(1).shuffle(perm)
print("canonical form invariant:", canonical_form(g) == canonical_form(g.relabel(perm)))
