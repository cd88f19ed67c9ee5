"""Extending a precolouring with the exact solver.

A wheel with 3-lists on the rim and 5-lists at the hub; fix two adjacent
rim vertices and ask for an extension.  Then check that removing a rim
colour can break it.
"""
from listcrit.coloring import is_proper_coloring, solve_extension
from listcrit.plane_graph import outer_cycle, wheel_graph

g = wheel_graph(5)
rim = outer_cycle(g)
hub = g.n - 1
lists = {v: {1, 2, 3} for v in rim}
lists[hub] = {1, 2, 3, 4, 5}

col = solve_extension(g, lists, fixed={rim[0]: 1, rim[1]: 2})
print("extension:", col)
print("proper:", col is not None and is_proper_coloring(g, col, lists))

# Tighter lists: every rim vertex shares the same pair, which forces an
# odd cycle of length 5 to be 2-coloured.
tight = {v: {1, 2} for v in rim}
tight[hub] = {3}
print("5-cycle from {1,2}:", solve_extension(g, tight))
