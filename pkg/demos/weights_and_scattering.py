"""Weights of a critical graph and the scattered-precolouring distance.

The weight counts how far a graph is from a near-triangulation with
tight lists; critical graphs keep it below a bound linear in the outer
length.  The second part prints the distance recursion and runs the
colourability check on a long strip with far apart precoloured vertices.
"""
import random

from listcrit.plane_graph import outer_cycle, wheel_graph
from listcrit.scattering import albertson_check, compute_D, random_albertson_instance, scatter_threshold
from listcrit.weights import check_preouf

g = wheel_graph(5)
lists = {v: {1, 2, 3} for v in outer_cycle(g)}
lists[g.n - 1] = {1, 2, 3, 4, 5}
ok, slack, rep = check_preouf(g, lists)
print("wheel W5: weight", rep.total, "bound", rep.bound, "holds:", ok)

print("D(2, k):", [compute_D(2, k) for k in range(1, 16)])
print("threshold for M=2:", scatter_threshold(2))

rng = random.Random(4)
for _ in range(3):
    g, lists = random_albertson_instance(rng.randint(30, 60), rng)
    rep = albertson_check(g, lists, required_distance=12)
    print("n=%d precoloured=%s colourable=%s (%s)" % (g.n, rep.precolored, rep.colorable, rep.label))
