"""The catalog of critical graphs with a chordless outer cycle.

Lengths up to 7 finish in a few seconds.  Pass a larger length on the
command line to go further (length 8 takes about half a minute).
"""
import sys

from listcrit.enumerator import Budget, Enumerator

top = int(sys.argv[1]) if len(sys.argv) > 1 else 7
enum = Enumerator(Budget())
for k in range(3, top + 1):
    cat = enum.chordless(k)
    c = cat.counts()
    print("length %d: %d near-triangulations, %d critical, %d undecided"
          % (k, c["near_triangulations"], c["exact_critical"], c["survivors"]))

# The length-6 near-triangulations, by interior degrees.
for e in enum.chordless(6).near_triangulations():
    g = e.graph
    inner = [v for v in range(g.n) if v not in set(e.boundary)]
    print("  n=%d interior degrees %s" % (g.n, sorted(g.degree(v) for v in inner)))
