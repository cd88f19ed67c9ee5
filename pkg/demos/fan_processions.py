"""Fan processions and their dangerous list assignments.

A procession glues fans and fat fans along a base path x y z.  Even
processions carry a list assignment that leaves some precolouring of the
base unextendable; odd fat fans do not.
"""
from listcrit.fans import FanProcessionSpec, build_procession, count_bad_precolorings, dangerous_witness, enumerate_specs

for text in ["fan:2", "fatfan:2", "fatfan:3", "fan:1,fatfan:2"]:
    proc = build_procession(FanProcessionSpec.parse(text))
    w = dangerous_witness(proc)
    if w is None:
        print("%-16s n=%2d  no dangerous witness" % (text, proc.graph.n))
        continue
    lists, _ = w
    bad, _ = count_bad_precolorings(proc, lists=lists)
    print("%-16s n=%2d  bad base precolourings: %d" % (text, proc.graph.n, bad))

print("processions with at most 9 vertices:", len(enumerate_specs(9)))
