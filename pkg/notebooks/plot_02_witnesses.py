"""
Witnesses for a family of convex polygons
=========================================

"""

from convcover.fixtures import DON, LSH, Q1, Q2
from convcover.witness import arrangement_witnesses, covers, quick_vertex_witnesses, vertex_witnesses

# one witness per face of the overlay of P and the family
aw = arrangement_witnesses(LSH, [Q1, Q2])
print(len(aw), [w.p for w in aw])

# vertex witnesses keep only faces that touch a polygon vertex
print(len(vertex_witnesses(LSH, [Q1, Q2])))

# quick witnesses sit on vertices and carry a direction into the gap they probe
for w in quick_vertex_witnesses(LSH, [Q1, Q2]):
    print(w.p, w.dir)

# a directed witness at a corner is covered only if the polygon extends that way
w = quick_vertex_witnesses(LSH, [Q1, Q2]).witnesses[0]
print(w, covers(Q1, w), covers(Q2, w))

# the donut: its collection, then witnesses of each kind
from convcover.collect import CollectionConfig, build_collection
coll = build_collection(DON, CollectionConfig(method="bk", rounds=())).polygons
print(len(coll), len(arrangement_witnesses(DON, coll)), len(vertex_witnesses(DON, coll)),
      len(quick_vertex_witnesses(DON, coll)))
