"""
Maximal convex polygons of an L-shaped room
===========================================

"""

# an L-shaped polygon with six vertices
from convcover.fixtures import LSH
print(LSH.outer)

# two vertices see each other when the segment between them stays in the room
from convcover.collect import enumerate_maximal_convex, point_set, visibility_adjacent
V = point_set(LSH, "V")
for u in V:
    print(u, [v for v in V if v != u and visibility_adjacent(LSH, u, v)])

# maximal cliques of that graph whose hull fits give the V-maximal polygons
for C in enumerate_maximal_convex(LSH, V):
    print(C.vertices)

# adding the S1 points (ends of extended edges) changes nothing here
print(len(enumerate_maximal_convex(LSH, point_set(LSH, "V+S1"))))

# bloating grows a small triangle until no vertex fits
import numpy as np
from convcover.collect import bloat
from convcover.geom import ConvexPolygon
seed = ConvexPolygon.from_points([(0, 0), (1, 0), (0, 1)])
for s in range(4):
    print(bloat(LSH, seed, "V", np.random.default_rng(s)).vertices)
