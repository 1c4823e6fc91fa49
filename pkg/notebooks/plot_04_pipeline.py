"""
From polygon to verified cover
==============================

"""

import numpy as np

from convcover.collect import CollectionConfig
from convcover.fixtures import random_polygon_with_holes
from convcover.model import verify
from convcover.pipeline import PipelineConfig, merge_solutions, solve

rng = np.random.default_rng(4242)
P = random_polygon_with_holes(rng, 12, 3, grid=60, name="demo")
print(len(P.outer), "outer vertices,", len(P.holes), "holes")

# quick witnesses are cheap but may miss cells; the loop adds centroids of what stayed uncovered
cfg = PipelineConfig(collection=CollectionConfig(replication=2), solver="greedy")
s, r = solve(P, cfg)
print(len(s), r.iterations_used, r.witness_counts, r.sizes)

# patch-and-stop fills the holes in one go instead
s2, r2 = solve(P, PipelineConfig(solver="greedy", patch_mode="patch_and_stop"))
print(len(s2), r2.patched)

# several seeds, then a re-solve over the union of their polygons
sols = [solve(P, PipelineConfig(collection=CollectionConfig(seed=k), solver="greedy", seed=k))[0] for k in range(5)]
m, _ = merge_solutions(P, sols, PipelineConfig(solver="exact"))
print([len(x) for x in sols], "->", len(m))
print(verify(P, m))
