"""
Greedy, annealing and branch-and-bound set cover
================================================

"""

from convcover.cover import AnnealParams, CoverInstance, anneal_cover, exact_cover, greedy_cover

# nine sets over ten elements where greedy grabs the big set first and pays for it
sets = [[0, 3, 4, 5, 8], [2, 5, 6, 7, 8], [1, 2, 6, 7, 9], [0, 1, 2, 3, 4, 5, 7], [3, 4, 7, 8, 9],
        [3, 5, 9], [2, 9], [6, 7], [2, 8]]
ci = CoverInstance.from_sets(sets, 10)

g = greedy_cover(ci, 0)
print("greedy", g.chosen)

# annealing: drop three sets, repair greedily, accept worse moves less often as it cools
a = anneal_cover(ci, AnnealParams(10_000, rng_seed=0), lower_bound=0)
print("anneal", a.chosen)

# branch and bound proves the optimum
e = exact_cover(ci)
print("exact", e.chosen, e.optimal, e.lower_bound)

# the rows are witnesses, so the instance round-trips as sparse json
print(ci.to_json()[:80])
