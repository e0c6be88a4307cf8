"""The weighted set-cover gadget and its optimum.

Each subset becomes a chain hanging off a clique on the universe. A minimum
cover D* leaves one light middle edge on each chosen chain and two edges on
the others, for total weight alpha |D*| + eps |S|. That identity holds for
matching distance 2 (l = 1). At distance 4 (l = 2) the universe clique is
too close to the chain starts, and the optimum instead follows a dominating
set of the subsets' intersection graph.
"""
import itertools

from distmatch import Graph, SetCoverInstance, domination_number, min_weight_maximal_matching, setcover_to_wmmm
from distmatch.gadgets import matching_to_cover

inst = SetCoverInstance(3, ((0, 1), (1, 2)))
d_star = inst.min_cover()
inter = Graph(len(inst.subsets), [
    (i, j) for i, j in itertools.combinations(range(len(inst.subsets)), 2)
    if set(inst.subsets[i]) & set(inst.subsets[j])
])
print("subsets:", inst.subsets, "minimum cover:", d_star)
print("intersection graph domination number:", domination_number(inter, 1)[0])

for l in (1, 2):
    gd = setcover_to_wmmm(l, inst)
    p = gd.params
    best = min_weight_maximal_matching(gd.graph, 2 * l)
    claimed = p["alpha"] * len(d_star) + p["epsilon"] * len(inst.subsets)
    print(f"\nl={l}: {gd.graph.n} vertices, alpha={p['alpha']}, eps={p['epsilon']}")
    print(f"  optimum {best.objective} with edges {best.matching.edges}")
    print(f"  alpha|D*| + eps|S| = {claimed}")
    try:
        print("  decodes to cover", matching_to_cover(gd, best.matching.edges))
    except ValueError as exc:
        print("  does not decode to a cover:", exc)
