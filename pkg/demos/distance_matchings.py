"""Distance-k matchings on a path, and how they relate to packings.

On the path 0-1-2-3-4-5 two edges may sit together in a distance-2 matching
only if no edge joins them. The middle edge alone already blocks every
other edge, while the two end-ish edges 01 and 34 form a larger maximal
matching. So P6 is not 2-equimatchable.
"""
from distmatch import (
    Graph,
    check_matching,
    is_k_equimatchable,
    line_graph,
    max_matching,
    min_maximal_matching,
    packing_number,
)

p6 = Graph(6, [(i, i + 1) for i in range(5)])

for k in (1, 2, 3):
    low = min_maximal_matching(p6, k)
    high = max_matching(p6, k)
    print(f"k={k}: smallest maximal {low.matching.edges} (size {low.objective}), "
          f"largest {high.matching.edges} (size {high.objective})")

verdict = is_k_equimatchable(p6, 2)
small, large = verdict.witness
print("2-equimatchable:", verdict.equimatchable, "witness:", small.edges, "vs", large.edges)

# the empty matching is not maximal; the checker proposes an edge to add
print("extend the empty matching with", check_matching(p6, [], 2).extension)

# a distance-k matching of G is a k-packing of its line graph
lg, index = line_graph(p6)
for k in (1, 2, 3):
    print(f"k={k}: max matching {max_matching(p6, k).objective} = rho_k(L(G)) {packing_number(lg, k)[0]}")
