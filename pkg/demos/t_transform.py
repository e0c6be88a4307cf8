"""sigma(T(G)) = 2n - alpha(G): minimum maximal distance-2 matchings encode
maximum independent sets.

T(G) hangs a short path and a spider of 2n+1 legs off every vertex. A
maximal distance-2 matching has to touch every spider, and it saves one edge
exactly at the vertices of an independent set.
"""
from distmatch import Graph, min_maximal_matching, packing_number, t_transform
from distmatch.gadgets import independent_set_to_matching, matching_to_independent_set

for name, g in [("K1", Graph(1)), ("K2", Graph(2, [(0, 1)])), ("P3", Graph(3, [(0, 1), (1, 2)])),
                ("K3", Graph(3, [(0, 1), (0, 2), (1, 2)]))]:
    t = t_transform(g)
    alpha, mis = packing_number(g, 1)
    sigma = min_maximal_matching(t.graph, 2)
    back = matching_to_independent_set(t, sigma.matching.edges)
    fwd = independent_set_to_matching(t, mis)
    print(f"{name}: |T|={t.graph.n}, sigma={sigma.objective}, 2n - alpha = {2 * g.n - alpha}, "
          f"independent set {mis} -> matching of size {len(fwd)}, optimum decodes to {back}")
