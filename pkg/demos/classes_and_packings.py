"""R_k, equipackability and the sun-free chordal duality.

A graph is in R_k when the simplicial cliques of its k-th power partition
the vertices. Exactly those graphs have rho_k = rho_2k, and all of them are
k-equipackable. On sun-free chordal graphs being in R_k is the same as
gamma_k = rho_k.
"""
from distmatch import (
    Graph,
    connected_graphs_up_to,
    find_induced_sun,
    is_chordal,
    is_in_Rk,
    is_k_equipackable,
    packing_parameters,
    simplicial_clique_partition,
)

p4 = Graph(4, [(0, 1), (1, 2), (2, 3)])
print("P4 simplicial partition:", simplicial_clique_partition(p4))
print("P3 partition failure:", simplicial_clique_partition(Graph(3, [(0, 1), (1, 2)])))

for k in (1, 2):
    ok, cert = is_in_Rk(p4, k)
    pp = packing_parameters(p4, k)
    print(f"P4, k={k}: in R_k {ok}, rho={pp.rho}, gamma={pp.gamma}, i={pp.i}, "
          f"equipackable {is_k_equipackable(p4, k).equipackable}")

sun3 = Graph(6, [(3, 4), (3, 5), (4, 5), (0, 3), (0, 4), (1, 4), (1, 5), (2, 5), (2, 3)])
print("\n3-sun chordal:", is_chordal(sun3)[0], "sun found:", find_induced_sun(sun3))

tally = {}
for g in connected_graphs_up_to(6):
    if not is_chordal(g)[0] or find_induced_sun(g) is not None:
        continue
    for k in (1, 2):
        pp = packing_parameters(g, k)
        key = (k, is_in_Rk(g, k)[0], pp.gamma == pp.rho)
        tally[key] = tally.get(key, 0) + 1
print("\nsun-free chordal graphs up to 6 vertices, (k, in R_k, gamma_k = rho_k) -> count")
for key in sorted(tally):
    print(" ", key, tally[key])
