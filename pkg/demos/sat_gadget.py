"""The SAT gadget: maximal matchings of two sizes, and where decoding breaks.

Every maximal distance-k matching of the gadget has n or n+1 edges. A
satisfying assignment picks one edge per variable block and yields a maximal
matching with n edges. The converse direction decodes a size-n matching back
into an assignment. For k = 2 the decoded assignment misses at most one
clause. For larger k a satisfied clause vertex lets the chosen block edge
reach the other clause vertices through the clause clique, so two
unsatisfied clauses can hide behind a maximal size-n matching.
"""
from distmatch import CnfFormula, sat_to_graph
from distmatch.gadgets import assignment_matching, matching_to_assignment, sat_plus_one_matching
from distmatch.matching import all_maximal_matchings



def decode_all(f, k):
    gd = sat_to_graph(k, f)
    sizes = sorted({len(m) for m in all_maximal_matchings(gd.graph, k)})
    plus = sat_plus_one_matching(gd)
    print(f"\n{f.clauses} at k={k}: {gd.graph.n} vertices, maximal matching sizes {sizes}, "
          f"size-(n+1) witness {plus.edges}")
    worst = 0
    for m in all_maximal_matchings(gd.graph, k):
        if len(m) == f.n:
            a = matching_to_assignment(gd, m.edges)
            missed = f.unsatisfied(a)
            if len(missed) > worst:
                worst = len(missed)
                print(f"  size-n matching {m.edges} decodes to {a}, missing clauses {missed}")
    print(f"  most clauses missed by a decoded size-n matching: {worst}")


f = CnfFormula(2, ((-1,), (1,), (1, 2)))
print("formula clauses:", f.clauses, "fewest unsatisfied clauses:", f.min_unsatisfied())
for k in (2, 3, 4, 5):
    decode_all(f, k)
# at k = 4 the same effect needs a third variable
decode_all(CnfFormula(3, ((-1, -2, -3), (1,), (1, 2))), 4)

# a satisfying assignment exists once clause 1 is dropped
g = CnfFormula(2, ((1,), (1, 2)))
gd = sat_to_graph(3, g)
m = assignment_matching(gd, (True, False))
print("\nsatisfying assignment (True, False) gives", m.edges, "->", matching_to_assignment(gd, m.edges))
