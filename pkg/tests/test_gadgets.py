import itertools
from fractions import Fraction

import networkx as nx
import pytest

from conftest import complete, path, to_nx
from distmatch import oracles
from distmatch.classes import is_chordal
from distmatch.enumeration import connected_graphs_up_to, formulas_up_to, set_cover_instances_up_to
from distmatch.gadgets import (
    CnfFormula,
    SetCoverInstance,
    all_chains_matching,
    assignment_matching,
    block_edges,
    build_sat_witnesses,
    cover_to_matching,
    independent_set_to_matching,
    matching_to_assignment,
    matching_to_cover,
    matching_to_independent_set,
    sat_plus_one_matching,
    sat_to_graph,
    sat_vertex_count,
    setcover_to_wmmm,
    t_transform,
    variable_block,
)
from distmatch.graph import Graph, edge
from distmatch.matching import all_maximal_matchings, check_matching, min_maximal_matching, min_weight_maximal_matching
from distmatch.packing import packing_number

F22 = CnfFormula(2, ((1, -2), (2,)))


class TestFormula:
    @pytest.mark.parametrize(
        "n, clauses",
        [(1, ((1,), (-1,))), (2, ((1,),)), (2, ((1, -1), (2,))), (2, ((1, 1), (2,))), (2, ((), (1,))), (2, ((3,), (1,)))],
    )
    def test_rejects(self, n, clauses):
        with pytest.raises(ValueError):
            CnfFormula(n, clauses)

    def test_unsatisfied(self):
        assert F22.unsatisfied((False, False)) == [2]
        assert F22.unsatisfied((True, True)) == []
        assert F22.is_satisfiable() and F22.min_unsatisfied() == 0


class TestSatGadget:
    def test_k2_counts(self):
        g = sat_to_graph(2, F22)
        assert g.graph.n == 10

    def test_k3_counts(self):
        g = sat_to_graph(3, F22)
        assert g.graph.n == 18
        assert len(variable_block(g, 1)) == 8

    def test_k4_layout(self):
        g = sat_to_graph(4, F22)
        assert sum(r[:2] == ("var", 1) for r in g.roles) == 6
        interiors = [r for r in g.roles if r[0] == "occ"]
        assert len(interiors) == 3 and all(r[3] == 1 for r in interiors)

    def test_k_too_small(self):
        with pytest.raises(ValueError):
            sat_to_graph(1, F22)

    def test_closed_form_counts(self):
        fs = formulas_up_to(3, 3)
        for k in range(2, 7):
            for f in fs[::7]:
                g = sat_to_graph(k, f)
                occ = sum(len(c) for c in f.clauses)
                assert g.graph.n == sat_vertex_count(k, f.n, f.m, occ)
                l = k // 2
                per_var = 4 * l + 4 if k % 2 else 2 * (l + 1)
                assert g.graph.n == f.m + per_var * f.n + (l - 1) * occ

    def test_clause_clique_and_occurrence_paths(self):
        f = CnfFormula(3, ((1, -2, 3), (-1, 2), (2, 3)))
        for k in (4, 5):
            gd = sat_to_graph(k, f)
            g, v = gd.graph, gd.vertex
            l = k // 2
            for a, b in itertools.combinations(range(1, 4), 2):
                assert g.has_edge(v("clause", a), v("clause", b))
            for j, clause in enumerate(f.clauses, 1):
                for lit in clause:
                    head = v("var", abs(lit), "pos" if lit > 0 else "neg", 1)
                    assert g.distance(head, v("clause", j)) <= l

    def test_roles_decode_and_rebuild_identically(self):
        f = CnfFormula(3, ((1, 2), (-2, 3), (-1, -3)))
        for k in (2, 3, 4, 5):
            a, b = sat_to_graph(k, f), sat_to_graph(k, f)
            assert a == b and a.graph.edges == b.graph.edges
            assert all(a.vertex(*a.role(x)) == x for x in a.graph.vertices())

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_plus_one_witness(self, k):
        gd = sat_to_graph(k, F22)
        m, build = build_sat_witnesses(gd)
        assert len(m) == F22.n + 1 and check_matching(gd.graph, m.edges, k).is_matching
        a = (True, True)
        assert build(a) == assignment_matching(gd, a)
        assert check_matching(gd.graph, build(a).edges, k).maximal

    def test_partial_assignment(self):
        with pytest.raises(ValueError):
            assignment_matching(sat_to_graph(2, F22), (True,))

    @pytest.mark.parametrize("k,sizes", [(2, {3}), (3, {2, 3}), (4, {3}), (5, {2, 3})])
    def test_two_unsatisfied_clauses(self, k, sizes):
        # Every assignment leaves two clauses unsatisfied. For even k no maximal
        # matching of size n survives. For odd k one does: an unsatisfied clause
        # vertex reaches the chosen variable edge through the clause clique, so
        # the clause pair cannot extend it.
        f = CnfFormula(2, ((1,), (-1,), (2,), (-2,)))
        assert f.min_unsatisfied() == 2
        gd = sat_to_graph(k, f)
        got = {len(m) for m in oracles.maximal_distance_matchings(gd.graph, k)}
        assert got == {len(m) for m in all_maximal_matchings(gd.graph, k)} == sizes

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_round_trip(self, k):
        f = CnfFormula(3, ((1, -2), (2, 3), (-1, -3)))
        gd = sat_to_graph(k, f)
        for a in f.assignments():
            if not f.unsatisfied(a):
                assert matching_to_assignment(gd, assignment_matching(gd, a).edges) == a

    def test_negative_side_means_false(self):
        gd = sat_to_graph(2, CnfFormula(2, ((-1, 2), (2,))))
        m = assignment_matching(gd, (False, True))
        assert matching_to_assignment(gd, m.edges)[0] is False
        assert edge(gd.vertex("var", 1, "neg", 1), gd.vertex("var", 1, "neg", 2)) in m.edges

    def test_decoder_rejects_non_maximal(self):
        gd = sat_to_graph(2, F22)
        with pytest.raises(ValueError):
            matching_to_assignment(gd, [])

    def test_size_n_matchings_decode_k2(self):
        for f in formulas_up_to(3, 3)[::3]:
            gd = sat_to_graph(2, f)
            for m in all_maximal_matchings(gd.graph, 2):
                if len(m) == f.n:
                    assert set(m.edges) <= block_edges(gd)
                    assert len(f.unsatisfied(matching_to_assignment(gd, m.edges))) <= 1

    @pytest.mark.parametrize("k,f", [
        (3, CnfFormula(2, ((-1,), (1,), (1, 2)))),
        (4, CnfFormula(3, ((-1, -2, -3), (1,), (1, 2)))),
        (5, CnfFormula(2, ((-1,), (1,), (1, 2)))),
    ])
    def test_clause_clique_shortcut(self, k, f):
        # Clause 1 is satisfied by the all-false reading and its vertex sits
        # next to the other clause vertices. For k >= 3 the chosen block edge
        # is closer than k to the unsatisfied clause vertices through that
        # clique, so clauses 2 and 3 cannot add their edge and a maximal
        # size-n matching decodes to two misses.
        gd = sat_to_graph(k, f)
        allfalse = (False,) * f.n
        bad = [
            m for m in oracles.maximal_distance_matchings(gd.graph, k)
            if len(m) == f.n and len(f.unsatisfied(matching_to_assignment(gd, m))) > 1
        ]
        assert bad
        for m in bad:
            assert matching_to_assignment(gd, m) == allfalse
        assert f.unsatisfied(allfalse) == [2, 3]
        h = to_nx(gd.graph)
        c2, c3 = gd.vertex("clause", 2), gd.vertex("clause", 3)
        assert min(nx.shortest_path_length(h, c, u) for c in (c2, c3) for e in bad[0] for u in e) < k

    def test_clause_clique_shortcut_absent_at_k2(self):
        f = CnfFormula(2, ((-1,), (1,), (1, 2)))
        gd = sat_to_graph(2, f)
        m = assignment_matching(gd, (False, False))
        assert not check_matching(gd.graph, m.edges, 2).maximal

    def test_plus_one_is_maximum(self):
        gd = sat_to_graph(3, F22)
        assert sat_plus_one_matching(gd).edges == (
            edge(gd.vertex("clause", 1), gd.vertex("clause", 2)),
            edge(gd.vertex("a", 1), gd.vertex("b", 1)),
            edge(gd.vertex("a", 2), gd.vertex("b", 2)),
        )


def _chain_weights(gd, i):
    v = gd.vertex
    n = 5 * gd.params["l"] + 1
    return [gd.graph.weight(v("layer", i, j), v("layer", i, j + 1)) for j in range(1, n)]


class TestSetCoverGadget:
    def test_vertex_count(self):
        inst = SetCoverInstance(4, ((0, 1), (1, 2), (2, 3)))
        for l in (1, 2, 3):
            assert setcover_to_wmmm(l, inst).graph.n == 4 + (5 * l + 1) * 3

    def test_l1_weights(self):
        gd = setcover_to_wmmm(1, SetCoverInstance(2, ((0,), (1,))))
        a, e, h = gd.params["alpha"], gd.params["epsilon"], gd.params["heavy"]
        assert (a, e, h) == (2, Fraction(1, 4), 9)
        assert _chain_weights(gd, 0) == [a, a, e, e, e]
        xs = [gd.vertex("universe", x) for x in (0, 1)]
        assert gd.graph.weight(*xs) == h
        assert gd.graph.weight(xs[0], gd.vertex("layer", 0, 1)) == h

    def test_l2_weights(self):
        gd = setcover_to_wmmm(2, SetCoverInstance(2, ((0, 1),)), alpha=3)
        a, e, h = Fraction(3), Fraction(1, 6), Fraction(19)
        assert _chain_weights(gd, 0) == [h] + [a] * 4 + [e] * 5

    def test_epsilon_is_half_inverse_alpha(self):
        gd = setcover_to_wmmm(1, SetCoverInstance(2, ((0,), (1,))), alpha=Fraction(5, 3))
        assert gd.params["epsilon"] == Fraction(3, 10)

    def test_alpha_precondition(self):
        with pytest.raises(ValueError):
            setcover_to_wmmm(1, SetCoverInstance(2, ((0,), (1,))), alpha=1)

    def test_infeasible_instance(self):
        with pytest.raises(ValueError):
            SetCoverInstance(3, ((0,), (1,)))

    def test_universe_flag(self):
        assert not setcover_to_wmmm(1, SetCoverInstance(2, ((0,), (1,)))).params["universe_large"]
        assert setcover_to_wmmm(1, SetCoverInstance(7, (tuple(range(7)),))).params["universe_large"]

    def test_chordal(self):
        for inst in set_cover_instances_up_to(4, 3):
            for l in (1, 2):
                assert is_chordal(setcover_to_wmmm(l, inst).graph)[0]

    @pytest.mark.parametrize("l", [1, 2])
    def test_two_singletons(self, l):
        gd = setcover_to_wmmm(l, SetCoverInstance(2, ((0,), (1,))))
        a, e = gd.params["alpha"], gd.params["epsilon"]
        assert min_weight_maximal_matching(gd.graph, 2 * l).objective == 2 * a + 2 * e

    @pytest.mark.parametrize("l", [1, 2])
    def test_one_full_set(self, l):
        gd = setcover_to_wmmm(l, SetCoverInstance(2, ((0, 1),)))
        a, e = gd.params["alpha"], gd.params["epsilon"]
        assert min_weight_maximal_matching(gd.graph, 2 * l).objective == a + e

    @pytest.mark.parametrize("l", [1, 2])
    def test_all_chains_baseline(self, l):
        inst = SetCoverInstance(3, ((0, 1), (1, 2), (0, 2)))
        gd = setcover_to_wmmm(l, inst)
        m = all_chains_matching(gd)
        p = gd.params
        assert gd.graph.total_weight(m.edges) == (p["alpha"] + p["epsilon"]) * 3
        assert check_matching(gd.graph, m.edges, 2 * l).maximal

    @pytest.mark.parametrize("l", [1, 2])
    def test_cover_to_matching(self, l):
        for inst in set_cover_instances_up_to(4, 3):
            gd = setcover_to_wmmm(l, inst)
            d = inst.min_cover()
            m = cover_to_matching(gd, d)
            p = gd.params
            assert gd.graph.total_weight(m.edges) == p["alpha"] * len(d) + p["epsilon"] * len(inst.subsets)
            assert check_matching(gd.graph, m.edges, 2 * l).maximal

    def test_cover_to_matching_rejects_non_cover(self):
        gd = setcover_to_wmmm(1, SetCoverInstance(2, ((0,), (1,))))
        with pytest.raises(ValueError):
            cover_to_matching(gd, [0])

    def test_l1_identity_and_back_translation(self):
        for inst in set_cover_instances_up_to(4, 3):
            gd = setcover_to_wmmm(1, inst)
            p = gd.params
            r = min_weight_maximal_matching(gd.graph, 2)
            assert r.objective == p["alpha"] * len(inst.min_cover()) + p["epsilon"] * len(inst.subsets)
            back = matching_to_cover(gd, r.matching.edges)
            assert inst.is_cover(back) and len(back) == len(inst.min_cover())

    def test_matching_to_cover_rejects_heavy(self):
        gd = setcover_to_wmmm(1, SetCoverInstance(2, ((0,), (1,))))
        x0, x1 = gd.vertex("universe", 0), gd.vertex("universe", 1)
        with pytest.raises(ValueError):
            matching_to_cover(gd, [(x0, x1)])

    @pytest.mark.parametrize("l", [1, 2])
    def test_single_edge_chain_holds_middle_edge(self, l):
        for inst in set_cover_instances_up_to(3, 3):
            gd = setcover_to_wmmm(l, inst)
            heavy = gd.params["heavy"]
            for m in all_maximal_matchings(gd.graph, 2 * l):
                if any(gd.graph.weights[e] == heavy for e in m.edges):
                    continue
                per_chain = {}
                for u, w in m.edges:
                    ru, rw = gd.role(u), gd.role(w)
                    per_chain.setdefault(ru[1], []).append(min(ru[2], rw[2]))
                for i in range(len(inst.subsets)):
                    js = per_chain.get(i, [])
                    assert len(js) in (1, 2)
                    if len(js) == 1:
                        assert js == [3 * l]

    def test_l2_clique_shortcut_counterexample(self):
        # at l=2 one two-edge chain blocks every universe-side edge through the clique
        inst = SetCoverInstance(3, ((0, 1), (1, 2)))
        gd = setcover_to_wmmm(2, inst)
        g = gd.graph
        assert g.distance(gd.vertex("universe", 2), gd.vertex("layer", 0, 2)) == 3
        r = min_weight_maximal_matching(g, 4)
        assert r.objective == oracles.min_weight_maximal(g, 4) == Fraction(5, 2)
        assert len(inst.min_cover()) == 2
        with pytest.raises(ValueError):
            matching_to_cover(gd, r.matching.edges)

    def test_l2_optimum_follows_intersection_domination(self):
        def gamma_intersection(subsets):
            s = len(subsets)
            for r in range(1, s + 1):
                for d in itertools.combinations(range(s), r):
                    if all(j in d or any(set(subsets[j]) & set(subsets[i]) for i in d) for j in range(s)):
                        return r

        for inst in set_cover_instances_up_to(5, 4)[::5]:
            gd = setcover_to_wmmm(2, inst)
            p = gd.params
            want = p["alpha"] * gamma_intersection(inst.subsets) + p["epsilon"] * len(inst.subsets)
            assert min_weight_maximal_matching(gd.graph, 4).objective == want


class TestTTransform:
    def test_k1(self):
        t = t_transform(Graph(1))
        assert t.graph.n == 10
        # v-a, a-b, v-c, three c-d and three d-e edges
        assert t.graph.m == 9
        assert nx.is_tree(to_nx(t.graph))

    def test_sizes_and_degrees(self):
        for g in connected_graphs_up_to(4):
            t = t_transform(g)
            n = g.n
            assert t.graph.n == 4 * n * n + 6 * n
            assert t.graph.m == g.m + n * (3 + 2 * (2 * n + 1))
            for v in g.vertices():
                c = t.vertex("pendant", v, "c")
                assert t.graph.degree(c) == 2 * n + 2
                for i in range(1, 2 * n + 2):
                    d, e = t.vertex("pendant", v, "d", i), t.vertex("pendant", v, "e", i)
                    assert t.graph.neighbors(d) == tuple(sorted((c, e)))
                    assert t.graph.neighbors(e) == (d,)
                a, b = t.vertex("pendant", v, "a"), t.vertex("pendant", v, "b")
                assert t.graph.neighbors(a) == tuple(sorted((v, b)))
                assert t.graph.neighbors(b) == (a,)

    def test_no_new_cycles_or_blocks(self):
        for g in connected_graphs_up_to(5):
            t = t_transform(g)
            h, ht = to_nx(g), to_nx(t.graph)
            assert ht.number_of_edges() - ht.number_of_nodes() + nx.number_connected_components(ht) == (
                h.number_of_edges() - h.number_of_nodes() + nx.number_connected_components(h)
            )
            for comp in nx.biconnected_component_edges(ht):
                if len(comp) > 1:
                    assert all(u < g.n and v < g.n for u, v in comp)

    def test_empty_independent_set(self):
        g = path(3)
        t = t_transform(g)
        m = independent_set_to_matching(t, [])
        assert len(m) == 6 and check_matching(t.graph, m.edges, 2).maximal

    def test_k2_single_vertex(self):
        t = t_transform(complete(2))
        m = independent_set_to_matching(t, [0])
        assert len(m) == 3 and check_matching(t.graph, m.edges, 2).maximal

    def test_rejects_dependent_set(self):
        with pytest.raises(ValueError):
            independent_set_to_matching(t_transform(complete(2)), [0, 1])

    @pytest.mark.parametrize("g, sigma", [(Graph(1), 1), (complete(2), 3), (path(3), 4), (complete(3), 5)])
    def test_sigma(self, g, sigma):
        t = t_transform(g)
        r = min_maximal_matching(t.graph, 2)
        assert r.objective == sigma == 2 * g.n - oracles.independence_number(g)
        back = matching_to_independent_set(t, r.matching.edges)
        assert len(back) >= 2 * g.n - r.objective

    def test_maximum_independent_set_gives_optimum(self):
        for g in connected_graphs_up_to(4):
            t = t_transform(g)
            alpha, mis = packing_number(g, 1)
            m = independent_set_to_matching(t, mis)
            assert len(m) == 2 * g.n - alpha and check_matching(t.graph, m.edges, 2).maximal
            assert matching_to_independent_set(t, m.edges) == mis
