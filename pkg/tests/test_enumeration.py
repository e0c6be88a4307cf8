import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs, to_nx
from distmatch.classes import is_chordal
from distmatch.enumeration import (
    CONNECTED_COUNTS,
    canonical_form,
    connected_graphs_up_to,
    enumerate_connected_chordal_graphs,
    enumerate_connected_graphs,
    enumerate_formulas,
    enumerate_set_cover_instances,
    formulas_up_to,
    sample_chordal_graphs,
    sample_connected_graphs,
    set_cover_instances_up_to,
)
from distmatch.graph import Graph


def _atlas_counts(chordal=False):
    counts = {}
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n and nx.is_connected(h) and (not chordal or nx.is_chordal(h)):
            counts[n] = counts.get(n, 0) + 1
    return counts


class TestCanonicalForm:
    @given(graphs(max_n=8), st.randoms())
    def test_relabelling_invariant(self, g, rnd):
        perm = list(g.vertices())
        rnd.shuffle(perm)
        h = Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges])
        assert canonical_form(h) == canonical_form(g)

    @given(graphs(max_n=8))
    def test_isomorphic_to_input(self, g):
        assert nx.is_isomorphic(to_nx(canonical_form(g)), to_nx(g))


class TestConnectedGraphs:
    def test_counts_match_atlas(self):
        atlas = _atlas_counts()
        for n in range(1, 8):
            assert len(list(enumerate_connected_graphs(n))) == atlas[n] == CONNECTED_COUNTS[n]

    def test_pairwise_non_isomorphic(self):
        for n in range(1, 7):
            gs = [to_nx(g) for g in enumerate_connected_graphs(n)]
            for a, b in itertools.combinations(gs, 2):
                assert not nx.is_isomorphic(a, b)
            assert all(nx.is_connected(h) for h in gs)

    def test_limit(self):
        with pytest.raises(ValueError):
            list(enumerate_connected_graphs(8))
        with pytest.raises(ValueError):
            list(enumerate_connected_graphs(0))

    def test_up_to_concatenates(self):
        assert len(list(connected_graphs_up_to(5))) == 1 + 1 + 2 + 6 + 21

    def test_sampling_distinct_and_seeded(self):
        a = sample_connected_graphs(9, 20, seed=3)
        assert a == sample_connected_graphs(9, 20, seed=3)
        assert len({g.edges for g in a}) == len(a) == 20
        assert all(nx.is_connected(to_nx(g)) for g in a)


class TestChordalGraphs:
    def test_counts_match_atlas(self):
        atlas = _atlas_counts(chordal=True)
        for n in range(1, 8):
            assert len(list(enumerate_connected_chordal_graphs(n))) == atlas[n]

    def test_eight_vertices(self):
        # connected chordal graphs on 8 vertices (OEIS A048193)
        gs = list(enumerate_connected_chordal_graphs(8))
        assert len(gs) == 1614
        assert all(is_chordal(g)[0] for g in gs)
        assert len({g.edges for g in gs}) == len(gs)

    def test_limit(self):
        with pytest.raises(ValueError):
            list(enumerate_connected_chordal_graphs(10))

    def test_sampling_chordal(self):
        gs = sample_chordal_graphs(9, 25, seed=1)
        assert gs == sample_chordal_graphs(9, 25, seed=1)
        assert all(nx.is_chordal(to_nx(g)) and nx.is_connected(to_nx(g)) for g in gs)


def _burnside_formulas(n, m, max_width=3):
    """Orbits of m-sets of clauses under variable renaming, by Burnside."""
    clauses = []
    for w in range(1, max_width + 1):
        for vs in itertools.combinations(range(n), w):
            for signs in itertools.product((1, -1), repeat=w):
                clauses.append(frozenset(zip(vs, signs)))
    index = {c: i for i, c in enumerate(clauses)}
    total = 0
    perms = list(itertools.permutations(range(n)))
    for p in perms:
        image = [index[frozenset((p[v], s) for v, s in c)] for c in clauses]
        seen, lengths = set(), []
        for i in range(len(clauses)):
            if i in seen:
                continue
            j, ln = i, 0
            while j not in seen:
                seen.add(j)
                j = image[j]
                ln += 1
            lengths.append(ln)
        # m-subsets fixed by p are unions of whole cycles
        ways = [1] + [0] * m
        for ln in lengths:
            for t in range(m, ln - 1, -1):
                ways[t] += ways[t - ln]
        total += ways[m]
    assert total % len(perms) == 0
    return total // len(perms)


class TestFormulas:
    @pytest.mark.parametrize("n,m", [(2, 2), (2, 3), (3, 2), (3, 3)])
    def test_counts_by_burnside(self, n, m):
        assert len(enumerate_formulas(n, m)) == _burnside_formulas(n, m)

    def test_suite_family_size(self):
        assert len(formulas_up_to(3, 3)) == 620

    def test_well_formed(self):
        for f in formulas_up_to(3, 3):
            assert len(set(f.clauses)) == len(f.clauses)
            for c in f.clauses:
                assert 1 <= len(c) <= 3
                assert len({abs(x) for x in c}) == len(c)

    def test_two_variables_no_renaming_collapse(self):
        # (x1) and (x2) are the same formula up to renaming, (x1) and (-x1) are not
        fs = sorted(f.clauses for f in enumerate_formulas(2, 2, max_width=1))
        assert fs == [((-2,), (-1,)), ((-2,), (1,)), ((-2,), (2,)), ((1,), (2,))]


def _labelled_cover_orbits(u, s):
    """Orbits of covering families of s distinct nonempty subsets, via
    networkx isomorphism of the element/subset incidence graph."""
    nonempty = [frozenset(c) for r in range(1, u + 1) for c in itertools.combinations(range(u), r)]
    reps = []
    match = nx.algorithms.isomorphism.categorical_node_match("side", None)
    for fam in itertools.combinations(nonempty, s):
        if frozenset().union(*fam) != frozenset(range(u)):
            continue
        h = nx.Graph()
        h.add_nodes_from((("x", x) for x in range(u)), side=0)
        h.add_nodes_from((("s", j) for j in range(s)), side=1)
        h.add_edges_from((("x", x), ("s", j)) for j, sub in enumerate(fam) for x in sub)
        if not any(nx.is_isomorphic(h, r, node_match=match) for r in reps):
            reps.append(h)
    return len(reps)


class TestSetCover:
    @pytest.mark.parametrize("u,s", [(1, 1), (2, 2), (3, 2), (3, 3), (4, 2), (4, 3)])
    def test_counts_by_isomorphism(self, u, s):
        assert len(enumerate_set_cover_instances(u, s)) == _labelled_cover_orbits(u, s)

    def test_suite_family_size(self):
        assert len(set_cover_instances_up_to(6, 4)) == 2375

    def test_instances_are_feasible(self):
        for inst in set_cover_instances_up_to(4, 3):
            assert set().union(*map(set, inst.subsets)) == set(range(inst.universe_size))
            assert len(set(inst.subsets)) == len(inst.subsets)

    def test_one_subset(self):
        # a single subset must be the whole universe
        for u in range(1, 7):
            assert len(enumerate_set_cover_instances(u, 1)) == 1
