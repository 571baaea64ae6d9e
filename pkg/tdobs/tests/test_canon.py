"""
Canonical labeling tests
"""
import random

import networkx as nx
import pytest

from obstructions.canon import (
    are_isomorphic,
    brute_force_labeling,
    canonical_form,
    canonical_labeling,
    is_equitable,
    refine,
)
from obstructions.graph_core import CAPACITY, Graph, bit, from_graph6, to_graph6
from obstructions.services.oracle import all_graph_classes, labeled_graphs
from tests.factories import GraphFactory


def _shuffled(g, rng):
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabel(perm)


def _from_networkx(h):
    h = nx.convert_node_labels_to_integers(h, ordering='sorted')
    return Graph.from_adjacency_matrix(nx.to_numpy_array(h, nodelist=range(h.number_of_nodes()), dtype=int))


def _symmetric_graphs():
    """Vertex-transitive and strongly regular graphs on more than 8 vertices"""
    return {
        'rook3x3': _from_networkx(nx.cartesian_product(nx.complete_graph(3), nx.complete_graph(3))),
        'petersen': _from_networkx(nx.petersen_graph()),
        'pentagonal_prism': _from_networkx(nx.circular_ladder_graph(5)),
        'k6_6': _from_networkx(nx.complete_bipartite_graph(6, 6)),
        'paley13': _from_networkx(nx.circulant_graph(13, [1, 3, 4])),
        'cycle_power13': _from_networkx(nx.circulant_graph(13, [1, 2, 3])),
        'heawood': _from_networkx(nx.heawood_graph()),
        'three_pentagons': _from_networkx(nx.disjoint_union_all([nx.cycle_graph(5)] * 3)),
        'hypercube4': _from_networkx(nx.hypercube_graph(4)),
        'cycle18': Graph.cycle(CAPACITY),
    }


@pytest.mark.unit
class TestRefine:
    """Test equitable refinement"""

    def test_vertex_transitive_graph_stays_unit(self, triangle):
        assert refine(triangle, [0b111]) == [0b111]

    def test_path_splits_by_degree(self):
        cells = refine(Graph.path(3), [0b111])
        assert sorted(cells) == [0b010, 0b101]

    def test_cycle_with_individualized_vertex(self, c4):
        cells = refine(c4, [bit(0), 0b1110])
        assert bit(2) in cells
        assert 0b1010 in cells

    def test_result_is_equitable(self):
        for seed in range(10):
            g = GraphFactory(n=12, seed=seed, density=0.3)
            cells = refine(g, [(1 << g.n) - 1])
            assert is_equitable(g, cells)
            assert sum(bin(c).count('1') for c in cells) == g.n


@pytest.mark.unit
class TestCanonicalForm:
    """Test canonical forms and isomorphism"""

    def test_k1(self):
        assert canonical_form(Graph.empty(1)) == '@'

    def test_labeling_maps_to_form(self):
        g = GraphFactory(n=8)
        form, labeling = canonical_labeling(g)
        assert to_graph6(g.relabel(labeling)) == form

    def test_three_vertex_classes(self):
        forms = {canonical_form(g) for g in labeled_graphs(3)}
        assert len(forms) == 4

    @pytest.mark.parametrize('n, classes', [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)])
    def test_class_counts(self, n, classes):
        """Test distinct forms over all labeled graphs equal the class counts"""
        assert len({canonical_form(g) for g in labeled_graphs(n)}) == classes

    def test_agrees_with_brute_force_up_to_six(self):
        """Test lexicographic-minimum agreement on every class with n <= 6"""
        rng = random.Random(7)
        for n in range(1, 7):
            for g in all_graph_classes(n):
                h = _shuffled(g, rng)
                expected = to_graph6(h.relabel(brute_force_labeling(h)))
                assert canonical_form(h) == expected
                assert canonical_form(h, brute_force=True) == expected

    def test_refinement_path_is_permutation_invariant(self):
        """Test forms from individualization-refinement on random relabelings"""
        rng = random.Random(11)
        for trial in range(300):
            n = rng.randint(9, CAPACITY)
            g = GraphFactory(n=n, density=rng.choice([0.1, 0.3, 0.5, 0.7]), seed=trial)
            form = canonical_form(g)
            assert canonical_form(_shuffled(g, rng)) == form
            assert are_isomorphic(from_graph6(form), g, cutoff=0)

    @pytest.mark.slow
    def test_ten_thousand_relabelings(self):
        """Test permutation invariance on 10,000 (graph, relabeling) pairs above the cutoff"""
        rng = random.Random(2024)
        graphs = list(_symmetric_graphs().values())
        graphs += [
            GraphFactory(n=rng.randint(9, CAPACITY), density=rng.choice([0.15, 0.3, 0.5, 0.7]), seed=500 + i)
            for i in range(40)
        ]
        pairs = 0
        for g in graphs:
            form = canonical_form(g)
            assert are_isomorphic(from_graph6(form), g, cutoff=0)
            for _ in range(10_000 // len(graphs) + 1):
                assert canonical_form(_shuffled(g, rng)) == form
                pairs += 1
        assert pairs >= 10_000

    def test_symmetric_graphs_above_cutoff(self):
        """Test highly symmetric graphs, where refinement alone splits nothing"""
        rng = random.Random(8)
        forms = {}
        for name, g in _symmetric_graphs().items():
            assert g.n > 8
            forms[name] = canonical_form(g)
            for _ in range(10):
                assert canonical_form(_shuffled(g, rng)) == forms[name]
        assert forms['petersen'] != forms['pentagonal_prism']
        assert forms['paley13'] != forms['cycle_power13']

    def test_refinement_handles_regular_graphs(self):
        """Test forms of vertex-transitive graphs where refinement cannot split"""
        rng = random.Random(3)
        cycle = Graph.cycle(12)
        prism = Graph.from_edges(12, [(i, (i + 1) % 6) for i in range(6)]
                                 + [(6 + i, 6 + (i + 1) % 6) for i in range(6)]
                                 + [(i, i + 6) for i in range(6)])
        for g in (cycle, prism):
            form = canonical_form(g, cutoff=0)
            for _ in range(5):
                assert canonical_form(_shuffled(g, rng), cutoff=0) == form
        assert canonical_form(cycle, cutoff=0) != canonical_form(prism, cutoff=0)

    def test_cutoffs_agree_on_isomorphism(self):
        """Test that both search paths induce the same classes on 6-vertex graphs"""
        classes = all_graph_classes(6)
        lexmin = {canonical_form(g, cutoff=8) for g in classes}
        refined = {canonical_form(g, cutoff=0) for g in classes}
        assert len(lexmin) == len(refined) == len(classes)


@pytest.mark.unit
class TestAreIsomorphic:
    """Test isomorphism checks"""

    def test_relabelled_path(self):
        assert are_isomorphic(Graph.path(3), Graph.from_edges(3, [(0, 2), (2, 1)]))

    def test_path_vs_triangle(self, triangle):
        assert not are_isomorphic(Graph.path(3), triangle)

    def test_path_vs_star(self, p4):
        star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        assert not are_isomorphic(p4, star)
