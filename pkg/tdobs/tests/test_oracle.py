"""
Tests for the brute-force references themselves
"""
import pytest

from obstructions.canon import canonical_form
from obstructions.errors import ConfigError
from obstructions.graph_core import Graph
from obstructions.services.oracle import (
    all_graph_classes,
    labeled_graphs,
    level_forms,
    obstruction_forms,
    td_recursive,
    td_subset_dp,
)
from tests.factories import GraphFactory


@pytest.mark.unit
class TestGraphSources:
    @pytest.mark.parametrize('n, classes', [(0, 1), (1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156), (7, 1044)])
    def test_atlas_class_counts(self, n, classes):
        graphs = all_graph_classes(n)
        assert len(graphs) == classes
        assert all(g.n == n for g in graphs)

    def test_atlas_classes_are_distinct(self):
        assert len({canonical_form(g) for g in all_graph_classes(5)}) == 34

    def test_atlas_limit(self):
        with pytest.raises(ConfigError):
            all_graph_classes(8)

    def test_labeled_graph_count(self):
        assert sum(1 for _ in labeled_graphs(4)) == 64


@pytest.mark.unit
class TestReferenceTreedepth:
    @pytest.mark.parametrize('g, expected', [
        (Graph.empty(0), 0),
        (Graph.empty(3), 1),
        (Graph.path(4), 3),
        (Graph.cycle(5), 4),
        (Graph.complete(5), 5),
    ])
    def test_known_values(self, g, expected):
        assert td_recursive(g) == expected
        assert td_subset_dp(g) == expected

    def test_recursion_and_dp_agree(self):
        for seed in range(20):
            g = GraphFactory(n=6, seed=seed)
            assert td_recursive(g) == td_subset_dp(g)


@pytest.mark.unit
class TestReferenceSets:
    def test_level_forms_k2(self):
        assert [len(level_forms(2, i)) for i in range(1, 5)] == [1, 2, 3, 5]

    def test_labeled_and_atlas_agree(self):
        assert level_forms(2, 4, labeled=True) == level_forms(2, 4)

    def test_obstruction_forms_k2_four_vertices(self):
        sets = obstruction_forms(2, 4)
        p4, c4 = canonical_form(Graph.path(4)), canonical_form(Graph.cycle(4))
        assert sets['induced'] == {p4, c4}
        assert sets['subgraph'] == {p4}
        assert sets['minor'] == {p4}
