"""
Treedepth solver tests
"""
import random
from concurrent.futures import ThreadPoolExecutor

import pytest

from obstructions.errors import ForestError, GraphError
from obstructions.graph_core import (
    Graph,
    components,
    contract_edge,
    delete_edge,
    delete_vertex,
)
from obstructions.services.oracle import all_graph_classes, td_recursive, td_subset_dp
from obstructions.treedepth import (
    EliminationForest,
    TreedepthSolver,
    lower_bound,
    td_at_most,
    treedepth,
    verify_forest,
)
from tests.factories import GraphFactory


def _is_connected(g):
    return g.n > 0 and len(components(g)) == 1


@pytest.mark.unit
class TestEliminationForest:
    """Test forest helpers and verification"""

    def test_k2_chain_verifies(self, k2):
        forest = EliminationForest.from_parent_array([-1, 0])
        assert verify_forest(k2, forest)
        assert forest.height() == 2

    def test_two_roots_do_not_cover_edge(self, k2):
        assert not verify_forest(k2, EliminationForest.from_parent_array([-1, -1]))

    def test_path_rooted_at_middle(self):
        forest = EliminationForest.from_parent_array([1, -1, 1])
        assert verify_forest(Graph.path(3), forest)
        assert forest.height() == 2
        assert forest.roots == [1]

    def test_parent_out_of_range(self, k2):
        with pytest.raises(ForestError):
            verify_forest(k2, EliminationForest.from_parent_array([-1, 5]))

    def test_cycle_rejected(self, k2):
        forest = EliminationForest.from_parent_array([1, 0])
        assert not verify_forest(k2, forest)
        with pytest.raises(ForestError):
            forest.height()

    def test_wrong_size_rejected(self, triangle):
        assert not verify_forest(triangle, EliminationForest.from_parent_array([-1, 0]))

    def test_parent_array_round_trip(self):
        parents = [2, -1, 1, 2]
        assert EliminationForest.from_parent_array(parents).to_parent_array() == parents


@pytest.mark.unit
class TestTreedepth:
    """Test exact treedepth and certificates"""

    @pytest.mark.parametrize('g, expected', [
        (Graph.empty(1), 1),
        (Graph.empty(6), 1),
        (Graph.path(4), 3),
        (Graph.cycle(4), 3),
        (Graph.path(7), 3),
        (Graph.path(8), 4),
        (Graph.complete(5), 5),
        (Graph.complete(9), 9),
    ])
    def test_known_values(self, g, expected):
        result = treedepth(g)
        assert result.value == expected
        assert verify_forest(g, result.certificate)
        assert result.certificate.height() == expected

    def test_empty_graph_rejected(self):
        with pytest.raises(GraphError):
            treedepth(Graph.empty(0))

    def test_component_rule(self, p4):
        g = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 4)])
        assert treedepth(g).value == max(treedepth(p4).value, treedepth(Graph.complete(3)).value)

    @pytest.mark.slow
    @pytest.mark.oracle
    def test_agrees_with_recursion_on_connected_graphs(self):
        """Test agreement with the unpruned recursion on all connected graphs with n <= 7"""
        solver = TreedepthSolver()
        for n in range(1, 8):
            for g in all_graph_classes(n):
                if not _is_connected(g):
                    continue
                result = solver.treedepth(g)
                assert result.value == td_recursive(g)
                assert verify_forest(g, result.certificate)
                assert result.certificate.height() == result.value

    def test_agrees_with_subset_dp_on_random_graphs(self):
        for seed in range(40):
            g = GraphFactory(n=9, seed=seed, density=random.Random(seed).choice([0.2, 0.4, 0.6]))
            result = treedepth(g)
            assert result.value == td_subset_dp(g)
            assert verify_forest(g, result.certificate)
            assert result.certificate.height() == result.value

    def test_memo_does_not_change_answers(self):
        with_memo = TreedepthSolver()
        without = TreedepthSolver(use_memo=False)
        tiny_cap = TreedepthSolver(memo_cap=3)
        for seed in range(30):
            g = GraphFactory(n=10, seed=seed, density=0.35)
            values = {s.treedepth(g).value for s in (with_memo, without, tiny_cap)}
            assert len(values) == 1
            for k in range(1, 6):
                verdicts = {s.td_at_most(g, k) for s in (with_memo, without, tiny_cap)}
                assert len(verdicts) == 1
        assert tiny_cap.resets > 0
        assert without.memo_size() == 0

    def test_certificates_survive_memo_transport(self):
        """Test certificates built from memo hits on relabelled copies"""
        solver = TreedepthSolver()
        rng = random.Random(5)
        g = GraphFactory(n=11, seed=99, density=0.4)
        solver.treedepth(g)
        for _ in range(10):
            perm = list(range(g.n))
            rng.shuffle(perm)
            h = g.relabel(perm)
            result = solver.treedepth(h)
            assert verify_forest(h, result.certificate)
            assert result.certificate.height() == result.value
        assert solver.hits > 0

    def test_lower_bound_entries_only_answer_budgeted_tests(self):
        """Test that a stored lower bound is not counted as a hit for an exact query"""
        solver = TreedepthSolver()
        c5 = Graph.cycle(5)
        assert not solver.td_at_most(c5, 3)
        assert solver.treedepth(c5).value == 4
        assert (solver.hits, solver.misses) == (0, 2)
        assert not solver.td_at_most(c5, 3)
        assert (solver.hits, solver.misses) == (1, 2)

    def test_minor_monotonicity(self):
        for seed in range(15):
            g = GraphFactory(n=8, seed=seed, density=0.45)
            td = treedepth(g).value
            for v in range(g.n):
                assert treedepth(delete_vertex(g, v)).value <= td
            for e in g.edges():
                assert treedepth(delete_edge(g, e)).value <= td
                assert treedepth(contract_edge(g, e)).value <= td

    def test_concurrent_use_is_consistent(self):
        solver = TreedepthSolver(memo_cap=50)
        graphs = [GraphFactory(n=9, seed=seed, density=0.4) for seed in range(24)]
        expected = [td_subset_dp(g) for g in graphs]
        with ThreadPoolExecutor(max_workers=4) as pool:
            values = list(pool.map(lambda g: solver.treedepth(g).value, graphs))
        assert values == expected


@pytest.mark.unit
class TestTdAtMost:
    """Test the budgeted decision variant"""

    def test_examples(self, p4):
        assert not td_at_most(Graph.complete(4), 3)
        assert td_at_most(p4, 3)
        assert not td_at_most(p4, 2)

    def test_zero_budget(self):
        assert not td_at_most(Graph.empty(1), 0)
        assert td_at_most(Graph.empty(0), 0)

    def test_consistent_with_treedepth(self):
        for seed in range(25):
            g = GraphFactory(n=10, seed=seed, density=0.3)
            td = treedepth(g).value
            for k in range(0, 8):
                assert td_at_most(g, k) == (td <= k)


@pytest.mark.unit
class TestLowerBound:
    """Test the pruning lower bound"""

    def test_examples(self, k2):
        assert lower_bound(Graph.complete(4)) >= 4
        assert lower_bound(Graph.empty(5)) == 1
        assert lower_bound(k2) == 2

    def test_never_exceeds_treedepth(self):
        for seed in range(40):
            g = GraphFactory(n=9, seed=seed, density=0.1 + 0.02 * seed)
            assert lower_bound(g) <= td_subset_dp(g)
