"""
Brute-force references for the pipeline.

Everything here is computed straight from definitions, without the
enumeration's min-degree extensions or the solver's memo and pruning:

- all_graph_classes(n): one graph per isomorphism class, from the networkx
  graph atlas (n <= 7)
- labeled_graphs(n): every labeled graph on n vertices
- brute_force_canonical_form: minimum graph6 line over all relabelings
- td_recursive: the treedepth recursion, unmemoized and unpruned
- td_subset_dp: the same recursion as a plain DP over vertex subsets
- level_forms / obstruction_forms: G_k^(n) and the three obstruction sets by
  filtering all classes

Because G_k is closed under vertex deletion, edge deletion and contraction,
a graph outside G_k is minimal under a relation as soon as every
single-step reduction of that relation lands inside G_k.
"""

import logging
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List

import networkx as nx

from ..canon import DEFAULT_CANON_CUTOFF, CanonicalForm, brute_force_labeling, canonical_form
from ..errors import ConfigError
from ..graph_core import (
    Graph,
    bit,
    components_of,
    contract_edge,
    delete_edge,
    delete_vertex,
    full_mask,
    iter_bits,
    to_graph6,
)

logger = logging.getLogger(__name__)

ATLAS_MAX_ORDER = 7


def labeled_graphs(n: int) -> Iterator[Graph]:
    """All 2^(n choose 2) labeled graphs on vertices 0..n-1"""
    pairs = [(u, v) for v in range(n) for u in range(v)]
    for code in range(1 << len(pairs)):
        yield Graph.from_edges(n, [pair for index, pair in enumerate(pairs) if code >> index & 1])


@lru_cache(maxsize=None)
def _atlas_by_order() -> Dict[int, List[Graph]]:
    by_order: Dict[int, List[Graph]] = {}
    for atlas_graph in nx.graph_atlas_g():
        n = atlas_graph.number_of_nodes()
        if n == 0:
            by_order.setdefault(0, []).append(Graph.empty(0))
            continue
        matrix = nx.to_numpy_array(atlas_graph, nodelist=sorted(atlas_graph.nodes()), dtype=int)
        by_order.setdefault(n, []).append(Graph.from_adjacency_matrix(matrix))
    return by_order


def all_graph_classes(n: int) -> List[Graph]:
    """One representative per isomorphism class of n-vertex graphs"""
    if not 0 <= n <= ATLAS_MAX_ORDER:
        raise ConfigError(f"graph classes are only available for n <= {ATLAS_MAX_ORDER}, got {n}")
    return list(_atlas_by_order().get(n, []))


def brute_force_canonical_form(g: Graph) -> CanonicalForm:
    """Smallest graph6 line over all n! relabelings of g"""
    return to_graph6(g.relabel(brute_force_labeling(g)))


def _td_recursive(adj, mask: int) -> int:
    if not mask:
        return 0
    parts = components_of(adj, mask)
    if len(parts) > 1:
        return max(_td_recursive(adj, part) for part in parts)
    if not mask & (mask - 1):
        return 1
    return 1 + min(_td_recursive(adj, mask & ~bit(v)) for v in iter_bits(mask))


def td_recursive(g: Graph) -> int:
    """td(g) by direct evaluation of the deletion recursion"""
    return _td_recursive(g.adj, full_mask(g.n))


def td_subset_dp(g: Graph) -> int:
    """td(g) by dynamic programming over all vertex subsets in increasing size"""
    table = {0: 0}
    for mask in sorted(range(1, 1 << g.n), key=lambda m: bin(m).count('1')):
        parts = components_of(g.adj, mask)
        if len(parts) > 1:
            table[mask] = max(table[part] for part in parts)
        else:
            table[mask] = 1 + min(table[mask & ~bit(v)] for v in iter_bits(mask))
    return table[full_mask(g.n)]


def level_forms(
    k: int,
    n: int,
    labeled: bool = False,
    canon_cutoff: int = DEFAULT_CANON_CUTOFF,
) -> FrozenSet[CanonicalForm]:
    """Canonical forms of all n-vertex graphs with td <= k.

    With labeled=True every labeled graph is canonicalized by exhaustive
    relabeling instead of walking the atlas; practical up to n = 5.
    """
    if labeled:
        return frozenset(
            brute_force_canonical_form(g) for g in labeled_graphs(n) if td_subset_dp(g) <= k
        )
    return frozenset(
        canonical_form(g, canon_cutoff) for g in all_graph_classes(n) if td_subset_dp(g) <= k
    )


def _reductions(g: Graph, relation: str) -> Iterator[Graph]:
    for v in range(g.n):
        yield delete_vertex(g, v)
    if relation in ('subgraph', 'minor'):
        for e in g.edges():
            yield delete_edge(g, e)
    if relation == 'minor':
        for e in g.edges():
            yield contract_edge(g, e)


def obstruction_forms(
    k: int,
    n: int,
    canon_cutoff: int = DEFAULT_CANON_CUTOFF,
) -> Dict[str, FrozenSet[CanonicalForm]]:
    """Obstructions for td <= k on n vertices under each relation, from definitions"""
    found: Dict[str, set] = {'induced': set(), 'subgraph': set(), 'minor': set()}
    for g in all_graph_classes(n):
        if td_subset_dp(g) <= k:
            continue
        form = canonical_form(g, canon_cutoff)
        for relation, members in found.items():
            if all(td_subset_dp(h) <= k for h in _reductions(g, relation)):
                members.add(form)
    logger.debug(
        f"Definitional obstructions k={k} n={n}: "
        f"{len(found['induced'])}/{len(found['subgraph'])}/{len(found['minor'])}"
    )
    return {relation: frozenset(members) for relation, members in found.items()}
