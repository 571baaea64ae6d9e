"""
Canonical labeling and isomorphism testing.

The canonical form of a graph is the graph6 line of a canonically relabelled
copy, so two graphs have equal forms exactly when they are isomorphic.

Graphs on at most `cutoff` vertices get the lexicographically smallest graph6
line over all n! relabelings, computed column by column with tied prefixes
merged. Larger graphs go through equitable refinement plus individualization
of the first smallest non-singleton cell; the form is the smallest leaf of
that search, and automorphisms found between equal leaves prune sibling
branches in the same orbit.

Forms from different cutoffs are not comparable for orders between the two
cutoffs, which is why stored stages record the cutoff they were built with.
"""

import logging
from functools import lru_cache
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

from .graph_core import CAPACITY, Graph, bit, full_mask, iter_bits, to_graph6

logger = logging.getLogger(__name__)

DEFAULT_CANON_CUTOFF = 8

CanonicalForm = str
Partition = List[int]
Labeling = Tuple[int, ...]


def refine(g: Graph, p: Sequence[int]) -> Partition:
    """Coarsest equitable partition finer than p.

    Cells are split by each vertex's neighbour counts into every current
    cell; the pieces keep the parent's position and are ordered by that count
    vector, so the result depends only on the graph and the cell order.
    """
    cells = list(p)
    while True:
        refined = []
        for cell in cells:
            if not cell & (cell - 1):
                refined.append(cell)
                continue
            groups: Dict[Tuple[int, ...], int] = {}
            for v in iter_bits(cell):
                row = g.adj[v]
                signature = tuple(bin(row & other).count('1') for other in cells)
                groups[signature] = groups.get(signature, 0) | bit(v)
            refined.extend(groups[key] for key in sorted(groups))
        if len(refined) == len(cells):
            return refined
        cells = refined


def is_equitable(g: Graph, p: Sequence[int]) -> bool:
    for cell in p:
        for other in p:
            counts = {bin(g.adj[v] & other).count('1') for v in iter_bits(cell)}
            if len(counts) > 1:
                return False
    return True


def _labeling_from_order(order: Sequence[int]) -> Labeling:
    labeling = [0] * len(order)
    for position, v in enumerate(order):
        labeling[v] = position
    return tuple(labeling)


def _lexmin_labeling(g: Graph) -> Labeling:
    """Labeling whose graph6 line is the minimum over all relabelings.

    Positions are filled left to right. The column for position j lists
    adjacency to positions 0..j-1, stored with position p at bit
    CAPACITY-1-p so integer order equals graph6 order. Only prefixes that
    achieve the minimal columns so far survive; prefixes with the same used
    set and the same column masks for the remaining vertices are merged.
    """
    n = g.n
    top = CAPACITY - 1
    frontier = [((), 0, (0,) * n)]
    for j in range(n):
        best = None
        survivors = {}
        for order, used, columns in frontier:
            for v in iter_bits(full_mask(n) & ~used):
                value = columns[v]
                if best is not None and value > best:
                    continue
                if best is None or value < best:
                    best = value
                    survivors = {}
                marked = list(columns)
                for w in iter_bits(g.adj[v]):
                    marked[w] |= 1 << (top - j)
                now_used = used | bit(v)
                key = (now_used, tuple(marked[w] for w in iter_bits(full_mask(n) & ~now_used)))
                if key not in survivors:
                    survivors[key] = (order + (v,), now_used, tuple(marked))
        frontier = list(survivors.values())
    return _labeling_from_order(frontier[0][0]) if n else ()


class _Search:
    """Individualization-refinement search over one graph"""

    def __init__(self, g: Graph):
        self.g = g
        self.best_form: Optional[str] = None
        self.best_labeling: Optional[Labeling] = None
        self.leaves: Dict[str, Labeling] = {}
        self.automorphisms: List[Labeling] = []

    def run(self) -> Tuple[str, Labeling]:
        root = refine(self.g, [full_mask(self.g.n)] if self.g.n else [])
        self._visit(root, ())
        return self.best_form, self.best_labeling

    def _visit(self, partition: Partition, fixed: Tuple[int, ...]):
        target = None
        for index, cell in enumerate(partition):
            if cell & (cell - 1):
                size = bin(cell).count('1')
                if target is None or size < target[1]:
                    target = (index, size)
        if target is None:
            self._leaf(partition)
            return

        index = target[0]
        cell = partition[index]
        tried: List[int] = []
        for v in iter_bits(cell):
            if tried and self._same_orbit(v, tried, fixed):
                continue
            tried.append(v)
            child = partition[:index] + [bit(v), cell & ~bit(v)] + partition[index + 1:]
            self._visit(refine(self.g, child), fixed + (v,))

    def _same_orbit(self, v: int, tried: List[int], fixed: Tuple[int, ...]) -> bool:
        generators = [
            gamma for gamma in self.automorphisms
            if all(gamma[x] == x for x in fixed)
        ]
        if not generators:
            return False
        parent = list(range(self.g.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gamma in generators:
            for x, y in enumerate(gamma):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[rx] = ry
        root = find(v)
        return any(find(t) == root for t in tried)

    def _leaf(self, partition: Partition):
        order = [cell.bit_length() - 1 for cell in partition]
        labeling = _labeling_from_order(order)
        form = to_graph6(self.g.relabel(labeling))
        seen = self.leaves.get(form)
        if seen is None:
            self.leaves[form] = labeling
        else:
            inverse = [0] * len(seen)
            for v, position in enumerate(seen):
                inverse[position] = v
            gamma = tuple(inverse[labeling[v]] for v in range(self.g.n))
            if any(gamma[v] != v for v in range(self.g.n)):
                self.automorphisms.append(gamma)
        if self.best_form is None or form < self.best_form:
            self.best_form = form
            self.best_labeling = labeling


def brute_force_labeling(g: Graph) -> Labeling:
    """Minimum graph6 line over all n! relabelings, by enumeration"""
    best_form = None
    best = tuple(range(g.n))
    for perm in permutations(range(g.n)):
        form = to_graph6(g.relabel(perm))
        if best_form is None or form < best_form:
            best_form = form
            best = perm
    return tuple(best)


@lru_cache(maxsize=65536)
def _cached_labeling(g: Graph, cutoff: int) -> Tuple[str, Labeling]:
    if g.n <= cutoff:
        labeling = _lexmin_labeling(g)
        return to_graph6(g.relabel(labeling)), labeling
    return _Search(g).run()


def canonical_labeling(
    g: Graph,
    cutoff: Optional[int] = None,
    brute_force: bool = False,
) -> Tuple[CanonicalForm, Labeling]:
    """Canonical form and a labeling with g.relabel(labeling) encoding to it"""
    if brute_force:
        labeling = brute_force_labeling(g)
        return to_graph6(g.relabel(labeling)), labeling
    return _cached_labeling(g, DEFAULT_CANON_CUTOFF if cutoff is None else cutoff)


def canonical_form(
    g: Graph,
    cutoff: Optional[int] = None,
    brute_force: bool = False,
) -> CanonicalForm:
    return canonical_labeling(g, cutoff, brute_force)[0]


def are_isomorphic(g: Graph, h: Graph, cutoff: Optional[int] = None) -> bool:
    if g.n != h.n or g.edge_count() != h.edge_count():
        return False
    return canonical_form(g, cutoff) == canonical_form(h, cutoff)


def clear_cache():
    _cached_labeling.cache_clear()
