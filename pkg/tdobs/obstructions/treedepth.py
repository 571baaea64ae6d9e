"""
Exact treedepth with elimination-forest certificates.

Treedepth is counted in vertices: td(K_1) = 1. For a connected graph
td(G) = 1 + min over v of td(G - v); for a disconnected graph it is the
maximum over its components.

The search runs over vertex subsets of one graph with a per-call subset
memo, lower-bound pruning and a shrinking upper limit (branch and bound).
Across calls, the TreedepthSolver keeps a memo keyed by the canonical form of
each connected component it is asked about, storing either the exact value
with a certificate in canonical labels, or a lower bound learnt from a failed
budgeted test. The memo is bounded by an entry cap and is cleared wholesale
when the cap is reached; answers never depend on it.

Example:
    >>> from obstructions.graph_core import Graph
    >>> from obstructions.treedepth import treedepth, td_at_most
    >>> treedepth(Graph.cycle(4)).value
    3
    >>> td_at_most(Graph.complete(4), 3)
    False
"""

import logging
import math
import threading
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .canon import DEFAULT_CANON_CUTOFF, canonical_labeling
from .errors import ForestError, GraphError
from .graph_core import Graph, bit, components, components_of, full_mask, iter_bits, popcount

logger = logging.getLogger(__name__)

DEFAULT_MEMO_CAP = 200_000

ParentArray = Tuple[Optional[int], ...]


@dataclass(frozen=True)
class EliminationForest:
    """Rooted forest over a graph's vertices, given as a parent per vertex"""

    parent: ParentArray

    @classmethod
    def from_parent_array(cls, parents: Sequence[int]) -> 'EliminationForest':
        """Build from a list where -1 marks a root"""
        return cls(tuple(None if p is None or p < 0 else p for p in parents))

    @property
    def roots(self) -> List[int]:
        return [v for v, p in enumerate(self.parent) if p is None]

    def to_parent_array(self) -> List[int]:
        return [-1 if p is None else p for p in self.parent]

    def depth(self, v: int) -> int:
        """Vertices on the path from v up to its root, v included"""
        depth = 1
        seen = {v}
        while self.parent[v] is not None:
            v = self.parent[v]
            if v in seen:
                raise ForestError(f"parent relation has a cycle through vertex {v}")
            seen.add(v)
            depth += 1
        return depth

    def height(self) -> int:
        return max((self.depth(v) for v in range(len(self.parent))), default=0)


@dataclass(frozen=True)
class TreedepthResult:
    value: int
    certificate: EliminationForest


def verify_forest(g: Graph, f: EliminationForest) -> bool:
    """True iff f is a rooted forest on V(g) covering every edge by an ancestor pair"""
    for v, p in enumerate(f.parent):
        if p is not None and not 0 <= p < len(f.parent):
            raise ForestError(f"parent {p} of vertex {v} out of range")
    if len(f.parent) != g.n:
        return False

    ancestors = [None] * g.n
    for start in range(g.n):
        chain = []
        v = start
        while v is not None and ancestors[v] is None:
            if v in chain:
                return False
            chain.append(v)
            v = f.parent[v]
        above = 0 if v is None else ancestors[v] | bit(v)
        for w in reversed(chain):
            ancestors[w] = above
            above |= bit(w)

    for u, v in g.edges():
        if not (ancestors[u] >> v & 1 or ancestors[v] >> u & 1):
            return False
    return True


def _greedy_clique(adj: Sequence[int], mask: int) -> int:
    best = 0
    for start in iter_bits(mask):
        clique = 1
        candidates = adj[start] & mask
        while candidates:
            v = max(iter_bits(candidates), key=lambda w: popcount(adj[w] & candidates))
            clique += 1
            candidates &= adj[v]
        best = max(best, clique)
    return best


def _greedy_path(adj: Sequence[int], mask: int) -> int:
    """Vertex count of a long path found by low-degree-first walks"""
    best = 0
    for start in iter_bits(mask):
        length = 1
        visited = bit(start)
        v = start
        while True:
            options = adj[v] & mask & ~visited
            if not options:
                break
            v = min(iter_bits(options), key=lambda w: popcount(adj[w] & mask & ~visited))
            visited |= bit(v)
            length += 1
        best = max(best, length)
    return best


def _mask_lower_bound(adj: Sequence[int], mask: int) -> int:
    n = popcount(mask)
    if n == 0:
        return 0
    edges = sum(popcount(adj[v] & mask) for v in iter_bits(mask)) // 2
    if edges == 0:
        return 1
    # each vertex has at most td - 1 ancestors, so |E| <= n (td - 1)
    density = -(-edges // n) + 1
    clique = _greedy_clique(adj, mask)
    path = math.ceil(math.log2(_greedy_path(adj, mask) + 1))
    return max(density, clique, path, 2)


def lower_bound(g: Graph) -> int:
    """A lower bound on td(g): clique, longest-path and edge-density bounds"""
    return _mask_lower_bound(g.adj, full_mask(g.n))


class _SubsetSearch:
    """Branch and bound over the vertex subsets of one graph"""

    def __init__(self, adj: Sequence[int]):
        self.adj = adj
        self.exact: Dict[int, int] = {}
        self.lower: Dict[int, int] = {}
        self.choice: Dict[int, int] = {}

    def solve(self, mask: int, limit: int) -> int:
        """td of mask if it is at most limit, otherwise a lower bound above limit"""
        known = self.exact.get(mask)
        if known is not None:
            return known
        bound = self.lower.get(mask)
        if bound is None:
            bound = self.lower[mask] = _mask_lower_bound(self.adj, mask)
        if bound > limit:
            return bound

        parts = components_of(self.adj, mask)
        if len(parts) > 1:
            value = 0
            for part in sorted(parts, key=popcount, reverse=True):
                value = max(value, self.solve(part, limit))
                if value > limit:
                    self.lower[mask] = max(self.lower.get(mask, 0), value)
                    return value
            self.exact[mask] = value
            return value

        if not mask & (mask - 1):
            self.exact[mask] = 1
            return 1

        order = sorted(iter_bits(mask), key=lambda v: (-popcount(self.adj[v] & mask), v))
        best = limit + 1
        chosen = None
        for v in order:
            sub = self.solve(mask & ~bit(v), best - 2)
            if sub + 1 < best:
                best = sub + 1
                chosen = v
                if best == bound:
                    break
        if chosen is None:
            self.lower[mask] = limit + 1
            return limit + 1
        self.exact[mask] = best
        self.choice[mask] = chosen
        return best

    def build_forest(self, mask: int, parents: List[Optional[int]], root_parent: Optional[int] = None):
        for part in components_of(self.adj, mask):
            if not part & (part - 1):
                parents[part.bit_length() - 1] = root_parent
                continue
            v = self.choice[part]
            parents[v] = root_parent
            self.build_forest(part & ~bit(v), parents, v)


class TreedepthSolver:
    """Exact treedepth with a shared, capped canonical-form memo.

    Safe to share between threads: memo reads and writes are serialized by a
    lock, and every answer is the same with the memo disabled.
    """

    def __init__(
        self,
        memo_cap: int = DEFAULT_MEMO_CAP,
        use_memo: bool = True,
        canon_cutoff: int = DEFAULT_CANON_CUTOFF,
    ):
        self.memo_cap = memo_cap
        self.use_memo = use_memo and memo_cap > 0
        self.canon_cutoff = canon_cutoff
        self._exact: Dict[str, Tuple[int, ParentArray]] = {}
        self._lower: Dict[str, int] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0
        self.resets = 0

    # Memo

    def _store(self, table: dict, key: str, value):
        with self._lock:
            if len(self._exact) + len(self._lower) >= self.memo_cap:
                self._exact.clear()
                self._lower.clear()
                self.resets += 1
                logger.info(f"Treedepth memo reached {self.memo_cap} entries, reset #{self.resets}")
            if table is self._lower:
                value = max(value, self._lower.get(key, 0))
            table[key] = value

    def _fetch(self, key: str) -> Tuple[Optional[Tuple[int, ParentArray]], int]:
        with self._lock:
            return self._exact.get(key), self._lower.get(key, 0)

    def _tally(self, answered: bool):
        # a hit is a lookup that settles the question without a search
        with self._lock:
            if answered:
                self.hits += 1
            else:
                self.misses += 1

    def memo_size(self) -> int:
        with self._lock:
            return len(self._exact) + len(self._lower)

    # Connected components

    def _solve_component(self, sub: Graph) -> Tuple[int, ParentArray]:
        if sub.n == 1:
            return 1, (None,)
        key = labeling = None
        if self.use_memo:
            key, labeling = canonical_labeling(sub, self.canon_cutoff)
            exact, _ = self._fetch(key)
            self._tally(exact is not None)
            if exact is not None:
                return exact[0], _from_canonical(exact[1], labeling)

        search = _SubsetSearch(sub.adj)
        full = full_mask(sub.n)
        value = search.solve(full, sub.n)
        parents: List[Optional[int]] = [None] * sub.n
        search.build_forest(full, parents)
        if key is not None:
            self._store(self._exact, key, (value, _to_canonical(parents, labeling)))
        return value, tuple(parents)

    def _component_at_most(self, sub: Graph, k: int) -> bool:
        if sub.n <= k:
            return True
        key = labeling = None
        if self.use_memo:
            key, labeling = canonical_labeling(sub, self.canon_cutoff)
            exact, lower = self._fetch(key)
            self._tally(exact is not None or lower > k)
            if exact is not None:
                return exact[0] <= k
            if lower > k:
                return False

        search = _SubsetSearch(sub.adj)
        full = full_mask(sub.n)
        value = search.solve(full, k)
        if key is not None:
            if value <= k:
                parents: List[Optional[int]] = [None] * sub.n
                search.build_forest(full, parents)
                self._store(self._exact, key, (value, _to_canonical(parents, labeling)))
            else:
                self._store(self._lower, key, value)
        return value <= k

    # Public API

    def treedepth(self, g: Graph) -> TreedepthResult:
        if g.n == 0:
            raise GraphError("treedepth of the empty graph is not defined here (n >= 1 required)")
        parents: List[Optional[int]] = [None] * g.n
        value = 0
        for comp in components(g):
            sub, vertices = g.induced(comp)
            sub_value, sub_parents = self._solve_component(sub)
            value = max(value, sub_value)
            for i, p in enumerate(sub_parents):
                parents[vertices[i]] = None if p is None else vertices[p]
        return TreedepthResult(value, EliminationForest(tuple(parents)))

    def td_at_most(self, g: Graph, k: int) -> bool:
        if k <= 0:
            return g.n == 0
        if _mask_lower_bound(g.adj, full_mask(g.n)) > k:
            return False
        for comp in sorted(components(g), key=popcount, reverse=True):
            if popcount(comp) <= k:
                break
            sub, _ = g.induced(comp)
            if not self._component_at_most(sub, k):
                return False
        return True


def _to_canonical(parents: Sequence[Optional[int]], labeling: Sequence[int]) -> ParentArray:
    out: List[Optional[int]] = [None] * len(parents)
    for v, p in enumerate(parents):
        out[labeling[v]] = None if p is None else labeling[p]
    return tuple(out)


def _from_canonical(canonical: Sequence[Optional[int]], labeling: Sequence[int]) -> ParentArray:
    inverse = [0] * len(labeling)
    for v, position in enumerate(labeling):
        inverse[position] = v
    out: List[Optional[int]] = [None] * len(labeling)
    for v in range(len(labeling)):
        p = canonical[labeling[v]]
        out[v] = None if p is None else inverse[p]
    return tuple(out)


_default_solver = TreedepthSolver()


def treedepth(g: Graph) -> TreedepthResult:
    return _default_solver.treedepth(g)


def td_at_most(g: Graph, k: int) -> bool:
    return _default_solver.td_at_most(g, k)
