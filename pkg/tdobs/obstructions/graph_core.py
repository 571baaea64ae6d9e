"""
Dense small-graph core.

A Graph holds at most CAPACITY vertices and stores one neighbour bitmask per
vertex. Graphs are immutable; every edit returns a new graph. Vertex sets are
plain int bitmasks (bit v set <=> vertex v in the set).

Example:
    >>> from obstructions.graph_core import from_graph6, to_graph6, contract_edge
    >>> g = from_graph6("Bw")
    >>> to_graph6(contract_edge(g, (0, 1)))
    'A_'
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, List, Sequence, Tuple

import numpy as np

from .errors import Graph6ParseError, GraphError

CAPACITY = 18

VertexSet = int
Edge = Tuple[int, int]

GRAPH6_HEADER = '>>graph6<<'


def bit(v: int) -> int:
    return 1 << v


def popcount(mask: int) -> int:
    return bin(mask).count('1')


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bits of mask in increasing order"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def full_mask(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1"""

    n: int
    adj: Tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= CAPACITY:
            raise GraphError(f"graph has {self.n} vertices, capacity is {CAPACITY}")
        if len(self.adj) != self.n:
            raise GraphError(f"expected {self.n} adjacency rows, got {len(self.adj)}")

    # Constructors

    @classmethod
    def empty(cls, n: int) -> 'Graph':
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> 'Graph':
        full = full_mask(n)
        return cls(n, tuple(full & ~bit(v) for v in range(n)))

    @classmethod
    def path(cls, n: int) -> 'Graph':
        return cls.from_edges(n, [(v, v + 1) for v in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> 'Graph':
        edges = [(v, (v + 1) % n) for v in range(n)] if n >= 3 else []
        return cls.from_edges(n, edges)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> 'Graph':
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= bit(v)
            rows[v] |= bit(u)
        return cls(n, tuple(rows))

    @classmethod
    def from_adjacency_matrix(cls, matrix) -> 'Graph':
        """Build a graph from a symmetric 0/1 matrix (numpy array or nested lists)"""
        m = np.asarray(matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise GraphError(f"adjacency matrix must be square, got shape {m.shape}")
        m = m != 0
        if not np.array_equal(m, m.T):
            raise GraphError("adjacency matrix is not symmetric")
        if m.diagonal().any():
            raise GraphError("adjacency matrix has self-loops")
        n = m.shape[0]
        weights = 1 << np.arange(n, dtype=np.int64)
        rows = tuple(int(weights[row].sum()) for row in m)
        return cls(n, rows)

    # Queries

    def adjacency_matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, v in self.edges():
            m[u, v] = m[v, u] = 1
        return m

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> List[int]:
        return [popcount(row) for row in self.adj]

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> List[Edge]:
        """Edges (u, v) with u < v, ordered by v then u"""
        return [(u, v) for v in range(self.n) for u in iter_bits(self.adj[v] & full_mask(v))]

    def vertex_mask(self) -> VertexSet:
        return full_mask(self.n)

    def is_valid(self) -> bool:
        full = full_mask(self.n)
        for v, row in enumerate(self.adj):
            if row & ~full or row >> v & 1:
                return False
            if any(not self.adj[u] >> v & 1 for u in iter_bits(row)):
                return False
        return True

    def induced(self, mask: VertexSet) -> Tuple['Graph', List[int]]:
        """Induced subgraph on mask, relabelled order-preservingly.

        Returns the subgraph and the original vertex for each new index.
        """
        vertices = list(iter_bits(mask & full_mask(self.n)))
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            row = 0
            for w in iter_bits(self.adj[v] & mask):
                row |= bit(index[w])
            rows.append(row)
        return Graph(len(vertices), tuple(rows)), vertices

    def relabel(self, perm: Sequence[int]) -> 'Graph':
        """Graph with vertex v renamed to perm[v]"""
        rows = [0] * self.n
        for v, row in enumerate(self.adj):
            image = 0
            for w in iter_bits(row):
                image |= bit(perm[w])
            rows[perm[v]] = image
        return Graph(self.n, tuple(rows))


def _drop_vertex(rows: Sequence[int], v: int) -> Tuple[int, ...]:
    low = full_mask(v)
    out = []
    for u, row in enumerate(rows):
        if u == v:
            continue
        out.append((row & low) | ((row >> (v + 1)) << v))
    return tuple(out)


def _check_vertex(g: Graph, v: int):
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")


def _check_edge(g: Graph, edge: Edge) -> Edge:
    u, v = edge
    _check_vertex(g, u)
    _check_vertex(g, v)
    if not g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    return (u, v) if u < v else (v, u)


# graph6

def from_graph6(text: str) -> Graph:
    """Decode one graph6 line (optional >>graph6<< header, trailing newline allowed)"""
    line = text.rstrip('\r\n')
    base = 0
    if line.startswith(GRAPH6_HEADER):
        line = line[len(GRAPH6_HEADER):]
        base = len(GRAPH6_HEADER)
    if not line:
        raise Graph6ParseError("empty graph6 line", base)
    for offset, ch in enumerate(line):
        if not 63 <= ord(ch) <= 126:
            raise Graph6ParseError(f"character {ch!r} outside graph6 range", base + offset)

    n = ord(line[0]) - 63
    if n == 63:
        raise Graph6ParseError(f"multi-byte vertex count exceeds capacity {CAPACITY}", base)
    if n > CAPACITY:
        raise Graph6ParseError(f"{n} vertices exceeds capacity {CAPACITY}", base)

    nbits = n * (n - 1) // 2
    body = line[1:]
    expected = (nbits + 5) // 6
    if len(body) != expected:
        raise Graph6ParseError(
            f"expected {expected} adjacency bytes for n={n}, got {len(body)}",
            base + 1 + min(len(body), expected),
        )

    packed = 0
    for ch in body:
        packed = (packed << 6) | (ord(ch) - 63)
    padding = expected * 6 - nbits
    if packed & full_mask(padding):
        raise Graph6ParseError("non-zero padding bits", base + len(line) - 1)
    packed >>= padding

    rows = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if packed >> k & 1:
                rows[i] |= bit(j)
                rows[j] |= bit(i)
            k -= 1
    return Graph(n, tuple(rows))


def to_graph6(g: Graph) -> str:
    """Encode g as a graph6 line without trailing newline"""
    n = g.n
    packed = 0
    nbits = 0
    for j in range(1, n):
        row = g.adj[j]
        for i in range(j):
            packed = (packed << 1) | (row >> i & 1)
        nbits += j
    padding = (-nbits) % 6
    packed <<= padding
    total = nbits + padding
    chars = [chr(63 + n)]
    for shift in range(total - 6, -1, -6):
        chars.append(chr(63 + (packed >> shift & 63)))
    return ''.join(chars)


# Edit operations

def delete_vertex(g: Graph, v: int) -> Graph:
    _check_vertex(g, v)
    return Graph(g.n - 1, _drop_vertex(g.adj, v))


def delete_edge(g: Graph, edge: Edge) -> Graph:
    u, v = _check_edge(g, edge)
    rows = list(g.adj)
    rows[u] &= ~bit(v)
    rows[v] &= ~bit(u)
    return Graph(g.n, tuple(rows))


def contract_edge(g: Graph, edge: Edge) -> Graph:
    """Contract uv into min(u, v); parallel edges collapse, loops vanish"""
    u, v = _check_edge(g, edge)
    rows = list(g.adj)
    rows[u] = (rows[u] | rows[v]) & ~bit(u) & ~bit(v)
    for w in iter_bits(g.adj[v]):
        if w != u:
            rows[w] |= bit(u)
    return Graph(g.n - 1, _drop_vertex(rows, v))


def extend(g: Graph, a: VertexSet) -> Graph:
    """Append a new vertex g.n adjacent exactly to the vertices in a"""
    if g.n >= CAPACITY:
        raise GraphError(f"cannot extend a graph on {g.n} vertices, capacity is {CAPACITY}")
    if a & ~full_mask(g.n):
        raise GraphError(f"extension set {a:#b} is not a subset of V for n={g.n}")
    new = bit(g.n)
    rows = tuple(row | new if a >> u & 1 else row for u, row in enumerate(g.adj))
    return Graph(g.n + 1, rows + (a,))


def components_of(adj: Sequence[int], mask: VertexSet) -> List[VertexSet]:
    """Connected components of the subgraph induced by mask, ordered by minimum vertex"""
    out = []
    remaining = mask
    while remaining:
        comp = frontier = remaining & -remaining
        while frontier:
            reach = 0
            for w in iter_bits(frontier):
                reach |= adj[w]
            frontier = reach & remaining & ~comp
            comp |= frontier
        out.append(comp)
        remaining &= ~comp
    return out


def components(g: Graph) -> List[VertexSet]:
    return components_of(g.adj, full_mask(g.n))


def min_degree(g: Graph) -> Tuple[int, int]:
    """Lowest-index vertex of minimum degree, and that degree"""
    if g.n == 0:
        raise GraphError("minimum degree of the empty graph is undefined")
    degrees = g.degrees()
    best = min(degrees)
    return degrees.index(best), best


def subsets_by_size(n: int, max_size: int) -> Iterator[VertexSet]:
    """Subsets of range(n) by increasing size, lexicographic within a size"""
    for size in range(min(n, max_size) + 1):
        for combo in combinations(range(n), size):
            mask = 0
            for v in combo:
                mask |= bit(v)
            yield mask
