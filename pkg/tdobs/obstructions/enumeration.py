"""
Level-by-level enumeration of graphs with bounded treedepth.

G_k^(1) is {K_1}. G_k^(i) is obtained from G_k^(i-1) by adding one vertex
adjacent to a set A of old vertices, keeping only extensions in which the new
vertex has minimum degree, testing td <= k, and deduplicating by canonical
form. Every graph arises this way from the graph left after deleting one of
its minimum-degree vertices, so nothing is lost by the restriction.
"""

import hashlib
import logging
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Protocol, Tuple

from .canon import DEFAULT_CANON_CUTOFF, CanonicalForm, canonical_form
from .errors import ConfigError, DataIntegrityError, GraphError
from .graph_core import CAPACITY, Graph, extend, from_graph6, popcount, subsets_by_size
from .parallel import ordered_map
from .treedepth import DEFAULT_MEMO_CAP, TreedepthSolver

logger = logging.getLogger(__name__)


def content_digest(forms: Iterable[str]) -> str:
    """SHA-256 of the newline-terminated lines, equal to the digest of the written file"""
    digest = hashlib.sha256()
    for form in forms:
        digest.update(form.encode('ascii'))
        digest.update(b'\n')
    return digest.hexdigest()


class LevelSource(Protocol):
    """Anything that yields the canonical forms of one level in sorted order"""

    k: int
    i: int

    def __iter__(self) -> Iterator[CanonicalForm]: ...

    def verify(self) -> None: ...


@dataclass(frozen=True)
class LevelSet:
    """Canonical forms of all i-vertex graphs with td <= k, sorted"""

    k: int
    i: int
    members: Tuple[CanonicalForm, ...] = field(default=())

    @classmethod
    def from_forms(cls, k: int, i: int, forms: Iterable[CanonicalForm]) -> 'LevelSet':
        return cls(k, i, tuple(sorted(set(forms))))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[CanonicalForm]:
        return iter(self.members)

    def __contains__(self, form: object) -> bool:
        index = bisect_left(self.members, form)
        return index < len(self.members) and self.members[index] == form

    def graphs(self) -> Iterator[Graph]:
        for form in self.members:
            yield from_graph6(form)

    def digest(self) -> str:
        return content_digest(self.members)

    def verify(self) -> None:
        if any(a >= b for a, b in zip(self.members, self.members[1:])):
            raise DataIntegrityError(
                f"level k={self.k} i={self.i} is not strictly sorted", stage=f"level k={self.k} i={self.i}"
            )


def initial_level(k: int) -> LevelSet:
    if k < 1:
        raise ConfigError(f"treedepth bound must be at least 1, got k={k}")
    return LevelSet(k, 1, (canonical_form(Graph.empty(1)),))


def candidate_extensions(g: Graph) -> Iterator[Graph]:
    """Extensions G_A in which the new vertex has minimum degree.

    Subsets are tried by increasing size up to min degree + 1 (a necessary
    condition); the degree check on the built graph decides.
    """
    if g.n >= CAPACITY:
        raise GraphError(f"cannot extend a graph on {g.n} vertices, capacity is {CAPACITY}")
    if g.n == 0:
        yield extend(g, 0)
        return
    degrees = g.degrees()
    for a in subsets_by_size(g.n, min(degrees) + 1):
        size = popcount(a)
        if all(size <= d + (a >> u & 1) for u, d in enumerate(degrees)):
            candidate = extend(g, a)
            if min(candidate.degrees()) == size:
                yield candidate


class _ExpansionWorker:
    """Per-process state: the treedepth solver, whose memo is capped.

    Verdicts on canonical forms are only kept while one parent is expanded.
    """

    def __init__(self, k: int, canon_cutoff: int, memo_cap: int):
        self.k = k
        self.canon_cutoff = canon_cutoff
        self.solver = TreedepthSolver(memo_cap=memo_cap, canon_cutoff=canon_cutoff)

    def expand(self, line: str) -> List[CanonicalForm]:
        verdicts: Dict[CanonicalForm, bool] = {}
        for candidate in candidate_extensions(from_graph6(line)):
            form = canonical_form(candidate, self.canon_cutoff)
            if form not in verdicts:
                verdicts[form] = self.solver.td_at_most(candidate, self.k)
        return sorted(form for form, verdict in verdicts.items() if verdict)


_worker: Optional[_ExpansionWorker] = None


def _init_worker(k: int, canon_cutoff: int, memo_cap: int):
    global _worker
    _worker = _ExpansionWorker(k, canon_cutoff, memo_cap)


def _expand_parent(line: str) -> List[CanonicalForm]:
    return _worker.expand(line)


def grow_level(
    k: int,
    i: int,
    parents: Iterable[CanonicalForm],
    workers: int = 1,
    canon_cutoff: int = DEFAULT_CANON_CUTOFF,
    memo_cap: int = DEFAULT_MEMO_CAP,
) -> LevelSet:
    """Build G_k^(i) from a stream of the (i-1)-vertex members"""
    if i > CAPACITY:
        raise GraphError(f"level {i} exceeds capacity {CAPACITY}")
    members = set()
    parent_count = 0
    results = ordered_map(
        _expand_parent,
        parents,
        workers,
        _init_worker,
        (k, canon_cutoff, memo_cap),
    )
    for accepted in results:
        parent_count += 1
        members.update(accepted)
    level = LevelSet.from_forms(k, i, members)
    logger.info(f"Level k={k} i={i}: {len(level)} graphs from {parent_count} parents")
    return level


def next_level(
    prev: LevelSource,
    workers: int = 1,
    canon_cutoff: int = DEFAULT_CANON_CUTOFF,
    memo_cap: int = DEFAULT_MEMO_CAP,
) -> LevelSet:
    prev.verify()
    return grow_level(prev.k, prev.i + 1, prev, workers, canon_cutoff, memo_cap)
