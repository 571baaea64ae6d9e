"""
Obstruction sets for treedepth at most k on exactly n vertices.

induced_obstructions finds every n-vertex graph G with td(G) = k + 1 whose
vertex-deleted subgraphs all have td <= k, by extending the members of
G_k^(n-1): removing a minimum-degree vertex from such a G lands in that level.
subgraph_filter keeps the members none of whose single-edge deletions is
itself an induced obstruction, and minor_filter keeps the members none of
whose single-edge contractions is an induced obstruction on n - 1 vertices.
For obstructions these single-step tests are equivalent to subgraph- and
minor-minimality, so no containment testing is needed.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .canon import DEFAULT_CANON_CUTOFF, CanonicalForm, canonical_form
from .enumeration import LevelSource, candidate_extensions
from .errors import ConfigError
from .graph_core import Graph, contract_edge, delete_edge, delete_vertex, from_graph6
from .parallel import ordered_map
from .treedepth import DEFAULT_MEMO_CAP, TreedepthSolver

logger = logging.getLogger(__name__)

LOOKUP = 'lookup'
RECOMPUTE = 'recompute'
MEMBERSHIP_MODES = (LOOKUP, RECOMPUTE)

RELATIONS = ('induced', 'subgraph', 'minor')


@dataclass(frozen=True)
class ObstructionSets:
    """Obs for induced subgraphs, subgraphs and minors at one (k, n)"""

    k: int
    n: int
    induced: Tuple[CanonicalForm, ...]
    subgraph: Tuple[CanonicalForm, ...]
    minor: Tuple[CanonicalForm, ...]

    def chain_holds(self) -> bool:
        return set(self.minor) <= set(self.subgraph) <= set(self.induced)

    def counts(self) -> Tuple[int, int, int]:
        return len(self.induced), len(self.subgraph), len(self.minor)

    def by_relation(self) -> Dict[str, Tuple[CanonicalForm, ...]]:
        return {'induced': self.induced, 'subgraph': self.subgraph, 'minor': self.minor}


class _ObstructionWorker:
    """Per-process scanner.

    In lookup mode `seen` spans the whole pass; in recompute mode it only
    covers the current parent, so no state grows with the level.
    """

    def __init__(self, k: int, canon_cutoff: int, memo_cap: int, lookup: Optional[FrozenSet[str]]):
        self.k = k
        self.canon_cutoff = canon_cutoff
        self.lookup = lookup
        self.solver = TreedepthSolver(memo_cap=memo_cap, canon_cutoff=canon_cutoff)
        self.seen: Set[CanonicalForm] = set()

    def is_obstruction(self, g: Graph) -> bool:
        if self.solver.td_at_most(g, self.k):
            return False
        for v in range(g.n):
            h = delete_vertex(g, v)
            if self.lookup is not None:
                if canonical_form(h, self.canon_cutoff) not in self.lookup:
                    return False
            elif not self.solver.td_at_most(h, self.k):
                return False
        return True

    def scan(self, line: str) -> List[CanonicalForm]:
        if self.lookup is None:
            self.seen.clear()
        found = []
        for candidate in candidate_extensions(from_graph6(line)):
            form = canonical_form(candidate, self.canon_cutoff)
            if form in self.seen:
                continue
            self.seen.add(form)
            if self.is_obstruction(candidate):
                found.append(form)
        return found


_worker: Optional[_ObstructionWorker] = None


def _init_worker(k: int, canon_cutoff: int, memo_cap: int, lookup: Optional[FrozenSet[str]]):
    global _worker
    _worker = _ObstructionWorker(k, canon_cutoff, memo_cap, lookup)


def _scan_parent(line: str) -> List[CanonicalForm]:
    return _worker.scan(line)


def induced_obstructions(
    prev_level: LevelSource,
    mode: str = LOOKUP,
    workers: int = 1,
    canon_cutoff: int = DEFAULT_CANON_CUTOFF,
    memo_cap: int = DEFAULT_MEMO_CAP,
) -> Tuple[CanonicalForm, ...]:
    """Obs_induced on prev_level.i + 1 vertices for treedepth <= prev_level.k.

    In lookup mode each G - v is checked by membership in prev_level; in
    recompute mode its treedepth is recomputed and prev_level is only
    streamed once for candidate generation.
    """
    if mode not in MEMBERSHIP_MODES:
        raise ConfigError(f"unknown membership mode {mode!r}, expected one of {MEMBERSHIP_MODES}")
    prev_level.verify()
    lookup = frozenset(prev_level) if mode == LOOKUP else None

    found = set()
    results = ordered_map(
        _scan_parent,
        prev_level,
        workers,
        _init_worker,
        (prev_level.k, canon_cutoff, memo_cap, lookup),
    )
    for forms in results:
        found.update(forms)
    induced = tuple(sorted(found))
    logger.info(
        f"Induced obstructions k={prev_level.k} n={prev_level.i + 1} ({mode}): {len(induced)}"
    )
    return induced


def subgraph_filter(
    induced: Iterable[CanonicalForm],
    canon_cutoff: int = DEFAULT_CANON_CUTOFF,
) -> Tuple[CanonicalForm, ...]:
    """Members with no single-edge deletion isomorphic to a member"""
    members = sorted(set(induced))
    pool = frozenset(members)
    kept = []
    for form in members:
        g = from_graph6(form)
        if not any(canonical_form(delete_edge(g, e), canon_cutoff) in pool for e in g.edges()):
            kept.append(form)
    return tuple(kept)


def minor_filter(
    subgraph: Iterable[CanonicalForm],
    induced_prev: Iterable[CanonicalForm],
    canon_cutoff: int = DEFAULT_CANON_CUTOFF,
) -> Tuple[CanonicalForm, ...]:
    """Members with no single-edge contraction isomorphic to an induced obstruction on n - 1 vertices"""
    targets = frozenset(induced_prev)
    kept = []
    for form in sorted(set(subgraph)):
        g = from_graph6(form)
        if not any(canonical_form(contract_edge(g, e), canon_cutoff) in targets for e in g.edges()):
            kept.append(form)
    return tuple(kept)


def compute_obstruction_sets(
    prev_level: LevelSource,
    induced_prev: Iterable[CanonicalForm],
    mode: str = LOOKUP,
    workers: int = 1,
    canon_cutoff: int = DEFAULT_CANON_CUTOFF,
    memo_cap: int = DEFAULT_MEMO_CAP,
) -> ObstructionSets:
    induced = induced_obstructions(prev_level, mode, workers, canon_cutoff, memo_cap)
    subgraph = subgraph_filter(induced, canon_cutoff)
    minor = minor_filter(subgraph, induced_prev, canon_cutoff)
    sets = ObstructionSets(prev_level.k, prev_level.i + 1, induced, subgraph, minor)
    logger.info(f"Obstructions k={sets.k} n={sets.n}: induced/subgraph/minor = {sets.counts()}")
    return sets
