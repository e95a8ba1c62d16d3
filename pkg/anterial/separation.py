#!/usr/bin/env python3
"""
Graphical Separation
====================
Walk/section separation for chain mixed graphs. On DAGs it is
d-separation, on ancestral graphs m-separation.

A section is a maximal run of undirected edges along a walk. A section
is a collider when both bordering edges have an arrowhead into it;
sections holding an endpoint are never colliders. A walk is
Z-connecting when every collider section meets Z and every other
section misses Z.

Usage:
    from anterial.separation import separated, connecting_walk

    separated(g, {"1"}, {"2"}, {"3"})
    connecting_walk(g, {"1"}, {"2"}, set())   # ["1", "3", "2"] or None
"""

import logging
from collections import deque
from dataclasses import dataclass
from itertools import chain, combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .graph import (
    AnterialError,
    EdgeType,
    Mark,
    MixedGraph,
    sort_labels,
)

logger = logging.getLogger(__name__)

BRUTEFORCE_MAX_NODES = 10
EQUIVALENCE_MAX_NODES = 12


class SeparationError(AnterialError):
    """Base exception for separation queries."""
    pass


class OverlappingSets(SeparationError):
    """Raised when A, B and Z are not pairwise disjoint (or A/B empty)."""
    pass


class GraphTooLarge(SeparationError):
    """Raised when an exponential check exceeds its node guard."""
    pass


class NodeSetMismatch(SeparationError):
    """Raised when two graphs over different node sets are compared."""
    pass


@dataclass(frozen=True)
class SeparationQuery:
    """Disjoint node sets (A, B, Z) for the question A _||_ B | Z."""
    a: FrozenSet[str]
    b: FrozenSet[str]
    z: FrozenSet[str] = frozenset()

    @classmethod
    def of(cls, a: Iterable[str], b: Iterable[str], z: Iterable[str] = ()) -> "SeparationQuery":
        return cls(frozenset(a), frozenset(b), frozenset(z))

    def validate(self, g: MixedGraph) -> "SeparationQuery":
        g.check_nodes(self.a | self.b | self.z)
        if not self.a or not self.b:
            raise OverlappingSets("A and B must be nonempty")
        if self.a & self.b or self.a & self.z or self.b & self.z:
            raise OverlappingSets("A, B and Z must be pairwise disjoint")
        return self

    def swapped(self) -> "SeparationQuery":
        return SeparationQuery(self.b, self.a, self.z)


# (node, entered_with_head, z_seen_in_section)
WalkState = Tuple[str, bool, bool]


def _query(g: MixedGraph, a, b, z) -> SeparationQuery:
    if isinstance(a, SeparationQuery):
        return a.validate(g)
    return SeparationQuery.of(a, b, z or ()).validate(g)


def connecting_walk(g: MixedGraph, a, b=None, z=None) -> Optional[List[str]]:
    """
    One Z-connecting walk from A to B, or None when A and B are separated.

    Accepts either a SeparationQuery or the three sets.
    """
    q = _query(g, a, b, z)
    start: List[WalkState] = [(s, False, False) for s in sort_labels(q.a)]
    parent: Dict[WalkState, Optional[WalkState]] = {s: None for s in start}
    queue = deque(start)
    while queue:
        state = queue.popleft()
        node, entered_head, z_seen = state
        if node in q.b and not z_seen:
            walk = []
            cursor: Optional[WalkState] = state
            while cursor is not None:
                walk.append(cursor[0])
                cursor = parent[cursor]
            return list(reversed(walk))
        for other, edge in g.incident(node):
            if edge.kind is EdgeType.UNDIRECTED:
                nxt = (other, entered_head, z_seen or other in q.z)
            else:
                collider = entered_head and edge.mark_at(node) is Mark.HEAD
                if collider != z_seen:
                    continue
                nxt = (other, edge.mark_at(other) is Mark.HEAD, other in q.z)
            if nxt not in parent:
                parent[nxt] = state
                queue.append(nxt)
    return None


def separated(g: MixedGraph, a, b=None, z=None) -> bool:
    """True iff no Z-connecting walk joins A and B."""
    return connecting_walk(g, a, b, z) is None


# ============================================================================
# BRUTE FORCE
# ============================================================================

def split_sections(g: MixedGraph, walk: List[str]) -> List[Tuple[List[str], Optional[Mark], Optional[Mark]]]:
    """
    Split a walk into sections.

    Returns (nodes, mark on the entering edge at the section, mark on the
    leaving edge at the section); None marks the walk ends.
    """
    sections = []
    current = [walk[0]]
    entry: Optional[Mark] = None
    for prev, node in zip(walk, walk[1:]):
        edge = g.edge(prev, node)
        if edge.kind is EdgeType.UNDIRECTED:
            current.append(node)
            continue
        sections.append((current, entry, edge.mark_at(prev)))
        current = [node]
        entry = edge.mark_at(node)
    sections.append((current, entry, None))
    return sections


def walk_is_connecting(g: MixedGraph, walk: List[str], z: FrozenSet[str]) -> bool:
    """Evaluate a complete walk against the section criterion."""
    for nodes, entry, leave in split_sections(g, walk):
        inner = [n for n in nodes if n not in (walk[0], walk[-1])] if (entry is None or leave is None) else nodes
        collider = entry is Mark.HEAD and leave is Mark.HEAD
        hits = any(n in z for n in inner)
        if collider and not hits:
            return False
        if not collider and hits:
            return False
    return True


def _prefix_state(g: MixedGraph, walk: List[str], z: FrozenSet[str]) -> Optional[WalkState]:
    """State after a walk prefix, or None when a closed section already fails."""
    sections = split_sections(g, walk)
    for nodes, entry, leave in sections[:-1]:
        collider = entry is Mark.HEAD and leave is Mark.HEAD
        hits = any(n in z for n in nodes)
        if collider != hits:
            return None
    nodes, entry, _ = sections[-1]
    return (walk[-1], entry is Mark.HEAD, any(n in z for n in nodes))


def separated_bruteforce(g: MixedGraph, a, b=None, z=None,
                         max_nodes: int = BRUTEFORCE_MAX_NODES) -> bool:
    """
    Reference oracle: depth-first enumeration of explicit walks.

    Each prefix is re-evaluated section by section; prefixes ending in an
    already explored state are pruned, which bounds the search by 4|V|
    states.

    Raises:
        GraphTooLarge: |V| above max_nodes
    """
    if len(g) > max_nodes:
        raise GraphTooLarge(f"Brute-force separation is limited to {max_nodes} nodes (got {len(g)})")
    q = _query(g, a, b, z)
    explored = set()
    for source in sort_labels(q.a):
        stack = [[source]]
        while stack:
            walk = stack.pop()
            state = _prefix_state(g, walk, q.z)
            if state is None or state in explored:
                continue
            explored.add(state)
            if walk[-1] in q.b and walk_is_connecting(g, walk, q.z):
                return False
            if len(walk) > 4 * len(g) + 1:
                continue
            for other, _ in g.incident(walk[-1]):
                stack.append(walk + [other])
    return True


# ============================================================================
# EQUIVALENCE AND SEPARATING SETS
# ============================================================================

def _subsets(items: List[str]):
    return chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))


def markov_equivalent(g1: MixedGraph, g2: MixedGraph, max_nodes: int = EQUIVALENCE_MAX_NODES) -> bool:
    """
    True iff both graphs induce the same separations.

    Compares every singleton query (i, j | Z) over all Z.

    Raises:
        NodeSetMismatch, GraphTooLarge
    """
    if g1.nodes != g2.nodes:
        raise NodeSetMismatch("Markov equivalence needs identical node sets")
    if len(g1) > max_nodes:
        raise GraphTooLarge(f"Markov equivalence is limited to {max_nodes} nodes (got {len(g1)})")
    labels = sort_labels(g1.labels)
    for i, j in combinations(labels, 2):
        rest = [n for n in labels if n not in (i, j)]
        for zs in _subsets(rest):
            if separated(g1, {i}, {j}, zs) != separated(g2, {i}, {j}, zs):
                logger.debug("markov_equivalent: %s, %s | %s differs", i, j, list(zs))
                return False
    return True


def find_separating_set(g: MixedGraph, i: str, j: str,
                        candidates: Iterable[str]) -> Optional[FrozenSet[str]]:
    """Smallest Z within candidates separating i and j (lexicographic ties), or None."""
    if i == j:
        raise OverlappingSets("find_separating_set needs two distinct nodes")
    pool = sort_labels(g.check_nodes(candidates) - {i, j})
    for zs in _subsets(pool):
        if separated(g, {i}, {j}, zs):
            return frozenset(zs)
    return None


def pairwise_separation_set(g: MixedGraph, i: str, j: str) -> FrozenSet[str]:
    """ant({i, j}) minus {i, j}: the separator for non-adjacent pairs of a maximal graph."""
    return (g.anterior(i) | g.anterior(j)) - {i, j}
