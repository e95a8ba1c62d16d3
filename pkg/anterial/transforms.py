#!/usr/bin/env python3
"""
Marginalisation and Conditioning
================================
alpha_m(g, M) and alpha_c(g, C) map an anterial graph to an anterial graph
over the remaining nodes such that

    A _||_ B | Z  in g          <=>  A _||_ B | Z  in alpha_m(g, M)
    A _||_ B | D u C  in g      <=>  A _||_ B | D  in alpha_c(g, C)

Construction, for kept nodes O:
  1. Walk projection: pairs joined by a walk whose internal nodes are all
     marginalised and whose internal sections are non-colliders
     (alpha_m), or whose internal sections are all colliders meeting
     C u ant(C) with single-node end sections (alpha_c).
  2. Inseparable pairs: i, j adjacent in g, or not separated by their
     anterior set (ant({i, j} u C) minus C, M, i, j, plus C).
  3. Keep the projected pairs that are inseparable, then add every
     inseparable pair the graph built so far still separates, in rounds,
     until nothing changes.
Edge marks: tail at i iff i is anterior to {j} u C in g.

Usage:
    from anterial.transforms import alpha_m, alpha_c

    alpha_m(g, {"m"})
    alpha_c(g, {"c"})
"""

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import FrozenSet, Iterable, List, Set

from .graph import (
    EdgeType,
    Mark,
    MixedGraph,
    anterior_mark_edge,
    anterior_of,
    primitive_inducing_path,
    require_anterial,
    sort_labels,
)
from .separation import OverlappingSets, separated

logger = logging.getLogger(__name__)

Pair = FrozenSet[str]


class TransformKind(Enum):
    MARGINALIZE = "marginalize"
    CONDITION = "condition"


@dataclass(frozen=True)
class TransformSpec:
    """Marginalise or condition on a target set."""
    kind: TransformKind
    targets: FrozenSet[str]

    def apply(self, g: MixedGraph) -> MixedGraph:
        if self.kind is TransformKind.MARGINALIZE:
            return alpha_m(g, self.targets)
        return alpha_c(g, self.targets)


def _marginal_projection(g: MixedGraph, kept: List[str], m: FrozenSet[str]) -> Set[Pair]:
    pairs: Set[Pair] = set()
    for source in kept:
        seen = set()
        queue = deque([(source, False)])
        while queue:
            node, entered_head = queue.popleft()
            for other, edge in g.incident(node):
                if other == source:
                    continue
                if edge.kind is EdgeType.UNDIRECTED:
                    head_in = entered_head
                else:
                    if entered_head and edge.mark_at(node) is Mark.HEAD:
                        continue
                    head_in = edge.mark_at(other) is Mark.HEAD
                if other not in m:
                    pairs.add(frozenset((source, other)))
                    continue
                state = (other, head_in)
                if state not in seen:
                    seen.add(state)
                    queue.append(state)
    return pairs


def _conditional_projection(g: MixedGraph, kept: List[str], c: FrozenSet[str]) -> Set[Pair]:
    opens = c | anterior_of(g, c) if c else frozenset()
    kept_set = set(kept)
    pairs: Set[Pair] = set()
    for source in kept:
        seen = set()
        queue = deque()
        for other, edge in g.incident(source):
            if other in kept_set:
                pairs.add(frozenset((source, other)))
            if edge.kind is EdgeType.UNDIRECTED:
                continue
            state = (other, edge.mark_at(other) is Mark.HEAD, other in opens)
            if state not in seen:
                seen.add(state)
                queue.append(state)
        while queue:
            node, entered_head, hit = queue.popleft()
            for other, edge in g.incident(node):
                if edge.kind is EdgeType.UNDIRECTED:
                    state = (other, entered_head, hit or other in opens)
                else:
                    if not (entered_head and hit and edge.mark_at(node) is Mark.HEAD):
                        continue
                    if other in kept_set and other != source:
                        pairs.add(frozenset((source, other)))
                    state = (other, edge.mark_at(other) is Mark.HEAD, other in opens)
                if state not in seen:
                    seen.add(state)
                    queue.append(state)
    return pairs


def _inseparable_pairs(g: MixedGraph, kept: List[str], marginal: FrozenSet[str],
                       conditioned: FrozenSet[str]) -> Set[Pair]:
    pairs: Set[Pair] = set()
    for i, j in combinations(kept, 2):
        if g.adjacent(i, j):
            pairs.add(frozenset((i, j)))
            continue
        z = (anterior_of(g, {i, j} | conditioned) - conditioned - marginal - {i, j}) | conditioned
        if not separated(g, {i}, {j}, z):
            pairs.add(frozenset((i, j)))
    return pairs


def _assemble(g: MixedGraph, kept: List[str], conditioned: FrozenSet[str],
              pairs: Iterable[Pair]) -> MixedGraph:
    ant_c = anterior_of(g, conditioned) if conditioned else frozenset()
    edges = []
    for pair in pairs:
        i, j = sort_labels(pair)
        edges.append(anterior_mark_edge(
            i, j,
            g.is_anterior(i, j) or i in ant_c,
            g.is_anterior(j, i) or j in ant_c,
        ))
    return MixedGraph(kept, edges)


def _stabilize(g: MixedGraph, marginal: FrozenSet[str], conditioned: FrozenSet[str]) -> MixedGraph:
    require_anterial(g)
    removed = marginal | conditioned
    kept = [label for label in g.labels if label not in removed]
    if conditioned:
        projected = _conditional_projection(g, kept, conditioned)
    else:
        projected = _marginal_projection(g, kept, marginal)
    inseparable = _inseparable_pairs(g, kept, marginal, conditioned)

    stray = projected - inseparable
    if stray:
        logger.warning("projection produced %d separable pair(s); dropped", len(stray))
    pairs = projected & inseparable
    h = _assemble(g, kept, conditioned, pairs)

    while True:
        missing = [pair for pair in inseparable - pairs
                   if primitive_inducing_path(h, *sort_labels(pair)) is None]
        if not missing:
            return h
        for pair in missing:
            logger.debug("repair: adding edge %s", "-".join(sort_labels(pair)))
        pairs |= set(missing)
        h = _assemble(g, kept, conditioned, pairs)


def alpha_m(g: MixedGraph, m: Iterable[str]) -> MixedGraph:
    """
    Marginalise the nodes M out of an anterial graph.

    Raises:
        NotAnterial, UnknownNode
    """
    return _stabilize(g, g.check_nodes(m), frozenset())


def alpha_c(g: MixedGraph, c: Iterable[str]) -> MixedGraph:
    """
    Condition an anterial graph on the nodes C.

    Raises:
        NotAnterial, UnknownNode
    """
    return _stabilize(g, frozenset(), g.check_nodes(c))


def compose_check(g: MixedGraph, m1: Iterable[str], m2: Iterable[str]) -> bool:
    """True iff marginalising M1 then M2 gives the same graph as M1 u M2 at once."""
    first, second = g.check_nodes(m1), g.check_nodes(m2)
    if first & second:
        raise OverlappingSets("compose_check needs disjoint target sets")
    return alpha_m(alpha_m(g, first), second) == alpha_m(g, first | second)
