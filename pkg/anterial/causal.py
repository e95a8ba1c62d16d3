#!/usr/bin/env python3
"""
Interventions and Counterfactual Graphs
=======================================
Graph surgery do_C(g), the counterfactual graph phi(g; C) joining the
observational and intervened worlds, its single-world marginal (SWAIG),
and the parallel-worlds construction of single-world intervention graphs
for DAGs.

Intervened copies are labelled "<base>^do(<c1>,<c2>,...)" with the
treatment labels sorted.

Usage:
    from anterial.causal import do_graph, phi, swaig, parallel_worlds_swig

    do_graph(g, {"2"})
    phi(g, {"2"})                 # nodes 1, 2, 2^do(2), 3^do(2), ...
    swaig(g, {"2"})
    parallel_worlds_swig(dag, ["1", "3"])
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .graph import (
    Edge,
    EdgeType,
    InvalidOrder,
    MixedGraph,
    NotChainConnectedAnterial,
    NotDag,
    chain_components,
    chain_connection_violation,
    is_anterial,
    relatives,
    sort_labels,
)
from .transforms import alpha_m

logger = logging.getLogger(__name__)

_DO_LABEL = re.compile(r"^(?P<base>[^\^]+)\^do\((?P<world>[^)]*)\)$")


# ============================================================================
# TYPES
# ============================================================================

@dataclass(frozen=True)
class InterventionSpec:
    """Treatment set C with optional fixed values a_C."""
    treatment: FrozenSet[str]
    values: Optional[Dict[str, float]] = None

    @classmethod
    def of(cls, treatment: Iterable[str], values: Optional[Dict[str, float]] = None) -> "InterventionSpec":
        treated = frozenset(treatment)
        if values is not None:
            values = {str(k): float(v) for k, v in values.items()}
            if set(values) != treated:
                raise ValueError("Intervention values must be keyed exactly by the treatment set")
        return cls(treated, values)

    def __hash__(self) -> int:
        return hash(self.treatment)


@dataclass(frozen=True)
class CounterfactualNode:
    """A base node in the observational world (world=None) or in do(world)."""
    base: str
    world: Optional[FrozenSet[str]] = None

    @property
    def label(self) -> str:
        if self.world is None:
            return self.base
        return do_label(self.base, self.world)

    @classmethod
    def parse(cls, label: str) -> "CounterfactualNode":
        match = _DO_LABEL.match(label)
        if not match:
            return cls(label)
        world = match.group("world")
        return cls(match.group("base"), frozenset(w for w in world.split(",") if w))

    def __str__(self) -> str:
        return self.label


def do_label(base: str, treatment: Iterable[str]) -> str:
    return f"{base}^do({','.join(sort_labels(treatment))})"


def is_counterfactual(label: str) -> bool:
    return CounterfactualNode.parse(label).world is not None


def _require_chain_connected_anterial(g: MixedGraph) -> None:
    if not is_anterial(g):
        raise NotChainConnectedAnterial("Input graph is not anterial")
    triple = chain_connection_violation(g)
    if triple is not None:
        i, j, k = triple
        raise NotChainConnectedAnterial(f"{i} <-> {j} but not {i} <-> {k} although {k} is in the component of {j}")


# ============================================================================
# GRAPH SURGERY
# ============================================================================

def do_graph(g: MixedGraph, c: Iterable[str]) -> MixedGraph:
    """
    Intervene on C.

    Undirected edges at C point away from C (or vanish inside C), directed
    and bidirected edges into C are removed.

    Raises:
        NotChainConnectedAnterial, UnknownNode
    """
    treated = g.check_nodes(c)
    _require_chain_connected_anterial(g)
    edges = []
    for e in g.edges:
        if e.kind is EdgeType.UNDIRECTED:
            if e.u in treated and e.v in treated:
                continue
            if e.u in treated:
                edges.append(Edge(e.u, e.v, EdgeType.DIRECTED))
            elif e.v in treated:
                edges.append(Edge(e.v, e.u, EdgeType.DIRECTED))
            else:
                edges.append(e)
        elif e.kind is EdgeType.DIRECTED:
            if e.v not in treated:
                edges.append(e)
        elif e.u not in treated and e.v not in treated:
            edges.append(e)
    return MixedGraph(g.labels, edges)


def phi(g: MixedGraph, c: Iterable[str]) -> MixedGraph:
    """
    Counterfactual graph over the observational and do(C) worlds.

    Intervened copies of nodes with no treatment in their anterior are
    merged into the observational node; shared errors then show up as
    cross-world bidirected edges i^do(C) <-> j for j = i, j <-> i in g,
    and j in the chain component of i (i not treated).

    Raises:
        NotChainConnectedAnterial, UnknownNode
    """
    treated = g.check_nodes(c)
    intervened = do_graph(g, treated)
    merged = {i for i in g.labels if i not in treated and not (g.anterior(i) & treated)}
    rename = {i: i if i in merged else do_label(i, treated) for i in g.labels}

    edges: Dict[FrozenSet[str], Edge] = {e.pair(): e for e in g.edges}
    for e in intervened.edges:
        a, b = rename[e.u], rename[e.v]
        copy = Edge(a, b, e.kind) if e.kind is EdgeType.DIRECTED else Edge.make(a, b, e.kind)
        existing = edges.get(copy.pair())
        if existing is not None and existing != copy:
            logger.warning("phi: merged edge %s conflicts with %s; keeping the observational one", copy, existing)
            continue
        edges[copy.pair()] = copy

    comps = chain_components(g)
    for i in sort_labels(g.labels):
        if i in treated or i in merged:
            continue
        partners = {i} | g.spouses(i) | (comps.tau(i) - {i})
        for j in sort_labels(partners):
            link = Edge.make(rename[i], j, EdgeType.BIDIRECTED)
            existing = edges.get(link.pair())
            if existing is not None and existing != link:
                logger.warning("phi: cross-world edge %s collides with %s", link, existing)
                continue
            edges[link.pair()] = link

    labels = list(g.labels) + [rename[i] for i in g.labels if i not in merged]
    return MixedGraph(labels, edges.values())


def swaig(g: MixedGraph, c: Iterable[str]) -> MixedGraph:
    """
    phi(g; C) with the observational posterior po(C) marginalised out.

    Observational nodes left with a cross-world <-> edge are either shared by
    both worlds or treated; a treated c keeps its edges to the intervened
    copies of its chain component, which share c's component errors.
    """
    treated = g.check_nodes(c)
    return alpha_m(phi(g, treated), relatives(g, treated, "po"))


# ============================================================================
# SINGLE-WORLD INTERVENTION GRAPHS FOR DAGS
# ============================================================================

def _require_dag(g: MixedGraph) -> None:
    if g.has_edge_type(EdgeType.UNDIRECTED) or g.has_edge_type(EdgeType.BIDIRECTED):
        raise NotDag("Graph has undirected or bidirected edges")
    if not nx.is_directed_acyclic_graph(g.semi_directed):
        raise NotDag("Graph has a directed cycle")


def _check_order(g: MixedGraph, order: Sequence[str]) -> None:
    if len(set(order)) != len(order):
        raise InvalidOrder("Treatment list repeats a node")
    for p, early in enumerate(order):
        for late in order[p + 1:]:
            if g.is_anterior(late, early):
                raise InvalidOrder(f"{late} is an ancestor of {early} but comes after it")


def _world_label(base: str, order: Sequence[str], world: int) -> str:
    return base if world == 0 else do_label(base, order[:world])


def parallel_worlds_swig(g: MixedGraph, c_ordered: Sequence[str]) -> MixedGraph:
    """
    SWIG of a DAG for an ordered treatment list x_1..x_n.

    World k is do_{x_1..x_k}(g). Node j of world i is kept when it is
    x_i or a descendant of x_i there, and no strict descendant of a later
    treatment (world 0: no strict descendant of any treatment). Copies of
    a kept node in later worlds are merged into it; a random copy of x_l
    absorbs only the worlds before l. Remaining nodes of world n stay.

    Raises:
        NotDag, InvalidOrder, UnknownNode
    """
    order = list(c_ordered)
    g.check_nodes(order)
    _require_dag(g)
    _check_order(g, order)
    n = len(order)
    if n == 0:
        return g

    worlds = [do_graph(g, order[:k]) for k in range(n + 1)]
    position = {x: p + 1 for p, x in enumerate(order)}

    def strict_descendants(graph: MixedGraph, nodes: Iterable[str]) -> set:
        steps = graph.semi_directed
        return set().union(*(nx.descendants(steps, x) for x in nodes))

    kept_in: List[set] = []
    kept_in.append(set(g.labels) - strict_descendants(g, order))
    for i in range(1, n):
        world = worlds[i]
        kept = {order[i - 1]} | strict_descendants(world, [order[i - 1]])
        kept_in.append(kept - strict_descendants(world, order[i:]))

    rep: Dict[Tuple[str, int], Tuple[str, int]] = {}
    for i in range(n):
        for j in sort_labels(kept_in[i]):
            if j not in position or position[j] == i:
                later = range(i + 1, n + 1)
            elif position[j] > i:
                later = range(i + 1, position[j])
            else:
                later = range(0)
            for k in later:
                rep.setdefault((j, k), (j, i))

    def resolve(node: Tuple[str, int]) -> Tuple[str, int]:
        while node in rep:
            node = rep[node]
        return node

    keep = {(j, i) for i in range(n) for j in kept_in[i]}
    keep |= {(j, n) for j in g.labels if (j, n) not in rep}

    edges = set()
    for k, world in enumerate(worlds):
        for e in world.edges:
            a, b = resolve((e.u, k)), resolve((e.v, k))
            if a in keep and b in keep:
                edges.add(Edge(_world_label(a[0], order, a[1]), _world_label(b[0], order, b[1]),
                               EdgeType.DIRECTED))

    index = {label: p for p, label in enumerate(g.labels)}
    nodes = sorted(keep, key=lambda node: (node[1], index[node[0]]))
    return MixedGraph([_world_label(j, order, i) for j, i in nodes], edges)


def fixed_label(base: str) -> str:
    return f"{base}*"


def node_splitting_swig(g: MixedGraph, c: Iterable[str]) -> MixedGraph:
    """
    Classical SWIG by node splitting: each treatment x becomes a random
    copy "x" keeping the incoming edges and a fixed copy "x*" keeping the
    outgoing ones.

    Raises:
        NotDag, UnknownNode
    """
    treated = g.check_nodes(c)
    _require_dag(g)
    edges = [Edge(fixed_label(e.u) if e.u in treated else e.u, e.v, EdgeType.DIRECTED) for e in g.edges]
    labels = list(g.labels) + [fixed_label(x) for x in g.labels if x in treated]
    return MixedGraph(labels, edges)


def normalize_swig_labels(g: MixedGraph, c_ordered: Sequence[str]) -> MixedGraph:
    """Rename parallel-worlds labels to "base" (random) and "base*" (fixed treatment copy)."""
    order = list(c_ordered)
    mapping = {}
    for label in g.labels:
        node = CounterfactualNode.parse(label)
        fixed = (node.world is not None and node.base in order
                 and order.index(node.base) == len(node.world) - 1)
        mapping[label] = fixed_label(node.base) if fixed else node.base
    return g.relabel(mapping)
