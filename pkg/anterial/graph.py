#!/usr/bin/env python3
"""
Mixed Graphs
============
Graphs with directed (-->), undirected (---) and bidirected (<->) edges,
the anterial graph classes, relational queries, primitive inducing paths,
maximisation and the collapsed graph over chain components.

Usage:
    from anterial.graph import build_graph, classify, relatives, maximize

    g = build_graph(["1", "2", "3"], [("1", "2", "-->"), ("2", "3", "---")])
    report = classify(g)                  # GraphClassReport
    relatives(g, {"3"}, "ant")            # frozenset({"1", "2"})
    maximize(g)                           # adds edges along inducing paths
"""

import logging
import re
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

logger = logging.getLogger(__name__)


# ============================================================================
# ERRORS
# ============================================================================

class AnterialError(Exception):
    """Base exception for every error raised by the anterial package."""
    pass


class GraphError(AnterialError):
    """Base exception for graph construction and graph-class errors."""
    pass


class DuplicateNode(GraphError):
    """Raised when a node label is registered twice."""
    pass


class DuplicateEdge(GraphError):
    """Raised when a node pair carries more than one edge."""
    pass


class SelfLoop(GraphError):
    """Raised for an edge from a node to itself."""
    pass


class UnknownNode(GraphError):
    """Raised when a label is not a node of the graph."""
    pass


class NotChainMixed(GraphError):
    """Raised when a graph contains a semi-directed cycle."""
    pass


class NotAnterial(GraphError):
    """Raised when a graph is not anterial."""
    pass


class NotChainConnected(GraphError):
    """Raised when an operation needs a chain-connected anterial graph."""
    pass


class NotChainConnectedAnterial(NotChainConnected):
    """Raised by the intervention operators on unsupported inputs."""
    pass


class NotDag(GraphError):
    """Raised when an operation needs a DAG."""
    pass


class InvalidOrder(GraphError):
    """Raised when an ordered treatment list violates the ancestral order."""
    pass


# ============================================================================
# EDGES AND LABELS
# ============================================================================

class Mark(Enum):
    TAIL = "tail"
    HEAD = "head"


class EdgeType(Enum):
    DIRECTED = "-->"
    UNDIRECTED = "---"
    BIDIRECTED = "<->"


# (mark at u, mark at v) for an edge stored as (u, v)
EDGE_MARKS = {
    EdgeType.DIRECTED: (Mark.TAIL, Mark.HEAD),
    EdgeType.UNDIRECTED: (Mark.TAIL, Mark.TAIL),
    EdgeType.BIDIRECTED: (Mark.HEAD, Mark.HEAD),
}

_EDGE_ALIASES = {
    "-->": (EdgeType.DIRECTED, False),
    "->": (EdgeType.DIRECTED, False),
    "<--": (EdgeType.DIRECTED, True),
    "<-": (EdgeType.DIRECTED, True),
    "---": (EdgeType.UNDIRECTED, False),
    "--": (EdgeType.UNDIRECTED, False),
    "<->": (EdgeType.BIDIRECTED, False),
}

_NUMERIC_PREFIX = re.compile(r"^(\d+)")


def label_key(label: str) -> Tuple[float, str]:
    """Sort key on (numeric prefix, full label): "2" < "10" < "10^do(2)" < "x"."""
    match = _NUMERIC_PREFIX.match(label)
    return (int(match.group(1)) if match else float("inf"), label)


def sort_labels(labels: Iterable[str]) -> List[str]:
    """Labels in deterministic tie-break order."""
    return sorted(labels, key=label_key)


def parse_edge_type(token: str) -> Tuple[EdgeType, bool]:
    """Map an edge token to (type, reversed)."""
    try:
        return _EDGE_ALIASES[token.strip()]
    except KeyError:
        raise GraphError(f"Unknown edge type: {token!r}") from None


@dataclass(frozen=True)
class Edge:
    """One edge in canonical form.

    Directed edges are stored tail first; undirected and bidirected edges
    store their endpoints in label order.
    """
    u: str
    v: str
    kind: EdgeType

    @classmethod
    def make(cls, u: str, v: str, kind: EdgeType) -> "Edge":
        if kind is not EdgeType.DIRECTED and label_key(v) < label_key(u):
            u, v = v, u
        return cls(u, v, kind)

    @property
    def mark_at_u(self) -> Mark:
        return EDGE_MARKS[self.kind][0]

    @property
    def mark_at_v(self) -> Mark:
        return EDGE_MARKS[self.kind][1]

    def mark_at(self, node: str) -> Mark:
        if node == self.u:
            return self.mark_at_u
        if node == self.v:
            return self.mark_at_v
        raise UnknownNode(f"{node} is not an endpoint of {self}")

    def other(self, node: str) -> str:
        return self.v if node == self.u else self.u

    def pair(self) -> FrozenSet[str]:
        return frozenset((self.u, self.v))

    def as_tuple(self) -> Tuple[str, str, str]:
        return (self.u, self.v, self.kind.value)

    def __str__(self) -> str:
        return f"{self.u} {self.kind.value} {self.v}"


def edge_from_marks(u: str, v: str, mark_u: Mark, mark_v: Mark) -> Edge:
    """Build the edge with the given end marks."""
    if mark_u is Mark.TAIL and mark_v is Mark.TAIL:
        return Edge.make(u, v, EdgeType.UNDIRECTED)
    if mark_u is Mark.HEAD and mark_v is Mark.HEAD:
        return Edge.make(u, v, EdgeType.BIDIRECTED)
    if mark_u is Mark.TAIL:
        return Edge(u, v, EdgeType.DIRECTED)
    return Edge(v, u, EdgeType.DIRECTED)


def anterior_mark_edge(i: str, j: str, i_before_j: bool, j_before_i: bool) -> Edge:
    """Edge type fixed by anterior relations.

    Tail at i iff i is anterior to j (and symmetrically), which gives
    i --- j, i --> j, j --> i or i <-> j.
    """
    return edge_from_marks(
        i, j,
        Mark.TAIL if i_before_j else Mark.HEAD,
        Mark.TAIL if j_before_i else Mark.HEAD,
    )


# ============================================================================
# MIXED GRAPH
# ============================================================================

class MixedGraph:
    """Immutable mixed graph with at most one edge per node pair.

    Node ids are dense positions in ``labels``; every public method takes
    and returns labels.
    """

    def __init__(self, labels: Sequence[str], edges: Iterable[Edge]):
        self._labels: Tuple[str, ...] = tuple(labels)
        self._index: Dict[str, int] = {label: i for i, label in enumerate(self._labels)}
        self._edges: FrozenSet[Edge] = frozenset(edges)
        incident: Dict[str, Dict[str, Edge]] = {label: {} for label in self._labels}
        for edge in self._edges:
            incident[edge.u][edge.v] = edge
            incident[edge.v][edge.u] = edge
        self._incident = incident

    # ------------------------------------------------------------------ basics

    @property
    def labels(self) -> Tuple[str, ...]:
        return self._labels

    @property
    def nodes(self) -> FrozenSet[str]:
        return frozenset(self._labels)

    @property
    def edges(self) -> FrozenSet[Edge]:
        return self._edges

    def __len__(self) -> int:
        return len(self._labels)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def node_id(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownNode(f"Unknown node: {label}") from None

    def check_nodes(self, labels: Iterable[str]) -> FrozenSet[str]:
        """Return labels as a frozenset, raising UnknownNode on strangers."""
        found = frozenset(labels)
        missing = [label for label in found if label not in self._index]
        if missing:
            raise UnknownNode(f"Unknown node(s): {', '.join(sort_labels(missing))}")
        return found

    def edge(self, a: str, b: str) -> Optional[Edge]:
        return self._incident[a].get(b)

    def adjacent(self, a: str, b: str) -> bool:
        return b in self._incident[a]

    def edge_type(self, a: str, b: str) -> Optional[EdgeType]:
        edge = self._incident[a].get(b)
        return edge.kind if edge else None

    def mark_at(self, at: str, other: str) -> Mark:
        """Mark at ``at`` on the edge between ``at`` and ``other``."""
        return self._incident[at][other].mark_at(at)

    def incident(self, node: str) -> List[Tuple[str, Edge]]:
        """(neighbour, edge) pairs in label order."""
        nbrs = self._incident[node]
        return [(other, nbrs[other]) for other in sort_labels(nbrs)]

    def neighbors(self, node: str) -> FrozenSet[str]:
        """Nodes joined to ``node`` by an undirected edge."""
        return frozenset(o for o, e in self._incident[node].items() if e.kind is EdgeType.UNDIRECTED)

    def parents(self, node: str) -> FrozenSet[str]:
        return frozenset(o for o, e in self._incident[node].items()
                         if e.kind is EdgeType.DIRECTED and e.v == node)

    def children(self, node: str) -> FrozenSet[str]:
        return frozenset(o for o, e in self._incident[node].items()
                         if e.kind is EdgeType.DIRECTED and e.u == node)

    def spouses(self, node: str) -> FrozenSet[str]:
        return frozenset(o for o, e in self._incident[node].items() if e.kind is EdgeType.BIDIRECTED)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self._edges, key=lambda e: (label_key(e.u), label_key(e.v), e.kind.value))

    def has_edge_type(self, kind: EdgeType) -> bool:
        return any(e.kind is kind for e in self._edges)

    # -------------------------------------------------------------- derived

    def with_edges(self, edges: Iterable[Edge]) -> "MixedGraph":
        """Copy with extra edges; raises DuplicateEdge on a clash."""
        merged = {e.pair(): e for e in self._edges}
        for edge in edges:
            existing = merged.get(edge.pair())
            if existing is not None and existing != edge:
                raise DuplicateEdge(f"Edge {existing} already joins {edge.u} and {edge.v}")
            merged[edge.pair()] = edge
        return MixedGraph(self._labels, merged.values())

    def subgraph(self, keep: Iterable[str]) -> "MixedGraph":
        keep_set = self.check_nodes(keep)
        labels = [label for label in self._labels if label in keep_set]
        return MixedGraph(labels, [e for e in self._edges if e.u in keep_set and e.v in keep_set])

    def without_nodes(self, drop: Iterable[str]) -> "MixedGraph":
        drop_set = self.check_nodes(drop)
        return self.subgraph(label for label in self._labels if label not in drop_set)

    def relabel(self, mapping: Dict[str, str]) -> "MixedGraph":
        rename = lambda label: mapping.get(label, label)  # noqa: E731
        labels = [rename(label) for label in self._labels]
        if len(set(labels)) != len(labels):
            raise DuplicateNode("Relabelling maps two nodes onto one label")
        edges = []
        for e in self._edges:
            if e.kind is EdgeType.DIRECTED:
                edges.append(Edge(rename(e.u), rename(e.v), e.kind))
            else:
                edges.append(Edge.make(rename(e.u), rename(e.v), e.kind))
        return MixedGraph(labels, edges)

    def to_networkx(self) -> nx.MultiDiGraph:
        """Export as a networkx graph; edge attribute ``kind`` holds the type."""
        out = nx.MultiDiGraph()
        out.add_nodes_from(self._labels)
        for e in self._edges:
            out.add_edge(e.u, e.v, kind=e.kind.value)
        return out

    @cached_property
    def semi_directed(self) -> nx.DiGraph:
        """One arc per semi-directed step: u->v for u --> v, both ways for u --- v."""
        steps = nx.DiGraph()
        steps.add_nodes_from(self._labels)
        for e in self._edges:
            if e.kind is EdgeType.DIRECTED:
                steps.add_edge(e.u, e.v)
            elif e.kind is EdgeType.UNDIRECTED:
                steps.add_edge(e.u, e.v)
                steps.add_edge(e.v, e.u)
        return steps

    @cached_property
    def _anterior_map(self) -> Dict[str, FrozenSet[str]]:
        steps = self.semi_directed
        return {label: frozenset(nx.ancestors(steps, label)) for label in self._labels}

    def anterior(self, node: str) -> FrozenSet[str]:
        """ant({node}) without the node itself."""
        return self._anterior_map[node] - {node}

    def is_anterior(self, a: str, b: str) -> bool:
        """True when a semi-directed path runs from a to b (a != b)."""
        return a != b and a in self._anterior_map[b]

    # ------------------------------------------------------------ identity

    def _key(self):
        return (frozenset(self._labels), self._edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MixedGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        body = ", ".join(str(e) for e in self.sorted_edges())
        return f"MixedGraph(nodes={list(self._labels)}, edges=[{body}])"


def build_graph(nodes: Iterable[str], edges: Iterable[Sequence[str]]) -> MixedGraph:
    """
    Build a validated mixed graph.

    Args:
        nodes: unique node labels
        edges: (u, v, type) triples, type one of "-->", "---", "<->" (also "<--")

    Raises:
        DuplicateNode, DuplicateEdge, SelfLoop, UnknownNode
    """
    labels = [str(n) for n in nodes]
    seen = set()
    for label in labels:
        if label in seen:
            raise DuplicateNode(f"Duplicate node label: {label}")
        seen.add(label)

    by_pair: Dict[FrozenSet[str], Edge] = {}
    for triple in edges:
        u, v, token = str(triple[0]), str(triple[1]), str(triple[2])
        for end in (u, v):
            if end not in seen:
                raise UnknownNode(f"Edge endpoint {end} is not a node")
        if u == v:
            raise SelfLoop(f"Self-loop at {u}")
        kind, flipped = parse_edge_type(token)
        if flipped:
            u, v = v, u
        edge = Edge(u, v, kind) if kind is EdgeType.DIRECTED else Edge.make(u, v, kind)
        if edge.pair() in by_pair:
            raise DuplicateEdge(f"Second edge between {u} and {v}: {by_pair[edge.pair()]} and {edge}")
        by_pair[edge.pair()] = edge
    return MixedGraph(labels, by_pair.values())


# ============================================================================
# CHAIN COMPONENTS AND RELATIVES
# ============================================================================

@dataclass(frozen=True)
class ChainComponents:
    """Partition of the nodes into chain components."""
    parts: Tuple[FrozenSet[str], ...]
    index: Dict[str, int] = field(compare=False, repr=False)

    def tau(self, node: str) -> FrozenSet[str]:
        """The chain component holding ``node``."""
        try:
            return self.parts[self.index[node]]
        except KeyError:
            raise UnknownNode(f"Unknown node: {node}") from None

    def of_set(self, nodes: Iterable[str]) -> FrozenSet[str]:
        return frozenset().union(*(self.tau(n) for n in nodes))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)


def chain_components(g: MixedGraph) -> ChainComponents:
    """Connected components of the undirected-edge subgraph, ordered by smallest label."""
    undirected = nx.Graph()
    undirected.add_nodes_from(g.labels)
    undirected.add_edges_from((e.u, e.v) for e in g.edges if e.kind is EdgeType.UNDIRECTED)
    parts = sorted((frozenset(c) for c in nx.connected_components(undirected)),
                   key=lambda part: label_key(sort_labels(part)[0]))
    index = {node: k for k, part in enumerate(parts) for node in part}
    return ChainComponents(tuple(parts), index)


RELATIVE_KINDS = ("ne", "pa", "ant", "sant", "po")


def relatives(g: MixedGraph, c: Iterable[str], kind: str) -> FrozenSet[str]:
    """
    Relatives of a node set, always excluding the set itself.

    kind:
        ne    nodes joined to C by an undirected edge
        pa    nodes with a directed edge into C
        ant   nodes with a semi-directed path into C
        sant  ant(C) minus the chain components of C
        po    nodes reachable from C by a semi-directed path
    """
    targets = g.check_nodes(c)
    if kind == "ne":
        found = frozenset().union(*(g.neighbors(x) for x in targets))
    elif kind == "pa":
        found = frozenset().union(*(g.parents(x) for x in targets))
    elif kind == "ant":
        found = frozenset().union(*(g.anterior(x) for x in targets))
    elif kind == "sant":
        ant = frozenset().union(*(g.anterior(x) for x in targets))
        found = ant - chain_components(g).of_set(targets)
    elif kind == "po":
        steps = g.semi_directed
        found = frozenset().union(*(nx.descendants(steps, x) for x in targets))
    else:
        raise ValueError(f"Unknown relative kind: {kind!r} (expected one of {RELATIVE_KINDS})")
    return found - targets


def anterior_of(g: MixedGraph, nodes: Iterable[str]) -> FrozenSet[str]:
    """ant(nodes) excluding the nodes themselves."""
    return relatives(g, nodes, "ant")


# ============================================================================
# CLASSIFICATION
# ============================================================================

@dataclass
class GraphClassReport:
    """Graph-class predicates with a witness for each failed one."""
    is_chain_mixed: bool
    is_anterial: bool
    is_chain_connected: bool
    is_ancestral: bool
    is_chain_graph: bool
    is_dag: bool
    is_maximal: bool
    witnesses: Dict[str, List[str]] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        return {
            "is_chain_mixed": self.is_chain_mixed,
            "is_anterial": self.is_anterial,
            "is_chain_connected": self.is_chain_connected,
            "is_ancestral": self.is_ancestral,
            "is_chain_graph": self.is_chain_graph,
            "is_dag": self.is_dag,
            "is_maximal": self.is_maximal,
            "witnesses": {k: list(v) for k, v in self.witnesses.items()},
        }


def _semi_directed_path(g: MixedGraph, source: str, target: str) -> Optional[List[str]]:
    try:
        return nx.shortest_path(g.semi_directed, source, target)
    except nx.NetworkXNoPath:
        return None


def semi_directed_cycle(g: MixedGraph) -> Optional[List[str]]:
    """A semi-directed cycle through some directed edge u --> v, as [v, ..., u, v]."""
    for e in g.sorted_edges():
        if e.kind is EdgeType.DIRECTED and g.is_anterior(e.v, e.u):
            return _semi_directed_path(g, e.v, e.u) + [e.v]
    return None


def anteriality_violation(g: MixedGraph) -> Optional[List[str]]:
    """Bidirected edge whose endpoints are joined by a semi-directed path."""
    for e in g.sorted_edges():
        if e.kind is not EdgeType.BIDIRECTED:
            continue
        for a, b in ((e.u, e.v), (e.v, e.u)):
            if g.is_anterior(a, b):
                return [f"{e.u}<->{e.v}"] + _semi_directed_path(g, a, b)
    return None


def chain_connection_violation(g: MixedGraph) -> Optional[List[str]]:
    """Triple (i, j, k) with i <-> j, k in tau(j) and no i <-> k."""
    comps = chain_components(g)
    for e in g.sorted_edges():
        if e.kind is not EdgeType.BIDIRECTED:
            continue
        for i, j in ((e.u, e.v), (e.v, e.u)):
            for k in sort_labels(comps.tau(j)):
                if g.edge_type(i, k) is not EdgeType.BIDIRECTED:
                    return [i, j, k]
    return None


def is_chain_mixed(g: MixedGraph) -> bool:
    return semi_directed_cycle(g) is None


def is_anterial(g: MixedGraph) -> bool:
    return is_chain_mixed(g) and anteriality_violation(g) is None


def is_chain_connected_anterial(g: MixedGraph) -> bool:
    return is_anterial(g) and chain_connection_violation(g) is None


def require_chain_mixed(g: MixedGraph) -> None:
    cycle = semi_directed_cycle(g)
    if cycle is not None:
        raise NotChainMixed(f"Semi-directed cycle: {' '.join(cycle)}")


def require_anterial(g: MixedGraph) -> None:
    require_chain_mixed(g)
    witness = anteriality_violation(g)
    if witness is not None:
        raise NotAnterial(f"Bidirected edge with a semi-directed path between its ends: {' '.join(witness)}")


def maximality_violation(g: MixedGraph) -> Optional[List[str]]:
    """First non-adjacent pair joined by a primitive inducing path, with the path."""
    for a, b in combinations(sort_labels(g.labels), 2):
        if g.adjacent(a, b):
            continue
        path = primitive_inducing_path(g, a, b)
        if path is not None:
            return path
    return None


def classify(g: MixedGraph) -> GraphClassReport:
    """Decide every graph-class predicate, collecting witnesses."""
    witnesses: Dict[str, List[str]] = {}

    cycle = semi_directed_cycle(g)
    chain_mixed = cycle is None
    if cycle is not None:
        witnesses["is_chain_mixed"] = cycle

    anterial = chain_mixed
    if cycle is not None:
        witnesses["is_anterial"] = cycle
    else:
        bad = anteriality_violation(g)
        if bad is not None:
            anterial = False
            witnesses["is_anterial"] = bad

    triple = chain_connection_violation(g)
    chain_connected = anterial and triple is None
    if triple is not None:
        witnesses["is_chain_connected"] = triple
    elif not anterial:
        witnesses["is_chain_connected"] = witnesses["is_anterial"]

    undirected_nodes = {n for e in g.edges if e.kind is EdgeType.UNDIRECTED for n in (e.u, e.v)}
    arrow_into_undirected = sort_labels(
        n for e in g.edges for n in (e.u, e.v)
        if n in undirected_nodes and e.mark_at(n) is Mark.HEAD
    )
    ancestral = anterial and not arrow_into_undirected
    if anterial and arrow_into_undirected:
        witnesses["is_ancestral"] = arrow_into_undirected[:1]

    chain_graph = chain_mixed and not g.has_edge_type(EdgeType.BIDIRECTED)
    dag = chain_graph and not g.has_edge_type(EdgeType.UNDIRECTED)

    maximal = True
    if chain_mixed:
        path = maximality_violation(g)
        if path is not None:
            maximal = False
            witnesses["is_maximal"] = path
    else:
        maximal = False
        witnesses["is_maximal"] = cycle

    return GraphClassReport(
        is_chain_mixed=chain_mixed,
        is_anterial=anterial,
        is_chain_connected=chain_connected,
        is_ancestral=ancestral,
        is_chain_graph=chain_graph,
        is_dag=dag,
        is_maximal=maximal,
        witnesses=witnesses,
    )


# ============================================================================
# PRIMITIVE INDUCING PATHS AND MAXIMISATION
# ============================================================================

def _leaves_endpoint(g: MixedGraph, end: str, q: str) -> bool:
    """First or last edge rule: end <-> q or end --> q."""
    kind = g.edge_type(end, q)
    return kind is EdgeType.BIDIRECTED or (kind is EdgeType.DIRECTED and g.mark_at(q, end) is Mark.HEAD)


def primitive_inducing_path(g: MixedGraph, i: str, j: str) -> Optional[List[str]]:
    """
    Shortest primitive inducing path <i, q1..qn, j> with n >= 1, or None.

    Interior nodes lie in ant({i, j}), interior edges are <-> or ---, and
    the end edges are <-> or point away from the endpoint.
    """
    if i == j:
        raise GraphError("primitive_inducing_path needs two distinct nodes")
    g.check_nodes((i, j))
    allowed = (g.anterior(i) | g.anterior(j)) - {i, j}
    parent: Dict[str, Optional[str]] = {}
    queue: deque = deque()
    for q, _ in g.incident(i):
        if q in allowed and _leaves_endpoint(g, i, q):
            parent[q] = None
            queue.append(q)
    while queue:
        q = queue.popleft()
        if _leaves_endpoint(g, j, q):
            path = [q]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return [i] + list(reversed(path)) + [j]
        for r, edge in g.incident(q):
            if r in parent or r not in allowed or edge.kind is EdgeType.DIRECTED:
                continue
            parent[r] = q
            queue.append(r)
    return None


def maximize(g: MixedGraph) -> MixedGraph:
    """
    Add an edge between every non-adjacent pair joined by a primitive
    inducing path, repeating until no pair qualifies.

    Raises:
        NotChainMixed
    """
    require_chain_mixed(g)
    current = g
    while True:
        added = []
        for a, b in combinations(sort_labels(current.labels), 2):
            if current.adjacent(a, b) or primitive_inducing_path(current, a, b) is None:
                continue
            edge = anterior_mark_edge(a, b, g.is_anterior(a, b), g.is_anterior(b, a))
            logger.debug("maximize: adding %s", edge)
            added.append(edge)
        if not added:
            return current
        current = current.with_edges(added)


# ============================================================================
# COLLAPSED GRAPH
# ============================================================================

def component_label(part: Iterable[str]) -> str:
    return "{" + ",".join(sort_labels(part)) + "}"


def collapse(g: MixedGraph) -> MixedGraph:
    """
    Collapse each chain component into one node.

    {tau(i)} --> {tau(j)} when some i --> j, <-> when some i <-> j.

    Raises:
        NotChainConnected
    """
    if not is_chain_connected_anterial(g):
        raise NotChainConnected("collapse needs a chain-connected anterial graph")
    comps = chain_components(g)
    names = {node: component_label(comps.tau(node)) for node in g.labels}
    edges: Dict[FrozenSet[str], Edge] = {}
    for e in g.sorted_edges():
        if e.kind is EdgeType.UNDIRECTED:
            continue
        a, b = names[e.u], names[e.v]
        edge = Edge(a, b, e.kind) if e.kind is EdgeType.DIRECTED else Edge.make(a, b, e.kind)
        edges.setdefault(edge.pair(), edge)
    return MixedGraph([component_label(part) for part in comps], edges.values())
