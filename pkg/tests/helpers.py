"""
Test helpers: graph shorthand, query enumeration, and separation oracles
independent of anterial.separation.
"""

from itertools import chain, combinations, product

import networkx as nx

from anterial.graph import Edge, EdgeType, MixedGraph, build_graph, is_chain_mixed, sort_labels


def graph_of(*edges, nodes=None):
    """Graph from "u type v" strings: graph_of("1 --> 2", "2 --- 3")."""
    triples = []
    for text in edges:
        u, kind, v = text.split()
        triples.append((u, v, kind))
    if nodes is None:
        nodes = []
        for u, v, _ in triples:
            for n in (u, v):
                if n not in nodes:
                    nodes.append(n)
    return build_graph(nodes, triples)


def subsets(items):
    items = list(items)
    return chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))


def singleton_queries(labels):
    """Every (i, j, Z) with i < j and Z a subset of the other labels."""
    labels = sort_labels(labels)
    for i, j in combinations(labels, 2):
        rest = [n for n in labels if n not in (i, j)]
        for z in subsets(rest):
            yield i, j, frozenset(z)


def all_chain_mixed(n):
    """Every chain mixed graph over labels 1..n."""
    labels = [str(k) for k in range(1, n + 1)]
    pairs = list(combinations(labels, 2))
    states = (None, "fwd", "back", EdgeType.UNDIRECTED, EdgeType.BIDIRECTED)
    for choice in product(states, repeat=len(pairs)):
        edges = []
        for (a, b), state in zip(pairs, choice):
            if state == "fwd":
                edges.append(Edge(a, b, EdgeType.DIRECTED))
            elif state == "back":
                edges.append(Edge(b, a, EdgeType.DIRECTED))
            elif state is not None:
                edges.append(Edge.make(a, b, state))
        g = MixedGraph(labels, edges)
        if is_chain_mixed(g):
            yield g


# =============================================================================
# ORACLES
# =============================================================================

def _directed(g):
    dag = nx.DiGraph()
    dag.add_nodes_from(g.labels)
    dag.add_edges_from((e.u, e.v) for e in g.edges if e.kind is EdgeType.DIRECTED)
    return dag


def _ancestral_set(g, nodes):
    dag = _directed(g)
    found = set(nodes)
    for n in nodes:
        found |= nx.ancestors(dag, n)
    return found


def _cut(moral, i, j, z):
    moral.remove_nodes_from(z)
    return not nx.has_path(moral, i, j)


def d_separated(g, i, j, z):
    """d-separation in a DAG by moralising the ancestral set."""
    keep = _ancestral_set(g, {i, j} | set(z))
    dag = _directed(g).subgraph(keep)
    moral = nx.Graph()
    moral.add_nodes_from(keep)
    moral.add_edges_from(dag.edges)
    for node in keep:
        moral.add_edges_from(combinations(list(dag.predecessors(node)), 2))
    return _cut(moral, i, j, z)


def m_separated(g, i, j, z):
    """m-separation in an acyclic directed mixed graph via its augmented graph.

    Within the ancestral set, every district together with its parents
    becomes a clique.
    """
    keep = _ancestral_set(g, {i, j} | set(z))
    sub = g.subgraph(keep)
    bidirected = nx.Graph()
    bidirected.add_nodes_from(keep)
    bidirected.add_edges_from((e.u, e.v) for e in sub.edges if e.kind is EdgeType.BIDIRECTED)
    moral = nx.Graph()
    moral.add_nodes_from(keep)
    moral.add_edges_from((e.u, e.v) for e in sub.edges)
    for district in nx.connected_components(bidirected):
        closure = set(district) | set().union(*(sub.parents(d) for d in district))
        moral.add_edges_from(combinations(sorted(closure), 2))
    return _cut(moral, i, j, z)


def edge_set(g):
    return {e.as_tuple() for e in g.edges}
