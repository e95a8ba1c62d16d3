#!/usr/bin/env python3
"""
Graph and Model Generators
==========================
Seeded random DAGs, ancestral and anterial graphs, exhaustive anterial
graphs over a few nodes, and random Gaussian equilibrium models whose
corresponding graph is chain-connected anterial.

Labels are "1".."n".

Usage:
    import numpy as np
    from anterial.generate import random_anterial, random_gaussian_model

    rng = np.random.default_rng(7)
    g = random_anterial(rng, 6)
    model = random_gaussian_model(rng, 8)
"""

from itertools import combinations, product
from typing import Iterator, List, Optional

import numpy as np

from .gaussian import GaussianEquilibriumModel, GaussianPart, corresponding_graph
from .graph import Edge, EdgeType, MixedGraph, chain_components, is_anterial


def _labels(n: int) -> List[str]:
    return [str(k) for k in range(1, n + 1)]


def random_dag(rng: np.random.Generator, n: int, p: float = 0.4) -> MixedGraph:
    """DAG with each forward pair of a random order joined with probability p."""
    labels = _labels(n)
    order = list(rng.permutation(labels))
    edges = [Edge(a, b, EdgeType.DIRECTED) for a, b in combinations(order, 2) if rng.random() < p]
    return MixedGraph(labels, edges)


def random_ancestral(rng: np.random.Generator, n: int, p: float = 0.4,
                     p_bidirected: float = 0.3) -> MixedGraph:
    """Random DAG plus bidirected edges between pairs with no directed path."""
    dag = random_dag(rng, n, p)
    extra = [
        Edge.make(a, b, EdgeType.BIDIRECTED)
        for a, b in combinations(dag.labels, 2)
        if not dag.adjacent(a, b) and not dag.is_anterior(a, b) and not dag.is_anterior(b, a)
        and rng.random() < p_bidirected
    ]
    return dag.with_edges(extra)


def _blocks(rng: np.random.Generator, labels: List[str], max_block: int) -> List[List[str]]:
    order = list(rng.permutation(labels))
    blocks = []
    while order:
        size = int(rng.integers(1, max_block + 1))
        blocks.append(order[:size])
        order = order[size:]
    return blocks


def random_anterial(rng: np.random.Generator, n: int, p: float = 0.4, p_undirected: float = 0.6,
                    p_bidirected: float = 0.3, max_block: int = 3,
                    chain_connected: bool = False) -> MixedGraph:
    """
    Random anterial graph.

    Nodes are cut into ordered blocks; undirected edges stay inside a
    block, directed edges point to later blocks, bidirected edges join
    nodes with no semi-directed path between them. With chain_connected,
    bidirected edges join whole chain components.
    """
    labels = _labels(n)
    blocks = _blocks(rng, labels, max_block)
    edges = []
    for block in blocks:
        edges.extend(Edge.make(a, b, EdgeType.UNDIRECTED)
                     for a, b in combinations(block, 2) if rng.random() < p_undirected)
    for k, early in enumerate(blocks):
        for late in blocks[k + 1:]:
            edges.extend(Edge(a, b, EdgeType.DIRECTED) for a, b in product(early, late) if rng.random() < p)
    g = MixedGraph(labels, edges)

    def unrelated(a: str, b: str) -> bool:
        return not g.adjacent(a, b) and not g.is_anterior(a, b) and not g.is_anterior(b, a)

    if chain_connected:
        extra = []
        for left, right in combinations(chain_components(g).parts, 2):
            if all(unrelated(a, b) for a in left for b in right) and rng.random() < p_bidirected:
                extra.extend(Edge.make(a, b, EdgeType.BIDIRECTED) for a in left for b in right)
    else:
        extra = [Edge.make(a, b, EdgeType.BIDIRECTED)
                 for a, b in combinations(labels, 2) if unrelated(a, b) and rng.random() < p_bidirected]
    return g.with_edges(extra)


_PAIR_STATES = (None, EdgeType.DIRECTED, "reversed", EdgeType.UNDIRECTED, EdgeType.BIDIRECTED)


def all_anterial(n: int) -> Iterator[MixedGraph]:
    """Every anterial graph over labels 1..n (labelled, not up to isomorphism)."""
    labels = _labels(n)
    pairs = list(combinations(labels, 2))
    for states in product(_PAIR_STATES, repeat=len(pairs)):
        edges = []
        for (a, b), state in zip(pairs, states):
            if state is None:
                continue
            if state == "reversed":
                edges.append(Edge(b, a, EdgeType.DIRECTED))
            elif state is EdgeType.DIRECTED:
                edges.append(Edge(a, b, EdgeType.DIRECTED))
            else:
                edges.append(Edge.make(a, b, state))
        g = MixedGraph(labels, edges)
        if is_anterial(g):
            yield g


def random_subset(rng: np.random.Generator, items, p: float = 0.5) -> frozenset:
    return frozenset(item for item in sorted(items) if rng.random() < p)


# ============================================================================
# GAUSSIAN MODELS
# ============================================================================

def _signed(rng: np.random.Generator, low: float, high: float, size=None):
    return rng.uniform(low, high, size) * rng.choice([-1.0, 1.0], size)


def _random_precision(rng: np.random.Generator, size: int, p: float) -> np.ndarray:
    off = np.zeros((size, size))
    for a, b in combinations(range(size), 2):
        if rng.random() < p:
            off[a, b] = off[b, a] = _signed(rng, 0.3, 0.6)
    while np.linalg.eigvalsh(np.eye(size) + off).min() < 0.2:
        off /= 2
    return np.eye(size) + off


def random_gaussian_model(rng: np.random.Generator, n: int, max_part: int = 3,
                          p_parent: float = 0.5, p_link: float = 0.7,
                          p_coupling: float = 0.4, name: Optional[str] = None) -> GaussianEquilibriumModel:
    """
    Random valid model over labels 1..n.

    Coupling blocks are dense and only placed between parts with no
    semi-directed path between any of their nodes.
    """
    blocks = _blocks(rng, _labels(n), max_part)
    parts = []
    earlier: List[str] = []
    for block in blocks:
        parents = [p for p in earlier if rng.random() < p_parent][:3]
        coeff = np.where(rng.random((len(block), len(parents))) < p_link,
                         _signed(rng, 0.4, 0.9, (len(block), len(parents))), 0.0)
        parts.append(GaussianPart(
            nodes=block,
            parents=parents,
            precision=_random_precision(rng, len(block), p_link),
            coeff=coeff,
            mean=rng.normal(0.0, 1.0, len(block)),
        ))
        earlier.extend(block)

    uncoupled = GaussianEquilibriumModel.from_parts(parts)
    g = corresponding_graph(uncoupled)
    entries = []
    for a, b in combinations(range(len(parts)), 2):
        related = any(g.is_anterior(x, y) or g.is_anterior(y, x)
                      for x in parts[a].nodes for y in parts[b].nodes)
        if not related and rng.random() < p_coupling:
            entries.append({"a": a, "b": b,
                            "block": _signed(rng, 0.2, 0.4, (len(parts[a].nodes), len(parts[b].nodes)))})
    offsets = np.cumsum([0] + [len(part.nodes) for part in parts])
    while True:
        matrix = np.eye(n)
        for entry in entries:
            rows = slice(offsets[entry["a"]], offsets[entry["a"] + 1])
            cols = slice(offsets[entry["b"]], offsets[entry["b"] + 1])
            matrix[rows, cols] = entry["block"]
            matrix[cols, rows] = entry["block"].T
        if np.linalg.eigvalsh(matrix).min() > 0.05:
            return GaussianEquilibriumModel.from_parts(parts, entries, name=name or "")
        for entry in entries:
            entry["block"] = entry["block"] / 2
