#!/usr/bin/env python3
"""
Tests for graph-core: construction, classification, relatives,
primitive inducing paths, maximisation and collapsing.
"""

import numpy as np
import pytest

from anterial.graph import (
    DuplicateEdge, DuplicateNode, EdgeType, GraphError, Mark, NotChainConnected, NotChainMixed,
    SelfLoop, UnknownNode, build_graph, chain_components, classify, collapse,
    is_anterial, maximize, primitive_inducing_path, relatives, sort_labels,
)
from anterial.generate import all_anterial, random_anterial, random_dag
from anterial.separation import find_separating_set, markov_equivalent
from tests.helpers import all_chain_mixed, edge_set, graph_of


class TestBuildGraph:
    """Validation in build_graph."""

    def test_edge_aliases(self):
        """Test "<--" flips the edge and "--" means undirected."""
        g = build_graph(["1", "2", "3"], [("1", "2", "<--"), ("2", "3", "--")])
        assert g.edge_type("1", "2") is EdgeType.DIRECTED
        assert g.parents("1") == {"2"}
        assert g.neighbors("3") == {"2"}

    def test_duplicate_node(self):
        """Test repeated labels are rejected."""
        with pytest.raises(DuplicateNode):
            build_graph(["1", "1"], [])

    def test_duplicate_edge(self):
        """Test a second edge on the same pair is rejected."""
        with pytest.raises(DuplicateEdge):
            build_graph(["1", "2"], [("1", "2", "-->"), ("2", "1", "<->")])

    def test_self_loop(self):
        """Test self-loops are rejected."""
        with pytest.raises(SelfLoop):
            build_graph(["1"], [("1", "1", "---")])

    def test_unknown_endpoint(self):
        """Test edges must join declared nodes."""
        with pytest.raises(UnknownNode):
            build_graph(["1"], [("1", "2", "-->")])

    def test_marks(self):
        """Test end marks of each edge type."""
        g = graph_of("1 --> 2", "2 <-> 3", "3 --- 4")
        assert g.mark_at("1", "2") is Mark.TAIL
        assert g.mark_at("2", "1") is Mark.HEAD
        assert g.mark_at("2", "3") is Mark.HEAD
        assert g.mark_at("4", "3") is Mark.TAIL

    def test_label_order(self):
        """Test numeric labels sort numerically, others after."""
        assert sort_labels(["10", "x", "2", "10^do(2)"]) == ["2", "10", "10^do(2)", "x"]


class TestClassify:
    """Graph-class predicates."""

    def test_dag(self):
        """Test a chain of directed edges is a DAG and anterial."""
        report = classify(graph_of("1 --> 2", "2 --> 3"))
        assert report.is_dag
        assert report.is_anterial
        assert report.is_maximal

    def test_bidirected_with_semi_directed_path(self):
        """Test 1<->2 with 1-->3-->2 is not anterial and carries a witness."""
        report = classify(graph_of("1 <-> 2", "1 --> 3", "3 --> 2"))
        assert report.is_chain_mixed
        assert not report.is_anterial
        assert "is_anterial" in report.witnesses

    def test_semi_directed_cycle(self):
        """Test 1-->2---3-->1 is not chain mixed."""
        report = classify(graph_of("1 --> 2", "2 --- 3", "3 --> 1"))
        assert not report.is_chain_mixed
        assert not report.is_anterial
        assert report.witnesses["is_chain_mixed"][0] == report.witnesses["is_chain_mixed"][-1]

    def test_chain_graph_not_ancestral(self):
        """Test an arrow into an undirected section breaks ancestrality only."""
        report = classify(graph_of("1 --> 2", "2 --- 3"))
        assert report.is_chain_graph
        assert report.is_anterial
        assert not report.is_ancestral

    def test_chain_connection(self):
        """Test a bidirected edge must reach the whole chain component."""
        partial = classify(graph_of("1 <-> 2", "2 --- 3"))
        full = classify(graph_of("1 <-> 2", "1 <-> 3", "2 --- 3"))
        assert not partial.is_chain_connected
        assert partial.witnesses["is_chain_connected"] == ["1", "2", "3"]
        assert full.is_chain_connected

    def test_to_dict(self):
        """Test the report serialises every predicate."""
        data = classify(graph_of("1 --> 2")).to_dict()
        assert data["is_dag"] is True
        assert data["witnesses"] == {}

    def test_implications_exhaustive(self):
        """Test DAG => ancestral => anterial => chain mixed over all 3-node graphs."""
        for g in all_chain_mixed(3):
            r = classify(g)
            assert r.is_chain_mixed
            if r.is_dag:
                assert r.is_ancestral
            if r.is_ancestral:
                assert r.is_anterial
            if r.is_chain_connected:
                assert r.is_anterial

    def test_implications_random(self):
        """Test the implications on random anterial graphs up to 8 nodes."""
        rng = np.random.default_rng(11)
        for _ in range(60):
            r = classify(random_anterial(rng, int(rng.integers(2, 9))))
            assert r.is_chain_mixed and r.is_anterial


class TestChainComponents:
    """Chain components."""

    def test_directed_then_undirected(self):
        """Test 1-->2---3 has components {1} and {2,3}."""
        comps = chain_components(graph_of("1 --> 2", "2 --- 3"))
        assert set(comps.parts) == {frozenset({"1"}), frozenset({"2", "3"})}
        assert comps.tau("3") == {"2", "3"}

    def test_dag_singletons(self):
        """Test every node of a DAG is its own component."""
        comps = chain_components(graph_of("1 --> 2", "1 --> 3", "2 --> 3"))
        assert len(comps) == 3

    def test_bidirected_does_not_merge(self):
        """Test 1---2---3 with 4<->2 gives {1,2,3} and {4}."""
        comps = chain_components(graph_of("1 --- 2", "2 --- 3", "4 <-> 2"))
        assert set(comps.parts) == {frozenset({"1", "2", "3"}), frozenset({"4"})}

    def test_partition(self):
        """Test components partition the nodes on random graphs."""
        rng = np.random.default_rng(3)
        for _ in range(30):
            g = random_anterial(rng, 7)
            comps = chain_components(g)
            flat = [n for part in comps for n in part]
            assert sorted(flat) == sorted(g.labels)

    def test_unknown_node(self):
        """Test tau of a stranger raises UnknownNode."""
        with pytest.raises(UnknownNode):
            chain_components(graph_of("1 --> 2")).tau("9")


class TestRelatives:
    """ne, pa, ant, sant and po."""

    def test_anterior_through_undirected(self):
        """Test ant({3}) in 1-->2---3 is {1,2}."""
        g = graph_of("1 --> 2", "2 --- 3")
        assert relatives(g, {"3"}, "ant") == {"1", "2"}
        assert relatives(g, {"3"}, "sant") == {"1"}
        assert relatives(g, {"3"}, "ne") == {"2"}
        assert relatives(g, {"2"}, "pa") == {"1"}

    def test_posterior(self):
        """Test po({1}) in 1-->2---3 is {2,3}."""
        g = graph_of("1 --> 2", "2 --- 3")
        assert relatives(g, {"1"}, "po") == {"2", "3"}

    def test_source_has_empty_anterior(self):
        """Test a node without in-edges has no anterior."""
        assert relatives(graph_of("1 --> 2"), {"1"}, "ant") == frozenset()

    def test_excludes_the_set(self):
        """Test the set itself is never returned."""
        g = graph_of("1 --- 2", "2 --- 3")
        assert relatives(g, {"1", "2"}, "ant") == {"3"}

    def test_unknown_kind(self):
        """Test an unknown relation name is a ValueError."""
        with pytest.raises(ValueError):
            relatives(graph_of("1 --> 2"), {"1"}, "desc")

    def test_unknown_node(self):
        """Test unknown nodes raise UnknownNode."""
        with pytest.raises(UnknownNode):
            relatives(graph_of("1 --> 2"), {"7"}, "pa")

    def test_posterior_anterior_symmetry(self):
        """Test j in po(C) iff C meets ant(j)."""
        rng = np.random.default_rng(5)
        for _ in range(40):
            g = random_anterial(rng, 6)
            c = {str(k) for k in rng.choice(range(1, 7), size=2, replace=False)}
            po = relatives(g, c, "po")
            for j in g.labels:
                if j in c:
                    continue
                assert (j in po) == bool(c & g.anterior(j))


class TestPrimitiveInducingPath:
    """Witnesses of inseparability."""

    def test_six_node_witness(self, inducing_graph):
        """Test <1,2,3,4> is found and 1, 4 have no separating set."""
        assert primitive_inducing_path(inducing_graph, "1", "4") == ["1", "2", "3", "4"]
        assert find_separating_set(inducing_graph, "1", "4", {"2", "3", "5", "6"}) is None

    def test_directed_interior(self):
        """Test no witness between 1 and 3 in 1-->2-->3."""
        assert primitive_inducing_path(graph_of("1 --> 2", "2 --> 3"), "1", "3") is None

    def test_interior_outside_anterior(self):
        """Test 1<->2<--3 has no witness: 2 is not anterior to 1 or 3."""
        assert primitive_inducing_path(graph_of("1 <-> 2", "3 --> 2"), "1", "3") is None

    def test_same_node(self):
        """Test i == j is rejected."""
        with pytest.raises(GraphError):
            primitive_inducing_path(graph_of("1 --> 2"), "1", "1")


class TestMaximize:
    """Maximal completion."""

    def test_dag_unchanged(self):
        """Test a DAG is already maximal."""
        g = graph_of("1 --> 2", "2 --> 3", "1 --> 4")
        assert maximize(g) == g

    def test_adds_bidirected(self, inducing_graph):
        """Test the six-node graph gains 1<->4."""
        h = maximize(inducing_graph)
        assert h.edge_type("1", "4") is EdgeType.BIDIRECTED
        assert edge_set(h) - edge_set(inducing_graph) == {("1", "4", "<->")}

    def test_not_chain_mixed(self):
        """Test a semi-directed cycle is rejected."""
        with pytest.raises(NotChainMixed):
            maximize(graph_of("1 --> 2", "2 --- 3", "3 --> 1"))

    def test_properties_random(self):
        """Test maximal, Markov equivalent, supergraph and anterior-preserving."""
        rng = np.random.default_rng(17)
        for _ in range(40):
            g = random_anterial(rng, int(rng.integers(3, 7)))
            h = maximize(g)
            assert edge_set(g) <= edge_set(h)
            assert all(g.anterior(n) == h.anterior(n) for n in g.labels)
            assert markov_equivalent(g, h)
            assert classify(h).is_maximal
            for i in h.labels:
                for j in h.labels:
                    if i < j and not h.adjacent(i, j):
                        assert find_separating_set(h, i, j, set(h.labels)) is not None

    @pytest.mark.slow
    def test_properties_exhaustive(self):
        """Test the maximize properties on every anterial graph over four nodes."""
        for g in all_anterial(4):
            h = maximize(g)
            assert edge_set(g) <= edge_set(h)
            assert all(g.anterior(n) == h.anterior(n) for n in g.labels)
            assert markov_equivalent(g, h)
            assert classify(h).is_maximal


class TestCollapse:
    """Collapsed graph over chain components."""

    def test_example(self):
        """Test 1-->2---3 with 4<->2, 4<->3 collapses to {1}-->{2,3}<->{4}."""
        h = collapse(graph_of("1 --> 2", "2 --- 3", "4 <-> 2", "4 <-> 3"))
        assert set(h.labels) == {"{1}", "{2,3}", "{4}"}
        assert h.edge_type("{1}", "{2,3}") is EdgeType.DIRECTED
        assert h.edge_type("{2,3}", "{4}") is EdgeType.BIDIRECTED

    def test_singletons(self):
        """Test a DAG collapses onto a relabelled copy of itself."""
        g = graph_of("1 --> 2", "2 --> 3")
        h = collapse(g)
        assert h == g.relabel({n: "{" + n + "}" for n in g.labels})

    def test_not_chain_connected(self):
        """Test a partially connected bidirected edge is rejected."""
        with pytest.raises(NotChainConnected):
            collapse(graph_of("1 <-> 2", "2 --- 3"))

    def test_output_ancestral(self):
        """Test collapsed random chain-connected graphs are ancestral."""
        rng = np.random.default_rng(23)
        for _ in range(40):
            g = random_anterial(rng, int(rng.integers(2, 9)), chain_connected=True)
            assert classify(collapse(g)).is_ancestral


class TestGenerators:
    """Generators feeding the property sweeps."""

    def test_random_dag_is_dag(self):
        """Test random_dag output is a DAG."""
        rng = np.random.default_rng(1)
        assert all(classify(random_dag(rng, 6)).is_dag for _ in range(20))

    def test_all_anterial_three(self):
        """Test the exhaustive enumeration yields only anterial graphs."""
        graphs = list(all_anterial(3))
        assert graphs
        assert all(is_anterial(g) for g in graphs)
        assert len(set(graphs)) == len(graphs)
