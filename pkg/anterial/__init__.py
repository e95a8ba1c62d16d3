"""
Anterial Graph Toolkit
Separation, marginalisation/conditioning, interventions, counterfactual
graphs, Gaussian equilibrium models and adjustment set selection.
"""
from .graph import (
    AnterialError, GraphError, Edge, EdgeType, Mark, MixedGraph,
    build_graph, classify, chain_components, relatives, maximize, collapse,
    primitive_inducing_path, sort_labels,
)
from .separation import separated, connecting_walk, separated_bruteforce, markov_equivalent, find_separating_set
from .transforms import alpha_m, alpha_c, compose_check, TransformKind, TransformSpec
from .causal import (
    InterventionSpec, CounterfactualNode, do_graph, phi, swaig,
    parallel_worlds_swig, node_splitting_swig, normalize_swig_labels,
)
from .gaussian import (
    GaussianPart, ErrorCoupling, GaussianEquilibriumModel, JointLaw, SampleMatrix,
    corresponding_graph, joint_law, coupled_law, intervene_model, split_parts,
    sample_equilibrium, gibbs_sample, sample_coupled, fisher_z, exact_ci, markov_report,
)
from .adjust import AdjustmentProblem, AdjustmentResult, select_adjustment, verify_adjustment, brute_force_adjustment
from .io import load_graph, dump_graph, load_model, load_default_models, to_dot

__all__ = [
    "AnterialError", "GraphError", "Edge", "EdgeType", "Mark", "MixedGraph",
    "build_graph", "classify", "chain_components", "relatives", "maximize", "collapse",
    "primitive_inducing_path", "sort_labels",
    "separated", "connecting_walk", "separated_bruteforce", "markov_equivalent", "find_separating_set",
    "alpha_m", "alpha_c", "compose_check", "TransformKind", "TransformSpec",
    "InterventionSpec", "CounterfactualNode", "do_graph", "phi", "swaig",
    "parallel_worlds_swig", "node_splitting_swig", "normalize_swig_labels",
    "GaussianPart", "ErrorCoupling", "GaussianEquilibriumModel", "JointLaw", "SampleMatrix",
    "corresponding_graph", "joint_law", "coupled_law", "intervene_model", "split_parts",
    "sample_equilibrium", "gibbs_sample", "sample_coupled", "fisher_z", "exact_ci", "markov_report",
    "AdjustmentProblem", "AdjustmentResult", "select_adjustment", "verify_adjustment", "brute_force_adjustment",
    "load_graph", "dump_graph", "load_model", "load_default_models", "to_dot",
]
