#!/usr/bin/env python3
"""
Graph, Model and Sample Codecs
==============================
Graph JSON:
    {"nodes": ["1", "2"], "edges": [{"u": "1", "v": "2", "type": "-->"}]}
Model JSON:
    {"parts": [{"nodes": [...], "parents": [...], "precision": [[...]],
                "coeff": [[...]], "mean": [...]}],
     "error_cov": [{"a": 0, "b": 1, "block": [[...]]}]}
Samples: CSV with a header row of node labels.
DOT: directed edges as plain arrows, undirected without heads,
bidirected with heads at both ends.

Usage:
    from anterial.io import load_graph, dump_graph, to_dot

    g = load_graph("g.json")
    print(dump_graph(g))
    Path("g.dot").write_text(to_dot(g))
"""

import io as _io
import json
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from .gaussian import GaussianEquilibriumModel, GaussianPart, ModelError, SampleMatrix
from .graph import AnterialError, EdgeType, MixedGraph, build_graph

PathLike = Union[str, Path]

DATA_DIR = Path(__file__).parent / "data"


class FormatError(AnterialError):
    """Raised for malformed JSON or CSV input."""
    pass


def _read_json(path: PathLike) -> Any:
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: invalid JSON ({e})") from e


# ============================================================================
# GRAPHS
# ============================================================================

def graph_from_dict(data: Dict[str, Any]) -> MixedGraph:
    try:
        nodes = [str(n) for n in data["nodes"]]
        edges = [(e["u"], e["v"], e["type"]) for e in data.get("edges", [])]
    except (KeyError, TypeError) as e:
        raise FormatError(f"Graph JSON needs 'nodes' and edges with u/v/type: {e}") from e
    return build_graph(nodes, edges)


def graph_to_dict(g: MixedGraph) -> Dict[str, Any]:
    return {
        "nodes": list(g.labels),
        "edges": [{"u": e.u, "v": e.v, "type": e.kind.value} for e in g.sorted_edges()],
    }


def load_graph(path: PathLike) -> MixedGraph:
    return graph_from_dict(_read_json(path))


def dump_graph(g: MixedGraph, indent: int = 2) -> str:
    return json.dumps(graph_to_dict(g), indent=indent)


def _quote(label: str) -> str:
    return '"{}"'.format(label.replace('"', r'\"'))


_DOT_STYLE = {
    EdgeType.DIRECTED: "",
    EdgeType.UNDIRECTED: " [dir=none]",
    EdgeType.BIDIRECTED: " [dir=both]",
}


def to_dot(g: MixedGraph, name: str = "G") -> str:
    lines = [f"digraph {_quote(name)} {{"]
    for label in g.labels:
        lines.append(f"  {_quote(label)};")
    for e in g.sorted_edges():
        lines.append(f"  {_quote(e.u)} -> {_quote(e.v)}{_DOT_STYLE[e.kind]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ============================================================================
# MODELS
# ============================================================================

def model_from_dict(data: Dict[str, Any], name: str = "") -> GaussianEquilibriumModel:
    try:
        parts = [
            GaussianPart(
                nodes=p["nodes"],
                parents=p.get("parents", []),
                precision=p["precision"],
                coeff=p.get("coeff", [[] for _ in p["nodes"]]),
                mean=p.get("mean", [0.0] * len(p["nodes"])),
            )
            for p in data["parts"]
        ]
        return GaussianEquilibriumModel.from_parts(parts, data.get("error_cov", []), name=name)
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"Malformed model JSON: {e}") from e


def model_to_dict(model: GaussianEquilibriumModel) -> Dict[str, Any]:
    if model.fixed:
        raise ModelError("Intervened models have no JSON form")
    return {
        "parts": [
            {
                "nodes": part.nodes,
                "parents": part.parents,
                "precision": part.precision.tolist(),
                "coeff": part.coeff.tolist(),
                "mean": part.mean.tolist(),
            }
            for part in model.parts
        ],
        "error_cov": model.coupling.to_entries(),
    }


def load_model(path: PathLike) -> GaussianEquilibriumModel:
    return model_from_dict(_read_json(path), name=Path(path).stem)


def load_default_models() -> Dict[str, GaussianEquilibriumModel]:
    """The shipped models, keyed by file stem."""
    return {path.stem: load_model(path) for path in sorted(DATA_DIR.glob("*.json"))}


# ============================================================================
# SAMPLES
# ============================================================================

def samples_to_csv(samples: SampleMatrix, float_digits: int = 17) -> str:
    buffer = _io.StringIO()
    np.savetxt(buffer, samples.values, delimiter=",", fmt=f"%.{float_digits}g",
               header=",".join(samples.labels), comments="")
    return buffer.getvalue()


def load_samples(path: PathLike, provenance: str = "equilibrium") -> SampleMatrix:
    with open(path) as f:
        header = f.readline().strip()
        if not header:
            raise FormatError(f"{path}: missing header row")
        try:
            values = np.loadtxt(f, delimiter=",", ndmin=2)
        except ValueError as e:
            raise FormatError(f"{path}: {e}") from e
    labels = header.split(",")
    if values.shape[1] != len(labels):
        raise FormatError(f"{path}: {values.shape[1]} columns for {len(labels)} labels")
    return SampleMatrix(labels, values, provenance)
