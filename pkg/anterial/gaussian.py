#!/usr/bin/env python3
"""
Gaussian Structural Equilibrium Models
======================================
Linear-Gaussian parts in a fixed order. Part tau with parents pa(tau)
has the equilibrium law

    X_tau | x_pa  ~  N(mu + B x_pa, K^-1)

realised as X_tau = mu + B x_pa + W eps, with W the lower Cholesky factor
of K^-1 and eps standard normal. Noise coordinates of different parts may
be correlated through the coupling matrix R.

Covers the corresponding graph, the closed-form joint law, equilibrium,
Gibbs and error-coupled sampling, interventions, Fisher-Z testing and the
pairwise Markov report.

Usage:
    from anterial.gaussian import corresponding_graph, joint_law, sample_equilibrium

    g = corresponding_graph(model)
    law = joint_law(model)
    law.ci("1", "4", ["2", "3"])
    data = sample_equilibrium(model, 10000, seed=7)
    markov_report(g, data)
"""

import logging
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
from scipy import stats

from .causal import InterventionSpec, do_label
from .graph import (
    AnterialError,
    Edge,
    EdgeType,
    MixedGraph,
    anteriality_violation,
    sort_labels,
)
from .separation import pairwise_separation_set, separated

logger = logging.getLogger(__name__)

ZERO_TOL = 1e-9
CI_TOL = 1e-8
MIN_EIGENVALUE = 1e-10


# ============================================================================
# ERRORS
# ============================================================================

class ModelError(AnterialError):
    """Base exception for Gaussian models and data."""
    pass


class InvalidModel(ModelError):
    """Raised when parts, shapes or the coupling matrix are inconsistent."""
    pass


class MissingValues(ModelError):
    """Raised when an intervention on a model has no values."""
    pass


class NonAnterialResult(ModelError):
    """Raised when error coupling joins nodes linked by a semi-directed path."""
    pass


class SingularCovariance(ModelError):
    pass


class TooFewSamples(ModelError):
    pass


class ConstantColumn(ModelError):
    """Raised when a tested column has zero variance (treated nodes)."""
    pass


class LabelMismatch(ModelError):
    pass


# ============================================================================
# MODEL TYPES
# ============================================================================

def _matrix(value, rows: int, cols: int, what: str) -> np.ndarray:
    array = np.asarray(value, dtype=float)
    if array.size == 0:
        array = array.reshape(rows, cols)
    if array.shape != (rows, cols):
        raise InvalidModel(f"{what} has shape {array.shape}, expected {(rows, cols)}")
    return array


@dataclass(eq=False)
class GaussianPart:
    """
    One part of the model.

    ``noise`` lists the noise coordinates feeding the part (by default its
    own nodes) and ``loading`` maps them into the part; intervened parts
    keep the noise of the part they came from.
    """
    nodes: List[str]
    parents: List[str]
    precision: np.ndarray
    coeff: np.ndarray
    mean: np.ndarray
    noise: Optional[List[str]] = None
    loading: Optional[np.ndarray] = None

    def __post_init__(self):
        size = len(self.nodes)
        self.nodes = [str(n) for n in self.nodes]
        self.parents = [str(p) for p in self.parents]
        self.precision = _matrix(self.precision, size, size, f"precision of {self.nodes}")
        self.coeff = _matrix(self.coeff, size, len(self.parents), f"coeff of {self.nodes}")
        self.mean = np.asarray(self.mean, dtype=float).reshape(-1)
        if self.mean.shape != (size,):
            raise InvalidModel(f"mean of {self.nodes} has {self.mean.size} entries, expected {size}")
        if not np.allclose(self.precision, self.precision.T, atol=1e-12):
            raise InvalidModel(f"precision of {self.nodes} is not symmetric")
        if size and np.linalg.eigvalsh(self.precision).min() <= MIN_EIGENVALUE:
            raise InvalidModel(f"precision of {self.nodes} is not positive definite")
        if self.noise is None:
            self.noise = list(self.nodes)
        if self.loading is None:
            if self.noise != self.nodes:
                raise InvalidModel("A part with foreign noise coordinates needs an explicit loading")
            self.loading = np.linalg.cholesky(np.linalg.inv(self.precision)) if size else np.zeros((0, 0))
        self.loading = _matrix(self.loading, size, len(self.noise), f"loading of {self.nodes}")

    @property
    def covariance(self) -> np.ndarray:
        return np.linalg.inv(self.precision)

    def conditional_coefficient(self, node: str, parent: str) -> float:
        """Coefficient of x_parent in E[X_node | x_rest of the part, x_pa]."""
        i, k = self.nodes.index(node), self.parents.index(parent)
        return float((self.precision[i] @ self.coeff[:, k]) / self.precision[i, i])


@dataclass(eq=False)
class ErrorCoupling:
    """Correlation matrix R over noise coordinates, grouped in blocks (one per declared part)."""
    labels: List[str]
    matrix: np.ndarray
    blocks: List[List[str]]

    def __post_init__(self):
        self._index = {label: k for k, label in enumerate(self.labels)}
        if self.matrix.shape != (len(self.labels), len(self.labels)):
            raise InvalidModel("Coupling matrix does not match its labels")
        if not np.allclose(self.matrix, self.matrix.T, atol=1e-12):
            raise InvalidModel("Coupling matrix is not symmetric")
        if self.labels and np.linalg.eigvalsh(self.matrix).min() < -MIN_EIGENVALUE:
            raise InvalidModel("Coupling matrix is not positive semi-definite")

    @classmethod
    def from_blocks(cls, parts: Sequence[GaussianPart], entries: Iterable[dict] = ()) -> "ErrorCoupling":
        """Identity within each part plus the declared cross-part blocks {"a", "b", "block"}."""
        labels = [n for part in parts for n in part.nodes]
        offsets = np.cumsum([0] + [len(part.nodes) for part in parts])
        matrix = np.eye(len(labels))
        for entry in entries:
            a, b = int(entry["a"]), int(entry["b"])
            if a == b or not (0 <= a < len(parts) and 0 <= b < len(parts)):
                raise InvalidModel(f"Invalid coupling block between parts {a} and {b}")
            block = _matrix(entry["block"], len(parts[a].nodes), len(parts[b].nodes), f"coupling block {a}-{b}")
            matrix[offsets[a]:offsets[a + 1], offsets[b]:offsets[b + 1]] = block
            matrix[offsets[b]:offsets[b + 1], offsets[a]:offsets[a + 1]] = block.T
        return cls(labels, matrix, [list(part.nodes) for part in parts])

    def indices(self, labels: Sequence[str]) -> List[int]:
        return [self._index[label] for label in labels]

    def cross(self, left: Sequence[str], right: Sequence[str]) -> np.ndarray:
        return self.matrix[np.ix_(self.indices(left), self.indices(right))]

    def square_root(self) -> np.ndarray:
        """Symmetric square root S with S S^T = R."""
        values, vectors = np.linalg.eigh(self.matrix)
        return (vectors * np.sqrt(np.clip(values, 0.0, None))) @ vectors.T

    def to_entries(self) -> List[dict]:
        entries = []
        for a, b in combinations(range(len(self.blocks)), 2):
            block = self.cross(self.blocks[a], self.blocks[b])
            if np.any(block != 0.0):
                entries.append({"a": a, "b": b, "block": block.tolist()})
        return entries


@dataclass(eq=False)
class GaussianEquilibriumModel:
    """Ordered Gaussian parts, their error coupling, and constant (treated) nodes."""
    parts: List[GaussianPart]
    coupling: ErrorCoupling
    fixed: Dict[str, float] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        seen = set(self.fixed)
        for part in self.parts:
            for parent in part.parents:
                if parent not in seen:
                    raise InvalidModel(f"Parent {parent} of {part.nodes} is not in an earlier part")
            for node in part.nodes:
                if node in seen:
                    raise InvalidModel(f"Node {node} appears twice")
            missing = set(part.noise) - set(self.coupling.labels)
            if missing:
                raise InvalidModel(f"Noise coordinates {sorted(missing)} are not in the coupling")
            seen.update(part.nodes)

    @classmethod
    def from_parts(cls, parts: Sequence[GaussianPart], coupling_entries: Iterable[dict] = (),
                   name: str = "") -> "GaussianEquilibriumModel":
        parts = list(parts)
        return cls(parts, ErrorCoupling.from_blocks(parts, coupling_entries), name=name)

    @property
    def labels(self) -> List[str]:
        return list(self.fixed) + [n for part in self.parts for n in part.nodes]

    def part_of(self, node: str) -> GaussianPart:
        for part in self.parts:
            if node in part.nodes:
                return part
        raise InvalidModel(f"{node} is not a random node of the model")


@dataclass
class JointLaw:
    """Closed-form Gaussian law over labelled coordinates."""
    labels: List[str]
    mean: np.ndarray
    cov: np.ndarray

    def index(self, labels: Iterable[str]) -> List[int]:
        position = {label: k for k, label in enumerate(self.labels)}
        try:
            return [position[label] for label in labels]
        except KeyError as e:
            raise LabelMismatch(f"Unknown coordinate {e.args[0]}") from None

    def is_constant(self, label: str, tol: float = ZERO_TOL) -> bool:
        k = self.index([label])[0]
        return self.cov[k, k] <= tol

    def restrict(self, labels: Sequence[str]) -> "JointLaw":
        idx = self.index(labels)
        return JointLaw(list(labels), self.mean[idx], self.cov[np.ix_(idx, idx)])

    def partial_correlation(self, i: str, j: str, s: Iterable[str] = ()) -> float:
        a, b = self.index([i, j])
        return partial_correlation(self.cov, a, b, self.index(s))

    def ci(self, i: str, j: str, s: Iterable[str] = (), tol: float = CI_TOL) -> bool:
        a, b = self.index([i, j])
        return exact_ci(self.cov, a, b, self.index(s), tol=tol)


@dataclass
class SampleMatrix:
    labels: List[str]
    values: np.ndarray
    provenance: str = "equilibrium"

    def __post_init__(self):
        if self.values.ndim != 2 or self.values.shape[1] != len(self.labels):
            raise LabelMismatch(f"{self.values.shape[1]} columns for {len(self.labels)} labels")
        if self.values.shape[0] < 1:
            raise TooFewSamples("A sample matrix needs at least one row")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def index(self, labels: Iterable[str]) -> List[int]:
        position = {label: k for k, label in enumerate(self.labels)}
        try:
            return [position[label] for label in labels]
        except KeyError as e:
            raise LabelMismatch(f"Unknown column {e.args[0]}") from None

    def column(self, label: str) -> np.ndarray:
        return self.values[:, self.index([label])[0]]

    def is_constant(self, label: str) -> bool:
        column = self.column(label)
        return bool(np.all(column == column[0]))


# ============================================================================
# STRUCTURE
# ============================================================================

def _components(precision: np.ndarray, tol: float) -> List[List[int]]:
    support = nx.Graph()
    support.add_nodes_from(range(precision.shape[0]))
    rows, cols = np.nonzero(np.abs(precision) > tol)
    support.add_edges_from((r, c) for r, c in zip(rows, cols) if r < c)
    return sorted((sorted(c) for c in nx.connected_components(support)), key=lambda c: c[0])


def split_part(part: GaussianPart, tol: float = ZERO_TOL) -> List[GaussianPart]:
    """Split a part whose precision support is disconnected; rows keep their noise loading."""
    comps = _components(part.precision, tol)
    if len(comps) == 1:
        return [part]
    logger.debug("splitting part %s into %d", part.nodes, len(comps))
    return [
        GaussianPart(
            nodes=[part.nodes[k] for k in comp],
            parents=list(part.parents),
            precision=part.precision[np.ix_(comp, comp)],
            coeff=part.coeff[comp, :],
            mean=part.mean[comp],
            noise=list(part.noise),
            loading=part.loading[comp, :],
        )
        for comp in comps
    ]


def split_parts(model: GaussianEquilibriumModel, tol: float = ZERO_TOL) -> GaussianEquilibriumModel:
    """Model with every part split into the connected pieces of its precision support."""
    parts = [piece for part in model.parts for piece in split_part(part, tol)]
    if len(parts) == len(model.parts):
        return model
    return replace(model, parts=parts)


def _noise_covariance(model: GaussianEquilibriumModel, p: GaussianPart, q: GaussianPart) -> np.ndarray:
    """Covariance of the effective noises W_p eps and W_q eps."""
    return p.loading @ model.coupling.cross(p.noise, q.noise) @ q.loading.T


def corresponding_graph(model: GaussianEquilibriumModel, tol: float = ZERO_TOL) -> MixedGraph:
    """
    Graph of a model.

    Parts are split first. Within a part i --- j iff K[i, j] is nonzero;
    k --> i iff x_k moves the conditional mean of X_i given the rest of
    the part; parts with correlated effective noise are joined by all
    bidirected edges between them. Treated nodes only keep their
    outgoing edges.

    Raises:
        NonAnterialResult
    """
    model = split_parts(model, tol)
    edges = []
    for part in model.parts:
        for a, b in combinations(range(len(part.nodes)), 2):
            if abs(part.precision[a, b]) > tol:
                edges.append(Edge.make(part.nodes[a], part.nodes[b], EdgeType.UNDIRECTED))
        for node in part.nodes:
            for parent in part.parents:
                if abs(part.conditional_coefficient(node, parent)) > tol:
                    edges.append(Edge(parent, node, EdgeType.DIRECTED))
    for p, q in combinations(model.parts, 2):
        if np.any(np.abs(_noise_covariance(model, p, q)) > tol):
            edges.extend(Edge.make(i, j, EdgeType.BIDIRECTED) for i in p.nodes for j in q.nodes)
    g = MixedGraph(model.labels, edges)
    violation = anteriality_violation(g)
    if violation is not None:
        raise NonAnterialResult(
            f"Coupled noise joins nodes linked by a semi-directed path: {' ... '.join(violation)}")
    return g


# ============================================================================
# CLOSED FORM
# ============================================================================

def _linear_system(model: GaussianEquilibriumModel) -> Tuple[List[str], np.ndarray, np.ndarray, np.ndarray]:
    """X = A X + c + L eps over model.labels, L over the coupling's noise labels."""
    labels = model.labels
    index = {label: k for k, label in enumerate(labels)}
    size = len(labels)
    a = np.zeros((size, size))
    c = np.zeros(size)
    load = np.zeros((size, len(model.coupling.labels)))
    for node, value in model.fixed.items():
        c[index[node]] = value
    for part in model.parts:
        rows = [index[n] for n in part.nodes]
        if part.parents:
            a[np.ix_(rows, [index[p] for p in part.parents])] = part.coeff
        c[rows] = part.mean
        load[np.ix_(rows, model.coupling.indices(part.noise))] = part.loading
    return labels, a, c, load


def joint_law(model: GaussianEquilibriumModel) -> JointLaw:
    """Exact mean and covariance over model.labels by forward substitution."""
    labels, a, c, load = _linear_system(model)
    transfer = np.linalg.inv(np.eye(len(labels)) - a)
    spread = transfer @ load
    cov = spread @ model.coupling.matrix @ spread.T
    return JointLaw(labels, transfer @ c, (cov + cov.T) / 2)


def coupled_law(model: GaussianEquilibriumModel, spec: InterventionSpec) -> JointLaw:
    """
    Joint law of the observational world and the do(C) world sharing eps.

    Coordinates: model labels, then do_label(i, C) for every label.
    """
    model = split_parts(model)
    intervened = intervene_model(model, spec)
    obs_labels, a_obs, c_obs, l_obs = _linear_system(model)
    do_labels, a_do, c_do, l_do = _linear_system(intervened)
    order = [do_labels.index(label) for label in obs_labels]
    a_do = a_do[np.ix_(order, order)]
    c_do, l_do = c_do[order], l_do[order]

    size = len(obs_labels)
    a = np.zeros((2 * size, 2 * size))
    a[:size, :size], a[size:, size:] = a_obs, a_do
    transfer = np.linalg.inv(np.eye(2 * size) - a)
    spread = transfer @ np.vstack([l_obs, l_do])
    cov = spread @ model.coupling.matrix @ spread.T
    labels = obs_labels + [do_label(label, spec.treatment) for label in obs_labels]
    return JointLaw(labels, transfer @ np.concatenate([c_obs, c_do]), (cov + cov.T) / 2)


def partial_correlation(cov: np.ndarray, i: int, j: int, s: Sequence[int] = ()) -> float:
    """
    Partial correlation of coordinates i and j given S.

    Raises:
        SingularCovariance: the covariance of {i, j} u S is singular
    """
    idx = [i, j] + [k for k in s]
    sub = cov[np.ix_(idx, idx)]
    scale = max(float(np.max(np.abs(sub))), 1.0)
    if np.linalg.eigvalsh(sub).min() <= 1e-12 * scale:
        raise SingularCovariance(f"Covariance over coordinates {idx} is singular")
    inverse = np.linalg.inv(sub)
    return float(-inverse[0, 1] / np.sqrt(inverse[0, 0] * inverse[1, 1]))


def exact_ci(cov: np.ndarray, i: int, j: int, s: Sequence[int] = (), tol: float = CI_TOL) -> bool:
    """True iff |partial correlation of i, j given S| < tol."""
    return abs(partial_correlation(cov, i, j, s)) < tol


@dataclass
class FullConditional:
    """X_node | rest ~ N(intercept + sum coefficients[k] x_k, variance)."""
    node: str
    intercept: float
    coefficients: Dict[str, float]
    variance: float


def full_conditional(model: GaussianEquilibriumModel, node: str) -> FullConditional:
    """Gaussian full conditional of a node given the rest of its part and the part's parents."""
    part = model.part_of(node)
    m = part.nodes.index(node)
    k = part.precision
    diag = k[m, m]
    coefficients = {}
    for other, value in zip(part.nodes, k[m]):
        if other != node:
            coefficients[other] = float(-value / diag)
    for parent, value in zip(part.parents, k[m] @ part.coeff):
        coefficients[parent] = float(value / diag)
    return FullConditional(node, float(k[m] @ part.mean / diag), coefficients, float(1.0 / diag))


# ============================================================================
# INTERVENTIONS
# ============================================================================

def intervene_model(model: GaussianEquilibriumModel, spec: InterventionSpec,
                    tol: float = ZERO_TOL) -> GaussianEquilibriumModel:
    """
    Intervened model: treated nodes become constants, the rest of a
    treated part gets the conditional law given the treated values.

    With T the treated and U the untreated nodes of a part,
        mean   mu_U + K_UU^-1 K_UT mu_T
        coeff  [B_U + K_UU^-1 K_UT B_T | -K_UU^-1 K_UT]   over pa u T
        noise  W_U + K_UU^-1 K_UT W_T                      (same eps)
    Untouched parts are carried over as the same objects.

    Raises:
        MissingValues, InvalidModel
    """
    if spec.values is None:
        raise MissingValues("Intervening on a model needs values for every treated node")
    unknown = set(spec.treatment) - set(model.labels)
    if unknown:
        raise InvalidModel(f"Unknown treated nodes: {sort_labels(unknown)}")
    model = split_parts(model, tol)
    treated = spec.treatment
    fixed = dict(model.fixed)
    fixed.update({node: spec.values[node] for node in model.labels if node in treated})
    parts: List[GaussianPart] = []
    for part in model.parts:
        t = [k for k, n in enumerate(part.nodes) if n in treated]
        if not t:
            parts.append(part)
            continue
        u = [k for k, n in enumerate(part.nodes) if n not in treated]
        if not u:
            continue
        k_uu = part.precision[np.ix_(u, u)]
        regress = np.linalg.solve(k_uu, part.precision[np.ix_(u, t)])
        reduced = GaussianPart(
            nodes=[part.nodes[k] for k in u],
            parents=list(part.parents) + [part.nodes[k] for k in t],
            precision=k_uu,
            coeff=np.hstack([part.coeff[u] + regress @ part.coeff[t], -regress]),
            mean=part.mean[u] + regress @ part.mean[t],
            noise=list(part.noise),
            loading=part.loading[u] + regress @ part.loading[t],
        )
        parts.extend(split_part(reduced, tol))
    return GaussianEquilibriumModel(parts, model.coupling, fixed, name=model.name)


# ============================================================================
# SAMPLING
# ============================================================================

def _noise(model: GaussianEquilibriumModel, n: int, seed: int) -> np.ndarray:
    """eps over the coupling labels; one RNG stream per declared noise block."""
    streams = np.random.SeedSequence(seed).spawn(len(model.coupling.blocks))
    z = np.hstack([np.random.default_rng(stream).standard_normal((n, len(block)))
                   for stream, block in zip(streams, model.coupling.blocks)])
    return z @ model.coupling.square_root().T


def _forward(model: GaussianEquilibriumModel, eps: np.ndarray, n: int,
             reuse: Optional[Dict[int, Tuple[List[np.ndarray], List[np.ndarray]]]] = None,
             reference: Optional[Dict[str, np.ndarray]] = None) -> Tuple[Dict[str, np.ndarray], Dict]:
    """
    Apply the parts in order. A part already evaluated in ``reuse`` whose
    parent columns are the very same arrays returns the same outputs.
    """
    columns: Dict[str, np.ndarray] = {node: np.full(n, value) for node, value in model.fixed.items()}
    record: Dict[int, Tuple[List[np.ndarray], List[np.ndarray]]] = {}
    for part in model.parts:
        parent_columns = [columns[p] for p in part.parents]
        cached = (reuse or {}).get(id(part))
        if cached is not None and all(a is b for a, b in zip(cached[0], parent_columns)):
            outputs = cached[1]
        else:
            x_pa = np.column_stack(parent_columns) if parent_columns else np.zeros((n, 0))
            values = part.mean + x_pa @ part.coeff.T + eps[:, model.coupling.indices(part.noise)] @ part.loading.T
            outputs = [values[:, k].copy() for k in range(len(part.nodes))]
        record[id(part)] = (parent_columns, outputs)
        columns.update(zip(part.nodes, outputs))
    return columns, record


def sample_equilibrium(model: GaussianEquilibriumModel, n: int, seed: int = 7) -> SampleMatrix:
    """Draw n records directly from the equilibrium laws, parts in order."""
    if n < 1:
        raise TooFewSamples("n must be at least 1")
    columns, _ = _forward(model, _noise(model, n, seed), n)
    labels = model.labels
    return SampleMatrix(labels, np.column_stack([columns[label] for label in labels]), "equilibrium")


def sample_coupled(model: GaussianEquilibriumModel, spec: InterventionSpec, n: int,
                   seed: int = 7) -> SampleMatrix:
    """
    Observational and do(C) worlds driven by one eps draw per record.

    Columns of nodes with no treatment in their anterior are the same
    arrays in both worlds.

    Raises:
        MissingValues
    """
    if n < 1:
        raise TooFewSamples("n must be at least 1")
    model = split_parts(model)
    intervened = intervene_model(model, spec)
    eps = _noise(model, n, seed)
    observed, record = _forward(model, eps, n)
    counterfactual, _ = _forward(intervened, eps, n, reuse=record)
    labels = model.labels
    values = np.column_stack([observed[label] for label in labels] + [counterfactual[label] for label in labels])
    return SampleMatrix(labels + [do_label(label, spec.treatment) for label in labels], values, "coupled")


def _part_target(model: GaussianEquilibriumModel, part: GaussianPart, n: int, columns: Dict[str, np.ndarray],
                 noises: List[Tuple[GaussianPart, np.ndarray]]) -> Tuple[np.ndarray, np.ndarray]:
    """Mean rows (n x |tau|) and precision of a part given its parents and earlier noises."""
    x_pa = np.column_stack([columns[p] for p in part.parents]) if part.parents else np.zeros((n, 0))
    mean = part.mean + x_pa @ part.coeff.T
    cov = _noise_covariance(model, part, part)
    if noises:
        cross = np.hstack([_noise_covariance(model, part, q) for q, _ in noises])
        if np.any(cross != 0.0):
            earlier = np.vstack([np.hstack([_noise_covariance(model, q, r) for r, _ in noises]) for q, _ in noises])
            gain = cross @ np.linalg.pinv(earlier)
            realised = np.hstack([values for _, values in noises])
            mean = mean + realised @ gain.T
            cov = cov - gain @ cross.T
    return mean, np.linalg.inv((cov + cov.T) / 2)


def gibbs_sample(model: GaussianEquilibriumModel, n: int, burn_in: int = 10000,
                 seed: int = 7) -> SampleMatrix:
    """
    n independent chains of cyclic single-site Gibbs sweeps per part.

    Each part runs ``burn_in`` sweeps followed by the recorded one, with
    the parents held at their sampled values. When noises are coupled the
    target is the part's law given the realised noises of earlier parts.
    """
    if n < 1:
        raise TooFewSamples("n must be at least 1")
    if burn_in < 0:
        raise ValueError("burn_in must be non-negative")
    streams = np.random.SeedSequence(seed).spawn(max(len(model.parts), 1))
    columns: Dict[str, np.ndarray] = {node: np.full(n, value) for node, value in model.fixed.items()}
    noises: List[Tuple[GaussianPart, np.ndarray]] = []
    for part, stream in zip(model.parts, streams):
        rng = np.random.default_rng(stream)
        mean, precision = _part_target(model, part, n, columns, noises)
        state = mean.copy()
        diag = np.diag(precision)
        spread = 1.0 / np.sqrt(diag)
        for _ in range(burn_in + 1):
            for m in range(len(part.nodes)):
                offset = (state - mean) @ precision[m] - diag[m] * (state[:, m] - mean[:, m])
                state[:, m] = mean[:, m] - offset / diag[m] + spread[m] * rng.standard_normal(n)
        logger.debug("gibbs: part %s done after %d sweeps", part.nodes, burn_in + 1)
        for k, node in enumerate(part.nodes):
            columns[node] = state[:, k]
        x_pa = np.column_stack([columns[p] for p in part.parents]) if part.parents else np.zeros((n, 0))
        noises.append((part, state - (part.mean + x_pa @ part.coeff.T)))
    labels = model.labels
    return SampleMatrix(labels, np.column_stack([columns[label] for label in labels]), "gibbs")


# ============================================================================
# TESTING
# ============================================================================

def fisher_z(samples: SampleMatrix, i: str, j: str, s: Iterable[str] = ()) -> float:
    """
    Two-sided Fisher-Z p-value for X_i _||_ X_j | X_S.

    Raises:
        TooFewSamples, ConstantColumn, LabelMismatch
    """
    s = list(s)
    if samples.n <= len(s) + 3:
        raise TooFewSamples(f"Fisher-Z needs more than {len(s) + 3} rows (got {samples.n})")
    idx = samples.index([i, j] + s)
    data = samples.values[:, idx]
    for label, column in zip([i, j] + s, data.T):
        if np.all(column == column[0]):
            raise ConstantColumn(f"Column {label} is constant")
    corr = np.corrcoef(data, rowvar=False)
    inverse = np.linalg.pinv(corr)
    r = -inverse[0, 1] / np.sqrt(inverse[0, 0] * inverse[1, 1])
    r = float(np.clip(r, -1 + 1e-15, 1 - 1e-15))
    statistic = np.arctanh(r) * np.sqrt(samples.n - len(s) - 3)
    return float(min(1.0, 2 * stats.norm.sf(abs(statistic))))


def ks_uniformity(pvalues: Iterable[float]) -> float:
    """Kolmogorov-Smirnov p-value of the p-values against Uniform(0, 1)."""
    return float(stats.kstest(np.asarray(list(pvalues), dtype=float), "uniform").pvalue)


@dataclass
class MarkovRow:
    """One pairwise hypothesis i _||_ j | ant(i, j)."""
    i: str
    j: str
    conditioning: List[str]
    implied: bool
    p_value: Optional[float] = None
    verdict: Optional[bool] = None

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "conditioning": self.conditioning,
            "implied": self.implied,
            "p_value": self.p_value,
            "verdict": self.verdict,
        }


def markov_report(g: MixedGraph, data: Union[SampleMatrix, JointLaw],
                  tol: float = CI_TOL) -> List[MarkovRow]:
    """
    Pairwise Markov table of a graph against data or a closed-form law.

    One row per unordered pair of non-constant nodes, conditioning on
    ant({i, j}) minus constants; ``implied`` says the graph separates the
    pair. A JointLaw gives exact verdicts, samples give Fisher-Z p-values.

    Raises:
        LabelMismatch
    """
    missing = set(g.labels) - set(data.labels)
    if missing:
        raise LabelMismatch(f"Graph nodes without data: {sort_labels(missing)}")
    constant = {label for label in g.labels if data.is_constant(label)}
    rows = []
    for i, j in combinations(sort_labels(set(g.labels) - constant), 2):
        ant = pairwise_separation_set(g, i, j)
        conditioning = sort_labels(ant - constant)
        row = MarkovRow(i, j, conditioning, separated(g, {i}, {j}, ant))
        if isinstance(data, JointLaw):
            row.verdict = data.ci(i, j, conditioning, tol=tol)
        else:
            row.p_value = fisher_z(data, i, j, conditioning)
        rows.append(row)
    return rows
