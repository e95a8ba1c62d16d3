#!/usr/bin/env python3
"""
Constrained Adjustment Set Selection
====================================
Finds a minimal S with L <= S <= U separating a treatment node from an
(intervened) outcome node, or reports that no such S exists.

The graph is first conditioned on L and every node outside U u {c, o}
is marginalised; c and o adjacent in the maximal version of that graph
means no feasible set. Otherwise nodes of S minus L are marginalised one
at a time, in label order, as long as c and o stay non-adjacent.

Usage:
    from anterial.adjust import AdjustmentProblem, select_adjustment

    problem = AdjustmentProblem.of(g, "2", "5^do(2)", lower={"1"}, upper={"1", "4", "6"})
    result = select_adjustment(problem)
    result.feasible, result.adjustment
"""

import logging
from dataclasses import dataclass, field
from itertools import chain, combinations
from typing import FrozenSet, Iterable, List, Optional, Tuple, Union

from .causal import is_counterfactual
from .graph import AnterialError, MixedGraph, maximize as maximize_graph, sort_labels
from .separation import separated
from .transforms import alpha_c, alpha_m

logger = logging.getLogger(__name__)

MINIMALITY_MAX_FREE = 20


class AdjustmentError(AnterialError):
    """Base exception for adjustment problems."""
    pass


class InvalidProblem(AdjustmentError):
    """Raised when nodes are unknown or the bounds L, U are inconsistent."""
    pass


class SetValuedTreatment(AdjustmentError):
    """Raised when treatment or outcome is not a single node."""
    pass


class TooLargeForExactCheck(AdjustmentError):
    """Raised when the minimality search exceeds its free-node guard."""
    pass


def _single(value: Union[str, Iterable[str]], role: str) -> str:
    if isinstance(value, str):
        return value
    values = list(value)
    if len(values) != 1:
        raise SetValuedTreatment(
            f"The {role} must be a single node (got {values}); "
            "non-adjacency is not enough for sets")
    return str(values[0])


@dataclass(frozen=True)
class AdjustmentProblem:
    graph: MixedGraph
    treatment: str
    outcome: str
    lower: FrozenSet[str] = frozenset()
    upper: FrozenSet[str] = frozenset()

    @classmethod
    def of(cls, graph: MixedGraph, treatment, outcome, lower: Iterable[str] = (),
           upper: Iterable[str] = (), observational_only: bool = False) -> "AdjustmentProblem":
        """
        Build and validate a problem.

        observational_only drops intervened-world labels from U.

        Raises:
            InvalidProblem, SetValuedTreatment
        """
        upper = frozenset(upper)
        if observational_only:
            upper = frozenset(u for u in upper if not is_counterfactual(u))
        problem = cls(graph, _single(treatment, "treatment"), _single(outcome, "outcome"),
                      frozenset(lower), upper)
        problem.validate()
        return problem

    def validate(self) -> None:
        missing = ({self.treatment, self.outcome} | self.lower | self.upper) - self.graph.nodes
        if missing:
            raise InvalidProblem(f"Unknown nodes: {sort_labels(missing)}")
        if self.treatment == self.outcome:
            raise InvalidProblem("Treatment and outcome must differ")
        if not self.lower <= self.upper:
            raise InvalidProblem(f"L is not within U: {sort_labels(self.lower - self.upper)}")
        if {self.treatment, self.outcome} & self.upper:
            raise InvalidProblem("Treatment and outcome cannot be adjusted for")

    def separates(self, s: Iterable[str]) -> bool:
        return separated(self.graph, {self.treatment}, {self.outcome}, s)


@dataclass
class AdjustmentResult:
    feasible: bool
    adjustment: Optional[FrozenSet[str]] = None
    trace: List[Tuple[str, str]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "outcome": "feasible" if self.feasible else "infeasible",
            "S": sort_labels(self.adjustment) if self.adjustment is not None else None,
            "trace": [{"removed": node, "graph": summary} for node, summary in self.trace],
        }


def _summary(g: MixedGraph) -> str:
    return f"{len(g)} nodes, {len(g.edges)} edges"


def select_adjustment(problem: AdjustmentProblem, maximize: bool = True) -> AdjustmentResult:
    """
    Minimal constrained adjustment set, or infeasible.

    maximize=False skips the maximal completion of the projected graphs,
    which can report a set although c and o are inseparable.
    """
    c, o = problem.treatment, problem.outcome
    lower = problem.lower
    keep = problem.upper | {c, o}
    g = alpha_c(problem.graph, lower) if lower else problem.graph
    g = alpha_m(g, g.nodes - keep)

    def joined(h: MixedGraph) -> bool:
        return (maximize_graph(h) if maximize else h).adjacent(c, o)

    if joined(g):
        logger.debug("adjust: %s and %s adjacent after projection", c, o)
        return AdjustmentResult(False, None, [])

    s = set(problem.upper)
    trace: List[Tuple[str, str]] = []
    removed = True
    while removed:
        removed = False
        for i in sort_labels(s - lower):
            candidate = alpha_m(g, {i})
            if not joined(candidate):
                logger.debug("adjust: dropping %s", i)
                g = candidate
                s.discard(i)
                trace.append((i, _summary(g)))
                removed = True
                break
    return AdjustmentResult(True, frozenset(s), trace)


def _subsets(items: List[str]):
    return chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))


@dataclass
class AdjustmentReport:
    within_bounds: bool
    separates: bool
    minimal: bool
    smaller: Optional[FrozenSet[str]] = None

    @property
    def ok(self) -> bool:
        return self.within_bounds and self.separates and self.minimal

    def to_dict(self) -> dict:
        return {
            "within_bounds": self.within_bounds,
            "separates": self.separates,
            "minimal": self.minimal,
            "smaller": sort_labels(self.smaller) if self.smaller is not None else None,
        }


def verify_adjustment(problem: AdjustmentProblem, s: Iterable[str],
                      max_free: int = MINIMALITY_MAX_FREE) -> AdjustmentReport:
    """
    Check L <= S <= U, separation, and that no proper subset of S
    containing L also separates.

    Raises:
        TooLargeForExactCheck: more than max_free nodes in S minus L
    """
    s = frozenset(s)
    problem.graph.check_nodes(s)
    free = sort_labels(s - problem.lower)
    if len(free) > max_free:
        raise TooLargeForExactCheck(f"Minimality check is limited to {max_free} free nodes (got {len(free)})")
    smaller = None
    for subset in _subsets(free):
        if len(subset) == len(free):
            break
        candidate = frozenset(subset) | (s & problem.lower)
        if problem.separates(candidate):
            smaller = candidate
            break
    return AdjustmentReport(
        within_bounds=problem.lower <= s <= problem.upper,
        separates=problem.separates(s),
        minimal=smaller is None,
        smaller=smaller,
    )


def brute_force_adjustment(problem: AdjustmentProblem) -> Optional[FrozenSet[str]]:
    """Smallest separating S with L <= S <= U by exhaustive search, or None."""
    for subset in _subsets(sort_labels(problem.upper - problem.lower)):
        candidate = problem.lower | frozenset(subset)
        if problem.separates(candidate):
            return candidate
    return None
