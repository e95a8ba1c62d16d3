#!/usr/bin/env python3
"""
Anterial Utils - Shared helpers for the command line
====================================================
Node-list parsing, JSON emission, and display formatting.
"""

import json
import re
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

from rich.console import Console
from rich.table import Table

from anterial.graph import sort_labels

# ============================================================================
# PARSING HELPERS
# ============================================================================

_LIST_COMMA = re.compile(r",(?![^()]*\))")


def parse_nodes(text: Optional[str]) -> List[str]:
    """Parse a node list: '1, 4,5^do(2,3)' -> ['1', '4', '5^do(2,3)']"""
    if not text:
        return []
    return [item.strip() for item in _LIST_COMMA.split(text) if item.strip()]


def parse_values(text: Optional[str]) -> Dict[str, float]:
    """Parse intervention values: '2=1.5,3=0' -> {'2': 1.5, '3': 0.0}"""
    values = {}
    for item in parse_nodes(text):
        if "=" not in item:
            raise ValueError(f"Expected node=value, got {item!r}")
        node, value = item.split("=", 1)
        values[node.strip()] = float(value)
    return values


# ============================================================================
# OUTPUT HELPERS
# ============================================================================

def dump_json(data: Any, indent: int = 2) -> str:
    """JSON text; floats keep their shortest round-trip repr"""
    return json.dumps(data, indent=indent)


def emit(text: str, out: Optional[str] = None) -> None:
    """Print the payload to stdout and optionally write it to a file"""
    print(text, end="" if text.endswith("\n") else "\n")
    if out:
        write_text(out, text)


def write_text(path: str, text: str) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text)


# ============================================================================
# FORMATTING HELPERS
# ============================================================================

def fmt_set(nodes: Iterable[str]) -> str:
    """Format a node set: {'3', '1'} -> {1,3}"""
    return "{" + ",".join(sort_labels(nodes)) + "}"


def fmt_pvalue(p: Optional[float]) -> str:
    """Format a p-value: 3.95e-08 -> 3.9e-08, 0.52 -> 0.520"""
    if p is None:
        return "-"
    if p < 1e-3:
        return f"{p:.1e}"
    return f"{p:.3f}"


def markov_table(rows: List[Dict[str, Any]], alpha: float) -> Table:
    """Rich table of a Markov report; mismatching rows in red"""
    table = Table(title="pairwise Markov report")
    for column in ("i", "j", "ant(i,j)", "implied", "p / verdict"):
        table.add_column(column)
    for row in rows:
        if row["p_value"] is not None:
            result = fmt_pvalue(row["p_value"])
            agrees = (row["p_value"] > alpha) == row["implied"]
        else:
            result = str(row["verdict"])
            agrees = not row["implied"] or row["verdict"]
        style = None if agrees else "red"
        table.add_row(row["i"], row["j"], fmt_set(row["conditioning"]),
                      "yes" if row["implied"] else "no", result, style=style)
    return table


def print_table(table: Table) -> None:
    Console(stderr=True).print(table)
