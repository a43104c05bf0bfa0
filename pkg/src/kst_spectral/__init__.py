"""Signless Laplacian spectral radius of K_{s,t}-minor-free graphs."""

from __future__ import annotations

import json
from importlib import resources

from .closed_form import q_F_closed
from .graph import Graph, build_extremal_F, parse_graph6, write_graph6
from .minor import MinorPattern, find_minor, has_minor, is_minor_free
from .spectral import certify_upper_bound, merris_bound, q_radius

__version__ = "0.1.0"


def report_schema() -> dict:
    """The JSON schema that every ``kst`` JSON report validates against."""
    text = resources.files(__package__).joinpath("schemas/report.schema.json").read_text()
    return json.loads(text)


__all__ = [
    "Graph",
    "MinorPattern",
    "build_extremal_F",
    "certify_upper_bound",
    "find_minor",
    "has_minor",
    "is_minor_free",
    "merris_bound",
    "parse_graph6",
    "q_F_closed",
    "q_radius",
    "report_schema",
    "write_graph6",
]
