"""Exact rigidity analysis for graph nilmanifolds and tori.

The heavy lifting lives in the compiled extension ``nilrigid._core``; this
package re-exports it and adds small conveniences that parse the JSON report
strings into dictionaries.
"""

from __future__ import annotations

import json
from typing import Any

from ._core import (
    NilrigidError,
    __version__,
    analyze_example,
    analyze_nilmanifold,
    analyze_torus,
    bracket,
    coherent_components,
    dynamics_report,
    gallery_description,
    gallery_names,
    inverse,
    lattice_contains,
    lyapunov_gap,
    multiply,
    reduce_mod_lattice,
    render_graph,
)

__all__ = [
    "NilrigidError",
    "__version__",
    "analyze_example",
    "analyze_nilmanifold",
    "analyze_torus",
    "bracket",
    "coherent_components",
    "dynamics_report",
    "example_report",
    "gallery_description",
    "gallery_names",
    "inverse",
    "lattice_contains",
    "lyapunov_gap",
    "multiply",
    "nilmanifold_report",
    "reduce_mod_lattice",
    "render_graph",
    "torus_report",
]


def nilmanifold_report(graph_text: str, generators_json: str, **kwargs: Any) -> dict[str, Any]:
    """Like :func:`analyze_nilmanifold`, but returns the report as a dict."""
    return json.loads(analyze_nilmanifold(graph_text, generators_json, **kwargs))


def torus_report(generators_json: str, **kwargs: Any) -> dict[str, Any]:
    """Like :func:`analyze_torus`, but returns the report as a dict."""
    return json.loads(analyze_torus(generators_json, **kwargs))


def example_report(name: str, **kwargs: Any) -> dict[str, Any]:
    """Like :func:`analyze_example`, but returns the report as a dict."""
    return json.loads(analyze_example(name, **kwargs))
