"""Kirchhoff transpedances of signed graphs and oriented hypergraphs."""

import json

from ._core import CapabilityError, Graph, InvalidInput, matrix, run_cli, transpedance, tree_number
from ._core import label_json as _label_json
from ._core import verify_json as _verify_json

__all__ = [
    "CapabilityError",
    "Graph",
    "InvalidInput",
    "label_edges",
    "load",
    "matrix",
    "run_cli",
    "transpedance",
    "tree_number",
    "verify",
]


def load(source):
    """Read a graph from a path, a JSON string or an already decoded dict."""
    if isinstance(source, dict):
        return Graph.from_json(json.dumps(source))
    text = str(source)
    if text.lstrip().startswith("{"):
        return Graph.from_json(text)
    return Graph.from_file(text)


def label_edges(graph, source, sink, sign="det", method="contributor"):
    return json.loads(_label_json(graph, source, sink, sign, method))


def verify(graph, source, sink, method="contributor"):
    return json.loads(_verify_json(graph, source, sink, method))
