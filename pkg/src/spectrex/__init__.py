"""Spectral extremal toolkit for triangle-free non-bipartite graphs."""

from .graph import Graph, GraphError
from .graph6 import from_graph6, to_graph6

__version__ = "0.1.0"

__all__ = ["Graph", "GraphError", "from_graph6", "to_graph6", "__version__"]
