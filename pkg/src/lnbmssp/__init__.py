"""Shortest-path toolkit and benchmark harness for Lightning Network topologies."""

from .bmssp import BmsspParams, bmssp_sssp
from .dijkstra import DistResult, dijkstra
from .graph import EdgeListEntry, Graph, build_graph, out_edges

__version__ = "0.1.0"
