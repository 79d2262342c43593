#!/usr/bin/env python3
"""
DOT export provider for Johnson graphs
"""

import logging
from typing import Tuple

import networkx as nx

logger = logging.getLogger(__name__)


def _node_name(subset: Tuple[int, ...]) -> str:
    return "B" + "_".join(str(i) for i in subset)


class Provider:
    """Johnson graph through networkx.nx_pydot"""

    def render(self, graph: nx.Graph, **options) -> str:
        mapping = {node: _node_name(node) for node in graph.nodes}
        renamed = nx.relabel_nodes(graph, mapping, copy=True)
        dot = nx.nx_pydot.to_pydot(renamed)
        return dot.to_string()
