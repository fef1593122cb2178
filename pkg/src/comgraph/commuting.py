"""Commuting graph of a multiplication table.

Vertices are the non-central elements in ascending index order; two distinct
vertices are adjacent exactly when their products agree both ways round.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import SimpleGraph
from .tables import NotASemigroup, SEMIGROUP, is_at_least


@dataclass(frozen=True)
class CommutingGraph:
    graph: SimpleGraph
    vertex_to_element: tuple
    centre: frozenset


def commuting_graph(table):
    """Commuting graph of an associative table; raises NotASemigroup otherwise."""
    if not is_at_least(table, SEMIGROUP):
        raise NotASemigroup("commuting graph requires an associative table")
    m = table.entries
    comm = m == m.T
    central = comm.all(axis=1)
    vertices = [int(v) for v in np.nonzero(~central)[0]]
    index = {e: i for i, e in enumerate(vertices)}
    edges = []
    for i, e in enumerate(vertices):
        for f in np.nonzero(comm[e])[0]:
            f = int(f)
            if f in index and index[f] > i:
                edges.append((i, index[f]))
    tags = tuple(table.label(e) for e in vertices)
    graph = SimpleGraph(len(vertices), edges, tags=tags)
    centre = frozenset(int(v) for v in np.nonzero(central)[0])
    return CommutingGraph(graph=graph, vertex_to_element=tuple(vertices), centre=centre)
