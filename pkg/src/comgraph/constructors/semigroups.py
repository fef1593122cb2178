"""Semigroups built to order: the two-extra-element realizer that turns any
admissible graph into a commuting graph, the centrefree cycle semigroups, and
a couple of stock tables."""

from __future__ import annotations

import numpy as np

from ..commuting import commuting_graph
from ..tables import CayleyTable, TableError, centre, check_associativity


class Obstructed(TableError):
    """The target graph cannot be the commuting graph of any semigroup."""

    def __init__(self, reason, witness=None):
        self.reason = reason
        self.witness = witness
        super().__init__(f"{reason}" + (f" (witness {witness})" if witness is not None else ""))


class NotDivisibleByFour(TableError):
    pass


class UnknownFixture(TableError):
    pass


def _verify_realizer(table, graph, expected_centre):
    if check_associativity(table) is not None:
        raise TableError("realizer construction produced a non-associative table")
    if centre(table) != frozenset(expected_centre):
        raise TableError("realizer construction produced the wrong centre")
    cg = commuting_graph(table)
    if cg.vertex_to_element != tuple(range(graph.order)) or cg.graph.adj != graph.adj:
        raise TableError("realizer construction does not reproduce the target graph")
    return table


def realize_semigroup(graph):
    """Semigroup of order |V| + 2 whose commuting graph is exactly the input.

    Elements 0..|V|-1 are the vertices; the last two elements are an absorbing
    zero and a second central element z.  Vertex products land in {0, z}:
    0 when i < j or {i, j} is an edge, z when i > j and {i, j} is a non-edge
    (squares go to 0); all products with 0 or z are 0.

    Raises Obstructed for a single vertex or a vertex adjacent to all others;
    no other graph is obstructed.
    """
    n = graph.order
    if n == 1:
        raise Obstructed("single_vertex", witness=0)
    for v in range(n):
        if n > 1 and len(graph.adj[v]) == n - 1:
            raise Obstructed("dominating_vertex", witness=v)
    zero, z = n, n + 1
    m = np.full((n + 2, n + 2), zero, dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if i > j and j not in graph.adj[i]:
                m[i, j] = z
    labels = tuple(f"v{i}" for i in range(n)) + ("0", "z")
    table = CayleyTable(m, labels=labels)
    return _verify_realizer(table, graph, {zero, z})


def realize_cycle_centrefree(length):
    """The centrefree semigroup on a cycle of length divisible by four.

    Even-indexed vertices are left zeros; an odd vertex times an even one steps
    to the even neighbour on the matching side (indices mod the length), and
    odd times odd keeps the left factor.  Unique for its graph up to passing
    to the opposite table.
    """
    if length < 3:
        raise NotDivisibleByFour(f"a cycle needs length >= 3, got {length}")
    if length % 4:
        raise NotDivisibleByFour(f"cycle length {length} is not divisible by four")
    m = np.zeros((length, length), dtype=np.int64)
    for x in range(0, length, 2):
        m[x, :] = x
    for x in range(1, length, 2):
        for y in range(length):
            if y % 2:
                m[x, y] = x
            elif (y - (x - 1)) % 4 == 0:
                m[x, y] = x - 1
            else:
                m[x, y] = (x + 1) % length
    table = CayleyTable(m, labels=tuple(f"x{i}" for i in range(length)))

    from ..graphs import cycle

    return _verify_realizer(table, cycle(length), set())


# Six-element centrefree semigroup whose commuting graph contains an induced
# 5-cycle 1~2~5~3~4~1; element 0 puts three of its edges inside triangles.
_CENTREFREE6 = (
    (0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 1, 1),
    (0, 0, 0, 0, 2, 2),
    (3, 3, 3, 3, 3, 3),
    (0, 1, 1, 3, 4, 4),
    (0, 2, 2, 3, 5, 5),
)


def left_zero(n):
    """Left-zero semigroup: xy = x; its commuting graph is edgeless."""
    if n < 1:
        raise UnknownFixture("left_zero needs n >= 1")
    rows = [[i] * n for i in range(n)]
    return CayleyTable(rows, labels=tuple(f"v{i}" for i in range(n)))


def fixture_table(name):
    """Stock tables by name: 'centrefree6' or 'left_zero:<n>'."""
    if name == "centrefree6":
        return CayleyTable(_CENTREFREE6, labels=("s1", "s2", "s3", "s4", "s5", "s6"))
    if name.startswith("left_zero:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            raise UnknownFixture(f"bad size in {name!r}") from None
        return left_zero(n)
    raise UnknownFixture(f"unknown fixture {name!r}")
