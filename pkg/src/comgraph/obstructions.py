"""Realizability gates: sound necessary-condition filters for semigroup,
centrefree-semigroup, and group targets, each violation carrying a witness.

A passing verdict never proves realizability on its own; the semigroup gate is
the one complete case (anything passing it is realized by the two-extra-element
construction)."""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import components_and_diameters, find_forbidden_cycle, structural_features

SINGLE_VERTEX = "single_vertex"
DOMINATING_VERTEX = "dominating_vertex"
TOO_SMALL_FOR_GROUP = "too_small_for_group"
EDGE_WITHOUT_TRIANGLE = "edge_without_triangle"
BRIDGE_NOT_ISOLATED = "bridge_not_isolated"
LEAF_NOT_ISOLATED_EDGE = "leaf_not_isolated_edge"
FORBIDDEN_ODD_CYCLE = "forbidden_odd_cycle"
ISOLATED_VERTEX_SHAPE = "isolated_vertex_shape"
ISOLATED_EDGE_SHAPE = "isolated_edge_shape"


@dataclass(frozen=True)
class Obstruction:
    kind: str
    witness: tuple

    def describe(self):
        return f"{self.kind}{self.witness}"


@dataclass(frozen=True)
class Verdict:
    target: str
    violations: tuple

    @property
    def passed(self):
        return not self.violations

    def describe(self):
        state = "passed" if self.passed else "failed"
        lines = [f"{self.target} gate: {state}"]
        lines.extend(f"  - {ob.describe()}" for ob in self.violations)
        return "\n".join(lines)


def _semigroup_violations(graph):
    out = []
    n = graph.order
    if n == 1:
        out.append(Obstruction(SINGLE_VERTEX, (0,)))
    elif n > 1:
        for v in range(n):
            if len(graph.adj[v]) == n - 1:
                out.append(Obstruction(DOMINATING_VERTEX, (v,)))
    return out


def semigroup_gate(graph):
    """Complete for semigroups: passing graphs are realizable at order |V| + 2."""
    return Verdict("semigroup", tuple(_semigroup_violations(graph)))


def centrefree_gate(graph):
    """Semigroup obstructions plus the even-cycle condition: an induced odd
    cycle of length >= 5 with no edge in a triangle rules a centrefree
    semigroup out."""
    out = _semigroup_violations(graph)
    witness = find_forbidden_cycle(graph)
    if witness is not None:
        out.append(Obstruction(FORBIDDEN_ODD_CYCLE, tuple(witness)))
    return Verdict("centrefree", tuple(out))


def group_gate(graph):
    """Necessary conditions for the commuting graph of a group.

    In order: at most four vertices (the empty graph is exempt: abelian groups
    realize it); every non-isolated edge must lie in a triangle; bridges and
    leaf edges must be isolated edges; with an isolated vertex the graph must
    be (|V|+1)/2 isolated vertices plus one clique and |V| = 1 mod 4; with an
    isolated edge every component but at most one must be an isolated edge or
    clique, the exception having diameter at most five.  Semigroup
    obstructions are included since groups are semigroups.
    """
    out = _semigroup_violations(graph)
    n = graph.order
    if 1 <= n <= 4:
        out.append(Obstruction(TOO_SMALL_FOR_GROUP, (n,)))
    feats = structural_features(graph)
    iso_edge_set = set(feats.isolated_edges)
    for u, v in feats.edges_not_in_any_triangle:
        if (u, v) not in iso_edge_set:
            out.append(Obstruction(EDGE_WITHOUT_TRIANGLE, (u, v)))
    for u, v in feats.bridges:
        if (u, v) not in iso_edge_set:
            out.append(Obstruction(BRIDGE_NOT_ISOLATED, (u, v)))
    for leaf in feats.leaves:
        (nbr,) = graph.adj[leaf]
        if (min(leaf, nbr), max(leaf, nbr)) not in iso_edge_set:
            out.append(Obstruction(LEAF_NOT_ISOLATED_EDGE, (leaf,)))
    summaries = components_and_diameters(graph)
    if feats.isolated_vertices:
        k = len(feats.isolated_vertices)
        rest = [s for s in summaries if s.size > 1]
        shape_ok = (
            n % 4 == 1
            and k == (n + 1) // 2
            and len(rest) <= 1
            and all(s.is_clique for s in rest)
        )
        if not shape_ok:
            out.append(Obstruction(ISOLATED_VERTEX_SHAPE, (n, k)))
    if iso_edge_set:
        noncomplete = [s for s in summaries if not s.is_clique]
        if len(noncomplete) > 1 or any(s.diameter > 5 for s in noncomplete):
            out.append(
                Obstruction(
                    ISOLATED_EDGE_SHAPE,
                    tuple((s.size, s.diameter) for s in noncomplete),
                )
            )
    return Verdict("group", tuple(out))


GATES = {
    "semigroup": semigroup_gate,
    "centrefree": centrefree_gate,
    "group": group_gate,
}
