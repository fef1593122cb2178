"""Simple undirected graphs: builders, component decomposition, structural
features, and small-graph isomorphism."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass


class GraphError(Exception):
    pass


class BadGraphSpec(GraphError):
    pass


class MalformedGraph(GraphError):
    pass


class SimpleGraph:
    """Loop-free undirected graph on vertices 0..n-1 with frozen adjacency sets."""

    def __init__(self, n, edges=(), tags=None):
        if n < 0:
            raise MalformedGraph("negative order")
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise MalformedGraph(f"edge ({u},{v}) out of range")
            if u == v:
                raise MalformedGraph(f"loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.order = n
        self.adj = tuple(frozenset(s) for s in adj)
        self.vertex_tags = tuple(tags) if tags is not None else None
        if self.vertex_tags is not None and len(self.vertex_tags) != n:
            raise MalformedGraph("one tag per vertex required")

    def edges(self):
        return [(u, v) for u in range(self.order) for v in sorted(self.adj[u]) if u < v]

    def edge_count(self):
        return sum(len(s) for s in self.adj) // 2

    def degree(self, v):
        return len(self.adj[v])

    def has_edge(self, u, v):
        return v in self.adj[u]

    def __eq__(self, other):
        return isinstance(other, SimpleGraph) and self.order == other.order and self.adj == other.adj

    def __repr__(self):
        return f"SimpleGraph(n={self.order}, m={self.edge_count()})"


def complete(n):
    if n < 1:
        raise BadGraphSpec("complete graph needs n >= 1")
    return SimpleGraph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def edgeless(n):
    if n < 1:
        raise BadGraphSpec("edgeless graph needs n >= 1")
    return SimpleGraph(n)


def cycle(n):
    if n < 3:
        raise BadGraphSpec("cycle needs n >= 3")
    return SimpleGraph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    if n < 1:
        raise BadGraphSpec("path needs n >= 1")
    return SimpleGraph(n, [(i, i + 1) for i in range(n - 1)])


# Five vertices: square 0-1-4-3 with roof apex 2 joined to 0 and 1; matches
# the adjacency matrix rows (01110, 10101, 11000, 10001, 01010).
_HOUSE_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (3, 4)]


def house():
    return SimpleGraph(5, _HOUSE_EDGES)


def petersen():
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, 5 + i) for i in range(5)]
    return SimpleGraph(10, edges)


def disjoint_union(graphs):
    total = sum(g.order for g in graphs)
    edges = []
    off = 0
    for g in graphs:
        edges.extend((u + off, v + off) for u, v in g.edges())
        off += g.order
    return SimpleGraph(total, edges)


def lexicographic(g1, g2):
    """Lexicographic product: (x1,y1) ~ (x2,y2) iff x1 ~ x2, or x1 = x2 and y1 ~ y2."""
    n2 = g2.order
    edges = []
    for x1, x2 in g1.edges():
        for y1 in range(n2):
            for y2 in range(n2):
                edges.append((x1 * n2 + y1, x2 * n2 + y2))
    for x in range(g1.order):
        for y1, y2 in g2.edges():
            edges.append((x * n2 + y1, x * n2 + y2))
    return SimpleGraph(g1.order * n2, edges)


def relabel(graph, perm):
    if sorted(perm) != list(range(graph.order)):
        raise MalformedGraph("not a permutation")
    return SimpleGraph(graph.order, [(perm[u], perm[v]) for u, v in graph.edges()])


def induced_subgraph(graph, vertices):
    """Subgraph on the given vertices, renumbered 0..k-1 in sorted order."""
    vs = sorted(vertices)
    index = {v: i for i, v in enumerate(vs)}
    edges = [(index[u], index[v]) for u, v in graph.edges() if u in index and v in index]
    return SimpleGraph(len(vs), edges)


def build_graph(spec):
    """Build a graph from a spec string.

    Grammar: complete:N | cycle:N | edgeless:N | path:N | house | petersen |
    file:PATH | lex(SPEC,SPEC) | union(TERM,...) with TERM = SPEC or K*SPEC.
    """
    spec = spec.strip()
    if spec.startswith("lex(") and spec.endswith(")"):
        parts = _split_args(spec[4:-1])
        if len(parts) != 2:
            raise BadGraphSpec("lex takes two arguments")
        return lexicographic(build_graph(parts[0]), build_graph(parts[1]))
    if spec.startswith("union(") and spec.endswith(")"):
        parts = _split_args(spec[6:-1])
        pieces = []
        for part in parts:
            mult = 1
            if "*" in part:
                head, part = part.split("*", 1)
                mult = int(head)
            if mult < 1:
                raise BadGraphSpec("multiplicity must be >= 1")
            g = build_graph(part)
            pieces.extend([g] * mult)
        if not pieces:
            raise BadGraphSpec("union of nothing")
        return disjoint_union(pieces)
    if spec == "house":
        return house()
    if spec == "petersen":
        return petersen()
    if ":" in spec:
        kind, arg = spec.split(":", 1)
        if kind == "file":
            return read_graph(arg)
        makers = {"complete": complete, "cycle": cycle, "edgeless": edgeless, "path": path}
        if kind in makers:
            try:
                n = int(arg)
            except ValueError:
                raise BadGraphSpec(f"bad size {arg!r}") from None
            return makers[kind](n)
    raise BadGraphSpec(f"unknown graph spec {spec!r}")


def _split_args(text):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if cur:
        parts.append("".join(cur).strip())
    return parts


def components(graph):
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    seen = [False] * graph.order
    out = []
    for start in range(graph.order):
        if seen[start]:
            continue
        comp = []
        queue = deque([start])
        seen[start] = True
        while queue:
            u = queue.popleft()
            comp.append(u)
            for v in graph.adj[u]:
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)
        out.append(sorted(comp))
    return out


def _bfs_eccentricity(graph, source, members):
    dist = {source: 0}
    queue = deque([source])
    ecc = 0
    while queue:
        u = queue.popleft()
        for v in graph.adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                ecc = max(ecc, dist[v])
                queue.append(v)
    if len(dist) != len(members):
        raise GraphError("BFS escaped the component")
    return ecc


@dataclass(frozen=True)
class ComponentSummary:
    vertices: tuple
    size: int
    is_clique: bool
    diameter: int


def components_and_diameters(graph):
    """One summary per connected component; diameter by BFS from every vertex."""
    out = []
    for comp in components(graph):
        k = len(comp)
        if k == 1:
            out.append(ComponentSummary(tuple(comp), 1, True, 0))
            continue
        internal = sum(len(graph.adj[v] & frozenset(comp)) for v in comp) // 2
        if internal == k * (k - 1) // 2:
            out.append(ComponentSummary(tuple(comp), k, True, 1))
            continue
        diam = max(_bfs_eccentricity(graph, v, comp) for v in comp)
        out.append(ComponentSummary(tuple(comp), k, False, diam))
    return out


@dataclass(frozen=True)
class Decomposition:
    """Connected components classified as cliques-with-multiplicity plus the rest.

    rendering uses terms '<mult>K<size>' for cliques and 'Comp(n=<size>,diam=<d>)'
    otherwise, cliques first, sizes ascending, joined by '+'.
    """

    clique_multiset: tuple
    other_components: tuple
    rendering: str


def decompose(graph):
    summaries = components_and_diameters(graph)
    cliques = Counter(s.size for s in summaries if s.is_clique)
    others = tuple(sorted((s for s in summaries if not s.is_clique), key=lambda s: (s.size, s.diameter)))
    terms = [f"{mult}K{size}" for size, mult in sorted(cliques.items())]
    terms += [f"Comp(n={s.size},diam={s.diameter})" for s in others]
    rendering = "+".join(terms) if terms else "empty"
    return Decomposition(tuple(sorted(cliques.items())), others, rendering)


def bridges(graph):
    """Bridge edges by iterative lowpoint DFS."""
    n = graph.order
    disc = [-1] * n
    low = [0] * n
    out = []
    timer = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        stack = [(root, -1, iter(sorted(graph.adj[root])))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for v in it:
                if disc[v] < 0:
                    disc[v] = low[v] = timer
                    timer += 1
                    stack.append((v, u, iter(sorted(graph.adj[v]))))
                    advanced = True
                    break
                elif v != parent:
                    low[u] = min(low[u], disc[v])
            if not advanced:
                stack.pop()
                if parent >= 0:
                    low[parent] = min(low[parent], low[u])
                    if low[u] > disc[parent]:
                        out.append((min(u, parent), max(u, parent)))
    return sorted(out)


@dataclass(frozen=True)
class StructuralFeatures:
    isolated_vertices: tuple
    isolated_edges: tuple
    leaves: tuple
    bridges: tuple
    dominating_vertices: tuple
    edges_not_in_any_triangle: tuple


def structural_features(graph):
    n = graph.order
    isolated_vertices = tuple(v for v in range(n) if not graph.adj[v])
    iso_edges = []
    for comp in components(graph):
        if len(comp) == 2:
            iso_edges.append((comp[0], comp[1]))
    leaves = tuple(v for v in range(n) if len(graph.adj[v]) == 1)
    dominating = tuple(v for v in range(n) if len(graph.adj[v]) == n - 1 and n > 1)
    no_triangle = tuple((u, v) for u, v in graph.edges() if not (graph.adj[u] & graph.adj[v]))
    return StructuralFeatures(
        isolated_vertices=isolated_vertices,
        isolated_edges=tuple(sorted(iso_edges)),
        leaves=leaves,
        bridges=tuple(bridges(graph)),
        dominating_vertices=dominating,
        edges_not_in_any_triangle=no_triangle,
    )


def find_forbidden_cycle(graph):
    """An induced cycle of odd length >= 5 none of whose edges lies in a
    triangle of the graph, or None.

    Only edges outside every triangle can appear in such a cycle, so the DFS
    walks those edges alone, keeping the path induced.
    """
    free = [set() for _ in range(graph.order)]
    for u, v in graph.edges():
        if not (graph.adj[u] & graph.adj[v]):
            free[u].add(v)
            free[v].add(u)

    adj = graph.adj
    for start in range(graph.order):
        if not free[start]:
            continue
        # paths only through vertices > start, so each cycle is tried from its minimum
        stack = [(start, [start], {start})]
        while stack:
            u, trail, onpath = stack.pop()
            for v in sorted(free[u], reverse=True):
                if v <= start or v in onpath:
                    continue
                # induced: among path vertices v may touch only its predecessor,
                # plus start when that closes the cycle
                touched = adj[v] & onpath
                if len(trail) == 1 or touched == {u}:
                    stack.append((v, trail + [v], onpath | {v}))
                elif touched == {u, start}:
                    length = len(trail) + 1
                    if length >= 5 and length % 2 == 1 and v in free[start]:
                        return tuple(trail + [v])
    return None


def _refine_colors(graph, colors):
    while True:
        sig = {}
        new = [0] * graph.order
        for v in range(graph.order):
            key = (colors[v], tuple(sorted(colors[u] for u in graph.adj[v])))
            new[v] = sig.setdefault(key, len(sig))
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _refine_pair(g1, c1, g2, c2):
    """Refine two colourings together so equal colours mean equal signatures
    across the two graphs."""
    while True:
        k1 = [(c1[v], tuple(sorted(c1[u] for u in g1.adj[v]))) for v in range(g1.order)]
        k2 = [(c2[v], tuple(sorted(c2[u] for u in g2.adj[v]))) for v in range(g2.order)]
        order = {k: i for i, k in enumerate(sorted(set(k1) | set(k2)))}
        n1 = [order[k] for k in k1]
        n2 = [order[k] for k in k2]
        if len(set(n1) | set(n2)) == len(set(c1) | set(c2)):
            return n1, n2
        c1, c2 = n1, n2


def graphs_isomorphic(g1, g2):
    """Adjacency-preserving vertex bijection as a tuple, or None.

    Colour refinement first, then backtracking over the smallest colour class
    with re-refinement after each tentative pairing.
    """
    n = g1.order
    if g2.order != n:
        return None
    if g1.edge_count() != g2.edge_count():
        return None
    if sorted(len(s) for s in g1.adj) != sorted(len(s) for s in g2.adj):
        return None

    def key_of(colors):
        return Counter(colors)

    def solve(c1, c2):
        c1, c2 = _refine_pair(g1, c1, g2, c2)
        if key_of(c1) != key_of(c2):
            return None
        cells = {}
        for v, c in enumerate(c1):
            cells.setdefault(c, []).append(v)
        nonsingle = {c: vs for c, vs in cells.items() if len(vs) > 1}
        if not nonsingle:
            # colours are all singletons: read the map off and check it
            where2 = {}
            for v, c in enumerate(c2):
                where2[c] = v
            mapping = tuple(where2[c1[v]] for v in range(n))
            for u in range(n):
                if {mapping[w] for w in g1.adj[u]} != set(g2.adj[mapping[u]]):
                    return None
            return mapping
        color, vs = min(nonsingle.items(), key=lambda kv: (len(kv[1]), kv[0]))
        v = vs[0]
        fresh = n + max(c1) + 1
        for u in range(n):
            if c2[u] != color:
                continue
            d1 = list(c1)
            d2 = list(c2)
            d1[v] = fresh
            d2[u] = fresh
            result = solve(d1, d2)
            if result is not None:
                return result
        return None

    return solve([0] * n, [0] * n)


def automorphisms(graph, limit=None):
    """Automorphisms as tuples, exhaustively for small graphs; with a limit,
    enumeration stops early (a truncated list still generates a subgroup)."""
    n = graph.order
    colors = _refine_colors(graph, [0] * n)
    cells = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    out = []
    mapping = [-1] * n
    used = [False] * n

    def extend(v):
        if limit is not None and len(out) >= limit:
            return
        if v == n:
            out.append(tuple(mapping))
            return
        for u in cells[colors[v]]:
            if used[u]:
                continue
            ok = True
            for w in graph.adj[v]:
                if w < v and mapping[w] not in graph.adj[u]:
                    ok = False
                    break
            if ok and len(graph.adj[v]) == len(graph.adj[u]):
                mapping[v] = u
                used[u] = True
                extend(v + 1)
                used[u] = False
                mapping[v] = -1

    extend(0)
    return out


def parse_graph(text):
    """Parse the graph text format: '#' comments, 'graph <n>', then 'e <u> <v>' lines."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MalformedGraph("empty input")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "graph":
        raise MalformedGraph(f"expected 'graph <n>' header, got {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError:
        raise MalformedGraph(f"bad order {head[1]!r}") from None
    if n < 0:
        raise MalformedGraph("negative order")
    edges = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != 3 or toks[0] != "e":
            raise MalformedGraph(f"expected 'e <u> <v>', got {ln!r}")
        try:
            u, v = int(toks[1]), int(toks[2])
        except ValueError:
            raise MalformedGraph(f"non-integer endpoint in {ln!r}") from None
        edges.append((u, v))
    return SimpleGraph(n, edges)


def format_graph(graph, comment=None):
    out = []
    if comment:
        for ln in comment.splitlines():
            out.append(f"# {ln}")
    out.append(f"graph {graph.order}")
    for u, v in graph.edges():
        out.append(f"e {u} {v}")
    return "\n".join(out) + "\n"


def read_graph(path):
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(path, graph, comment=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(graph, comment=comment))


def to_dot(graph, name=None):
    """Graphviz plain text with stable vertex order; isolated vertices listed too."""
    lines = [f"graph {name} {{" if name else "graph {"]
    for v in range(graph.order):
        if graph.vertex_tags is not None:
            lines.append(f'  {v} [label="{graph.vertex_tags[v]}"];')
        elif not graph.adj[v]:
            lines.append(f"  {v};")
    for u, v in graph.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
