"""Pruned exhaustive backtracking over multiplication tables.

Given a target graph and a total order, the search enumerates tables whose
commuting pattern among the first |V| elements equals the target edge set,
whose remaining elements are central, and which are associative, then reports
realizing tables up to (anti)isomorphism together with an exhaustion flag.

Pruning combines four ingredients:
  * static candidate sets: the product ab commutes with every element that
    commutes with both a and b, which pins ab into the closed common
    neighbourhood (plus the central elements);
  * commutation ties: cells (a,b) and (b,a) are a single variable for
    commuting pairs and carry a disequality for non-commuting ones;
  * incremental associativity: each assignment checks and force-completes
    every product triple all of whose inputs are now defined;
  * value-orbit filtering at the first branch cell under automorphisms of
    the target (skipped when dedup is off, so the raw solution list stays
    complete); automorphism images of solutions are solutions, so dropping
    all but one representative value per orbit is sound.

The tree is split at a shallow depth into an ordered list of branch jobs so
results and node counts are identical for any worker count; budgets are
divided over jobs deterministically.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass, field
from itertools import permutations

from .commuting import commuting_graph
from .graphs import (
    SimpleGraph,
    automorphisms,
    components,
    decompose,
    format_graph,
    graphs_isomorphic,
)
from .tables import (
    GROUP,
    CayleyTable,
    MalformedTable,
    TableError,
    centre,
    check_associativity,
    classify_magma,
    find_equivalence,
    read_table,
    write_table,
)

_JOB_TARGET = 64
_MAX_SPLIT_DEPTH = 8


class SearchError(TableError):
    pass


@dataclass
class SearchSpec:
    target: SimpleGraph
    order: int
    centrefree: bool = False
    dedup: str = "iso+anti"  # none | iso | iso+anti
    node_budget: int = 10**9
    time_budget: float = 3600.0
    workers: int = 1

    def __post_init__(self):
        if self.order < self.target.order:
            raise SearchError("order must be at least the number of vertices")
        if self.centrefree and self.order != self.target.order:
            raise SearchError("a centrefree table has no room for central elements")
        if self.dedup not in ("none", "iso", "iso+anti"):
            raise SearchError(f"unknown dedup mode {self.dedup!r}")


@dataclass
class SearchOutcome:
    """representatives are verified tables, one per equivalence class;
    total_solutions counts solutions before deduplication (after the
    deterministic symmetry reduction); exhausted means the full constrained
    space was covered within budget."""

    representatives: list
    total_solutions: int
    nodes_explored: int
    exhausted: bool


class _Budget(Exception):
    pass


class _Search:
    def __init__(self, edges, nvert, order):
        n = self.n = order
        self.nvert = nvert
        full = (1 << n) - 1
        vmask = (1 << nvert) - 1
        central_tail = full & ~vmask
        comm = []
        for a in range(nvert):
            mask = (1 << a) | central_tail
            comm.append(mask)
        for u, v in edges:
            comm[u] |= 1 << v
            comm[v] |= 1 << u
        comm.extend([full] * (n - nvert))
        self.comm = comm

        domains = []
        domsets = []
        tied = []
        partner = []
        centrals = list(range(nvert, n))
        for a in range(n):
            for b in range(n):
                need = comm[a] & comm[b] & vmask
                cand = [v for v in range(nvert) if need & ~comm[v] == 0] + centrals
                domains.append(tuple(cand))
                domsets.append(frozenset(cand))
                partner.append(b * n + a)
                tied.append(bool((comm[a] >> b) & 1))
        self.domains = domains
        self.domsets = domsets
        self.partner = partner
        self.tied = tied

        self.table = [-1] * (n * n)
        self.occ = [[] for _ in range(n)]
        self.trail = []
        self.queue = []
        self.solutions = []
        self.nodes = 0
        self.node_cap = None
        self.deadline = None

    # -- assignment and propagation -------------------------------------

    def _assign(self, c, v):
        t = self.table
        cur = t[c]
        if cur >= 0:
            return cur == v
        if v not in self.domsets[c]:
            return False
        p = self.partner[c]
        if p != c and not self.tied[c] and t[p] == v:
            return False
        t[c] = v
        self.trail.append(c)
        self.occ[v].append(c)
        self.queue.append(c)
        if self.tied[c] and p != c and t[p] < 0:
            return self._assign(p, v)
        return True

    def _propagate(self):
        t = self.table
        n = self.n
        occ = self.occ
        queue = self.queue
        assign = self._assign
        while queue:
            c = queue.pop()
            a, b = divmod(c, n)
            v = t[c]
            # triples (x, a, b): (xa)b = x(ab)
            for x in range(n):
                w = t[x * n + a]
                if w < 0:
                    continue
                lhs = t[w * n + b]
                rhs = t[x * n + v]
                if lhs >= 0:
                    if rhs >= 0:
                        if lhs != rhs:
                            return False
                    elif not assign(x * n + v, lhs):
                        return False
                elif rhs >= 0:
                    if not assign(w * n + b, rhs):
                        return False
            # triples (a, b, y): (ab)y = a(by)
            bn = b * n
            for y in range(n):
                w = t[bn + y]
                if w < 0:
                    continue
                lhs = t[v * n + y]
                rhs = t[a * n + w]
                if lhs >= 0:
                    if rhs >= 0:
                        if lhs != rhs:
                            return False
                    elif not assign(a * n + w, lhs):
                        return False
                elif rhs >= 0:
                    if not assign(v * n + y, rhs):
                        return False
            # triples (x, y, b) with xy = a: (xy)b = v forces x(yb)
            for c2 in list(occ[a]):
                x, y = divmod(c2, n)
                w = t[y * n + b]
                if w < 0:
                    continue
                c3 = x * n + w
                cur = t[c3]
                if cur >= 0:
                    if cur != v:
                        return False
                elif not assign(c3, v):
                    return False
            # triples (a, y, z) with yz = b: a(yz) = v forces (ay)z
            for c2 in list(occ[b]):
                y, z = divmod(c2, n)
                w = t[a * n + y]
                if w < 0:
                    continue
                c3 = w * n + z
                cur = t[c3]
                if cur >= 0:
                    if cur != v:
                        return False
                elif not assign(c3, v):
                    return False
        return True

    def _undo(self, mark):
        t = self.table
        trail = self.trail
        occ = self.occ
        while len(trail) > mark:
            c = trail.pop()
            occ[t[c]].pop()
            t[c] = -1
        self.queue.clear()

    # -- branching -------------------------------------------------------

    def _choose(self):
        """Undefined cell with the fewest remaining candidates, or None."""
        t = self.table
        best, best_count = None, None
        for c in range(self.n * self.n):
            if t[c] >= 0:
                continue
            count = len(self.domains[c])
            p = self.partner[c]
            if p != c and not self.tied[c]:
                pv = t[p]
                if pv >= 0 and pv in self.domsets[c]:
                    count -= 1
            if best_count is None or count < best_count:
                best, best_count = c, count
                if count <= 1:
                    break
        return best

    def _candidates(self, c):
        t = self.table
        p = self.partner[c]
        if p != c and not self.tied[c] and t[p] >= 0:
            pv = t[p]
            return [v for v in self.domains[c] if v != pv]
        return list(self.domains[c])

    def _tick(self):
        self.nodes += 1
        if self.node_cap is not None and self.nodes >= self.node_cap:
            raise _Budget
        if self.deadline is not None and self.nodes % 4096 == 0 and time.monotonic() > self.deadline:
            raise _Budget

    def _record(self):
        t = self.table
        n = self.n
        nvert = self.nvert
        # the propagation is trusted nowhere: check the finished table outright
        for a in range(n):
            for b in range(n):
                ab = t[a * n + b]
                for c in range(n):
                    if t[ab * n + c] != t[a * n + t[b * n + c]]:
                        return
        for a in range(nvert):
            if all(t[a * n + b] == t[b * n + a] for b in range(n)):
                return  # a designated vertex turned out central
        self.solutions.append(tuple(t))

    def _dfs(self):
        c = self._choose()
        if c is None:
            self._record()
            return
        for v in self._candidates(c):
            self._tick()
            mark = len(self.trail)
            if self._assign(c, v) and self._propagate():
                self._dfs()
            self._undo(mark)

    def _expand(self, depth_limit, root_values=None):
        """Explore to a fixed depth, returning frontier branch decisions."""
        jobs = []

        def rec(depth, decisions):
            c = self._choose()
            if c is None:
                self._record()
                return
            if depth == depth_limit:
                jobs.append(tuple(decisions))
                return
            values = self._candidates(c)
            if depth == 0 and root_values is not None:
                values = [v for v in values if v in root_values]
            for v in values:
                self._tick()
                mark = len(self.trail)
                if self._assign(c, v) and self._propagate():
                    rec(depth + 1, decisions + [(c, v)])
                self._undo(mark)

        rec(0, [])
        return jobs

    def replay(self, decisions):
        for c, v in decisions:
            if not (self._assign(c, v) and self._propagate()):
                return False
        return True


def _root_symmetry_values(search, spec):
    """Orbit representatives for the first branch cell under target
    automorphisms extended by permutations of the central elements.

    A truncated automorphism list only makes the orbits finer, so capping the
    enumeration on highly symmetric targets stays sound."""
    if spec.dedup == "none":
        return None
    c = search._choose()
    if c is None:
        return None
    n, nvert = search.n, search.nvert
    if n - nvert > 4:
        return None
    a, b = divmod(c, n)
    exts = []
    for aut in automorphisms(spec.target, limit=2000):
        for tail in permutations(range(nvert, n)):
            exts.append(tuple(aut) + tail)
        if len(exts) >= 5000:
            break
    stab = [s for s in exts if (s[a] == a and s[b] == b) or (search.tied[c] and s[a] == b and s[b] == a)]
    values = search._candidates(c)
    keep = set()
    seen = set()
    for v in sorted(values):
        if v in seen:
            continue
        orbit = {v}
        frontier = [v]
        while frontier:
            x = frontier.pop()
            for s in stab:
                y = s[x]
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        seen |= orbit
        keep.add(min(orbit))
    return keep


def _verify_solution(table_tuple, spec):
    n = spec.order
    nvert = spec.target.order
    rows = [table_tuple[a * n : (a + 1) * n] for a in range(n)]
    table = CayleyTable(rows)
    if check_associativity(table) is not None:
        raise SearchError("search produced a non-associative table")
    if centre(table) != frozenset(range(nvert, n)):
        raise SearchError("search produced a table with the wrong centre")
    cg = commuting_graph(table)
    if cg.graph.adj != spec.target.adj and graphs_isomorphic(cg.graph, spec.target) is None:
        raise SearchError("search produced a table with the wrong commuting graph")
    return table


def _job_worker(args):
    edges, nvert, order, decisions, node_cap, deadline = args
    s = _Search(edges, nvert, order)
    s.node_cap = node_cap
    s.deadline = deadline
    if not s._propagate():
        return [], 0, False
    tripped = False
    if s.replay(decisions):
        try:
            s._dfs()
        except _Budget:
            tripped = True
    return s.solutions, s.nodes, tripped


def search_realizations(spec):
    """Run the backtracking search described in the module docstring."""
    edges = tuple(spec.target.edges())
    nvert = spec.target.order
    n = spec.order
    deadline = time.monotonic() + spec.time_budget

    splitter = _Search(edges, nvert, n)
    splitter.node_cap = spec.node_budget
    splitter.deadline = deadline
    exhausted = True
    solutions = []
    jobs = []
    if splitter._propagate():
        root_values = _root_symmetry_values(splitter, spec)
        try:
            for depth in range(1, _MAX_SPLIT_DEPTH + 1):
                splitter.solutions.clear()
                splitter.nodes = 0
                jobs = splitter._expand(depth, root_values=root_values)
                if not jobs or len(jobs) >= _JOB_TARGET:
                    break
        except _Budget:
            exhausted = False
            jobs = []
        solutions.extend(splitter.solutions)
    nodes = splitter.nodes

    if jobs and exhausted:
        # budget is dealt out in rounds: every pending job gets an equal slice
        # of what is left, and jobs that trip their slice restart next round
        # with a larger one; the schedule depends only on deterministic node
        # counts, so results match across worker counts
        job_results = {}
        pending = list(range(len(jobs)))
        budget_left = max(spec.node_budget - nodes, 0)
        while pending:
            cap = max(budget_left // len(pending), 1000)
            args = [(edges, nvert, n, jobs[i], cap, deadline) for i in pending]
            if spec.workers > 1:
                import multiprocessing

                with multiprocessing.Pool(spec.workers) as pool:
                    results = pool.map(_job_worker, args)
            else:
                results = [_job_worker(a) for a in args]
            still = []
            for i, res in zip(pending, results):
                job_results[i] = res
                nodes += res[1]
                budget_left -= res[1]
                if res[2]:
                    still.append(i)
            if not still:
                break
            if budget_left <= cap * len(still) or time.monotonic() > deadline:
                exhausted = False
                break
            pending = still
        for i in sorted(job_results):
            sols, _, tripped = job_results[i]
            solutions.extend(sols)
            if tripped:
                exhausted = False

    tables = [_verify_solution(sol, spec) for sol in solutions]
    if spec.dedup == "none":
        reps = tables
    else:
        allow_anti = spec.dedup == "iso+anti"
        reps = []
        for t in tables:
            if all(find_equivalence(t, r, allow_anti=allow_anti) is None for r in reps):
                reps.append(t)
    return SearchOutcome(
        representatives=reps,
        total_solutions=len(tables),
        nodes_explored=nodes,
        exhausted=exhausted,
    )


def target_hash(graph):
    return hashlib.sha256(format_graph(graph).encode()).hexdigest()


def write_outcome(directory, spec, outcome):
    """Persist representatives plus a manifest for later re-verification."""
    os.makedirs(directory, exist_ok=True)
    files = []
    for i, table in enumerate(outcome.representatives):
        name = f"realization_{i:03d}.tbl"
        write_table(os.path.join(directory, name), table)
        files.append(name)
    manifest = {
        "target_hash": target_hash(spec.target),
        "target_order": spec.target.order,
        "order": spec.order,
        "centrefree": spec.centrefree,
        "dedup": spec.dedup,
        "node_budget": spec.node_budget,
        "representatives": files,
        "total_solutions": outcome.total_solutions,
        "nodes_explored": outcome.nodes_explored,
        "exhausted": outcome.exhausted,
    }
    path = os.path.join(directory, "manifest.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


@dataclass(frozen=True)
class ScanEntry:
    file: str
    status: str  # ok | malformed | not_a_group
    detail: str = ""
    order: int = 0
    centre_size: int = 0
    vertex_count: int = 0
    decomposition: str = ""
    matched: bool = False


@dataclass
class ScanReport:
    predicate: str
    entries: list = field(default_factory=list)

    @property
    def matches(self):
        return [e for e in self.entries if e.matched]

    @property
    def skipped(self):
        return [e for e in self.entries if e.status != "ok"]


def corpus_scan(directory, predicate):
    """Evaluate a predicate over every table file in a directory.

    predicate is "connected" (commuting graph nonempty and in one piece) or
    "decomp:<rendering>" (exact decomposition string).  Non-group tables are
    reported and skipped.
    """
    if predicate != "connected" and not predicate.startswith("decomp:"):
        raise SearchError(f"unknown predicate {predicate!r}")
    if not os.path.isdir(directory):
        raise IOError(f"not a directory: {directory}")
    report = ScanReport(predicate=predicate)
    for name in sorted(os.listdir(directory)):
        path = os.path.join(directory, name)
        if not os.path.isfile(path):
            continue
        try:
            table = read_table(path)
        except (MalformedTable, UnicodeDecodeError) as exc:
            report.entries.append(ScanEntry(file=name, status="malformed", detail=str(exc)))
            continue
        if classify_magma(table) != GROUP:
            report.entries.append(ScanEntry(file=name, status="not_a_group", order=table.order))
            continue
        cg = commuting_graph(table)
        dec = decompose(cg.graph)
        if predicate == "connected":
            matched = cg.graph.order > 0 and len(components(cg.graph)) == 1
        else:
            matched = dec.rendering == predicate.split(":", 1)[1]
        report.entries.append(
            ScanEntry(
                file=name,
                status="ok",
                order=table.order,
                centre_size=len(cg.centre),
                vertex_count=cg.graph.order,
                decomposition=dec.rendering,
                matched=matched,
            )
        )
    return report
