import json

import pytest

from comgraph.commuting import commuting_graph
from comgraph.graphs import SimpleGraph, cycle, edgeless, graphs_isomorphic, house
from comgraph.search import (
    SearchError,
    SearchSpec,
    corpus_scan,
    search_realizations,
    write_outcome,
)
from comgraph.tables import centre, check_associativity, write_table
from comgraph.constructors import build_group, left_zero


def test_spec_validation():
    with pytest.raises(SearchError):
        SearchSpec(cycle(4), 3)
    with pytest.raises(SearchError):
        SearchSpec(cycle(4), 5, centrefree=True)
    with pytest.raises(SearchError):
        SearchSpec(cycle(4), 4, dedup="fancy")


def _definitional_count(graph):
    """Brute-force labeled realization count at order |V|: lay out the whole
    constraint space (edge cells tied, non-edge cells differing, the rest
    free) and keep the associative centrefree tables.  numpy only; no search
    machinery."""
    import numpy as np
    from itertools import product as iproduct

    n = graph.order
    edge_pairs = graph.edges()
    anti_pairs = [
        (u, v) for u in range(n) for v in range(u + 1, n) if not graph.has_edge(u, v)
    ]
    edge_vals = list(iproduct(range(n), repeat=len(edge_pairs)))
    anti_single = [(a, b) for a in range(n) for b in range(n) if a != b]
    anti_vals = list(iproduct(anti_single, repeat=len(anti_pairs)))
    diag_vals = list(iproduct(range(n), repeat=n))
    total = len(edge_vals) * len(anti_vals) * len(diag_vals)

    tables = np.empty((total, n * n), dtype=np.int8)
    reps = len(anti_vals) * len(diag_vals)
    e = np.repeat(np.array(edge_vals, dtype=np.int8).reshape(len(edge_vals), -1), reps, axis=0)
    a_flat = np.array([sum(pair, ()) for pair in anti_vals], dtype=np.int8).reshape(len(anti_vals), -1)
    a = np.tile(np.repeat(a_flat, len(diag_vals), axis=0), (len(edge_vals), 1))
    d = np.tile(np.array(diag_vals, dtype=np.int8), (len(edge_vals) * len(anti_vals), 1))
    for k, (u, v) in enumerate(edge_pairs):
        tables[:, n * u + v] = e[:, k]
        tables[:, n * v + u] = e[:, k]
    for k, (u, v) in enumerate(anti_pairs):
        tables[:, n * u + v] = a[:, 2 * k]
        tables[:, n * v + u] = a[:, 2 * k + 1]
    for k in range(n):
        tables[:, n * k + k] = d[:, k]

    alive = tables
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if len(alive) == 0:
                    return 0
                xy = alive[:, n * x + y].astype(np.int64)
                yz = alive[:, n * y + z].astype(np.int64)
                rows = np.arange(len(alive))
                alive = alive[alive[rows, n * xy + z] == alive[rows, n * x + yz]]
    # drop tables where some vertex ends up central (dominating targets)
    keep = []
    for t in alive:
        grid = t.reshape(n, n)
        if all(any(grid[v, w] != grid[w, v] for w in range(n)) for v in range(n)):
            keep.append(t)
    return len(keep)


def test_search_counts_match_definitional_enumeration():
    # independent cross-validation on every target small enough to enumerate:
    # all graphs on <= 3 vertices plus the 4-vertex ones with >= 4 edges
    from comgraph.verify import small_graphs_up_to_iso

    targets = [g for g in small_graphs_up_to_iso(3)]
    targets += [g for g in small_graphs_up_to_iso(4) if g.order == 4 and g.edge_count() >= 4]
    assert len(targets) >= 10
    for g in targets:
        expected = _definitional_count(g)
        out = search_realizations(SearchSpec(g, g.order, centrefree=True, dedup="none"))
        assert out.exhausted
        assert out.total_solutions == expected, (g.edges(), expected, out.total_solutions)


def test_search_with_central_element_matches_brute_force():
    # two isolated vertices at order three: one designated central element;
    # brute force over the tied/anti layout with plain loops
    from itertools import product as iproduct

    count = 0
    for (u, w) in ((a, b) for a in range(3) for b in range(3) if a != b):
        for d0, d1 in iproduct(range(3), repeat=2):
            for z0, z1, zz in iproduct(range(3), repeat=3):
                grid = [[d0, u, z0], [w, d1, z1], [z0, z1, zz]]
                t = lambda a, b: grid[a][b]
                if any(
                    t(t(x, y), v) != t(x, t(y, v))
                    for x in range(3)
                    for y in range(3)
                    for v in range(3)
                ):
                    continue
                # designated vertices must stay noncentral
                if all(t(0, b) == t(b, 0) for b in range(3)):
                    continue
                if all(t(1, b) == t(b, 1) for b in range(3)):
                    continue
                count += 1
    out = search_realizations(SearchSpec(edgeless(2), 3, dedup="none"))
    assert out.exhausted and out.total_solutions == count
    assert count > 0


def test_c4_count_against_independent_enumeration():
    # oracle for the C4 class count: enumerate the definitional space outright
    # (edge cells tied, non-edge cells differing, everything else free) with
    # numpy, keep the associative tables, and classify them; no search
    # machinery involved
    import numpy as np
    from itertools import product as iproduct

    edge_pairs = [(0, 1), (1, 2), (2, 3), (0, 3)]
    anti_pairs = [(0, 2), (1, 3)]
    diag = [(i, i) for i in range(4)]

    edge_vals = list(iproduct(range(4), repeat=4))
    anti_vals = [
        (a, b, c, d)
        for a in range(4)
        for b in range(4)
        if a != b
        for c in range(4)
        for d in range(4)
        if c != d
    ]
    diag_vals = list(iproduct(range(4), repeat=4))
    total = len(edge_vals) * len(anti_vals) * len(diag_vals)
    assert total == 256 * 144 * 256

    # lay the space out as an (N, 16) array built in blocks
    tables = np.empty((total, 16), dtype=np.int8)
    e = np.repeat(np.array(edge_vals, dtype=np.int8), len(anti_vals) * len(diag_vals), axis=0)
    a = np.tile(
        np.repeat(np.array(anti_vals, dtype=np.int8), len(diag_vals), axis=0),
        (len(edge_vals), 1),
    )
    d = np.tile(np.array(diag_vals, dtype=np.int8), (len(edge_vals) * len(anti_vals), 1))
    for k, (u, v) in enumerate(edge_pairs):
        tables[:, 4 * u + v] = e[:, k]
        tables[:, 4 * v + u] = e[:, k]
    for k, (u, v) in enumerate(anti_pairs):
        tables[:, 4 * u + v] = a[:, 2 * k]
        tables[:, 4 * v + u] = a[:, 2 * k + 1]
    for k, (u, _) in enumerate(diag):
        tables[:, 5 * u] = d[:, k]

    alive = tables
    for x in range(4):
        for y in range(4):
            for z in range(4):
                xy = alive[:, 4 * x + y].astype(np.int64)
                yz = alive[:, 4 * y + z].astype(np.int64)
                lhs = alive[np.arange(len(alive)), 4 * xy + z]
                rhs = alive[np.arange(len(alive)), 4 * x + yz]
                alive = alive[lhs == rhs]
        if len(alive) == 0:
            break

    # centrefree is automatic here (every element has a non-neighbour), so the
    # survivors are exactly the labeled realizations
    assert len(alive) == 8
    from comgraph.tables import CayleyTable, find_equivalence

    survivors = [CayleyTable(t.reshape(4, 4)) for t in alive]
    classes = []
    for t in survivors:
        if all(find_equivalence(t, r, allow_anti=True) is None for r in classes):
            classes.append(t)
    assert len(classes) == 2


def test_c4_centrefree_classes():
    out = search_realizations(SearchSpec(cycle(4), 4, centrefree=True, dedup="iso+anti"))
    assert out.exhausted
    # two classes: the cycle band and the left-zero/left-identity band
    assert len(out.representatives) == 2
    for table in out.representatives:
        assert check_associativity(table) is None
        assert centre(table) == frozenset()
        assert commuting_graph(table).graph.adj == cycle(4).adj
    out_iso = search_realizations(SearchSpec(cycle(4), 4, centrefree=True, dedup="iso"))
    assert len(out_iso.representatives) == 4  # each class splits from its opposite
    out_all = search_realizations(SearchSpec(cycle(4), 4, centrefree=True, dedup="none"))
    assert out_all.total_solutions == 8


def test_c5_and_house_are_not_realizable_centrefree():
    for graph in (cycle(5), house()):
        out = search_realizations(SearchSpec(graph, 5, centrefree=True, dedup="iso+anti"))
        assert out.exhausted and not out.representatives


def test_c8_unique_class():
    out = search_realizations(SearchSpec(cycle(8), 8, centrefree=True, dedup="iso+anti"))
    assert out.exhausted and len(out.representatives) == 1


def test_c6_not_realizable_at_order_seven():
    out = search_realizations(SearchSpec(cycle(6), 7, dedup="iso+anti"))
    assert out.exhausted and not out.representatives
    # cross-check with symmetry reduction off: same conclusion, full tree
    raw = search_realizations(SearchSpec(cycle(6), 7, dedup="none"))
    assert raw.exhausted and raw.total_solutions == 0
    assert raw.nodes_explored >= out.nodes_explored


def test_c6_realizable_at_order_eight():
    out = search_realizations(
        SearchSpec(cycle(6), 8, dedup="iso+anti", node_budget=40000)
    )
    # budget too small to exhaust, but any found table must verify
    for table in out.representatives:
        assert check_associativity(table) is None
        cg = commuting_graph(table)
        assert graphs_isomorphic(cg.graph, cycle(6)) is not None


def test_edgeless_search_finds_left_zero():
    out = search_realizations(SearchSpec(edgeless(3), 3, centrefree=True, dedup="iso+anti"))
    assert out.exhausted and out.representatives
    from comgraph.tables import find_equivalence

    assert any(
        find_equivalence(t, left_zero(3), allow_anti=True) is not None
        for t in out.representatives
    )


def test_all_small_gate_passers_are_realizable():
    from comgraph.obstructions import centrefree_gate
    from comgraph.verify import small_graphs_up_to_iso

    for g in small_graphs_up_to_iso(4):
        if not centrefree_gate(g).passed:
            continue
        out = search_realizations(SearchSpec(g, g.order, centrefree=True, dedup="iso+anti"))
        assert out.exhausted and out.representatives


def test_determinism_across_runs_and_workers():
    spec = dict(order=5, centrefree=True, dedup="iso")
    a = search_realizations(SearchSpec(cycle(5), **spec))
    b = search_realizations(SearchSpec(cycle(5), **spec))
    assert a.nodes_explored == b.nodes_explored
    assert a.total_solutions == b.total_solutions
    g = SimpleGraph(4, [(0, 1), (2, 3)])
    one = search_realizations(SearchSpec(g, 4, centrefree=True, dedup="iso+anti", workers=1))
    two = search_realizations(SearchSpec(g, 4, centrefree=True, dedup="iso+anti", workers=2))
    assert one.nodes_explored == two.nodes_explored
    assert one.total_solutions == two.total_solutions
    assert [t.entries.tolist() for t in one.representatives] == [
        t.entries.tolist() for t in two.representatives
    ]


def test_budget_exhaustion_returns_partial():
    out = search_realizations(SearchSpec(cycle(6), 8, dedup="none", node_budget=5000))
    assert not out.exhausted
    assert out.nodes_explored >= 5000 or out.total_solutions == 0


def test_write_outcome_manifest(tmp_path):
    spec = SearchSpec(cycle(4), 4, centrefree=True, dedup="iso+anti")
    out = search_realizations(spec)
    manifest_path = write_outcome(tmp_path / "run", spec, out)
    with open(manifest_path, encoding="utf-8") as fh:
        manifest = json.load(fh)
    assert manifest["exhausted"] is True
    assert manifest["total_solutions"] == out.total_solutions
    assert len(manifest["representatives"]) == len(out.representatives)
    from comgraph.tables import read_table

    for name in manifest["representatives"]:
        table = read_table(tmp_path / "run" / name)
        assert check_associativity(table) is None


def test_corpus_scan(tmp_path):
    d = tmp_path / "corpus"
    d.mkdir()
    write_table(d / "a_q8.tbl", build_group("quaternion:8"))
    write_table(d / "b_z4.tbl", build_group("cyclic:4"))
    write_table(d / "c_lz.tbl", left_zero(3))
    (d / "d_bad.tbl").write_text("magma 2\n0 0\n")
    report = corpus_scan(d, "connected")
    assert len(report.entries) == 4
    assert [e.status for e in report.entries] == ["ok", "ok", "not_a_group", "malformed"]
    assert not report.matches  # Q8's graph is 3K2 (disconnected), Z4's is empty
    report = corpus_scan(d, "decomp:3K2")
    assert [e.file for e in report.matches] == ["a_q8.tbl"]
    with pytest.raises(SearchError):
        corpus_scan(d, "largest")
    with pytest.raises(IOError):
        corpus_scan(d / "missing", "connected")


def test_empty_corpus(tmp_path):
    d = tmp_path / "empty"
    d.mkdir()
    report = corpus_scan(d, "connected")
    assert report.entries == [] and report.matches == []


def _central_product(a, b):
    """Central product identifying the two central involutions."""
    from comgraph.constructors import ActionMap, semidirect_product
    from comgraph.tables import centre, element_orders, identity_of, quotient_by_normal_subgroup

    ident = tuple(range(a.order))
    trivial = ActionMap(domain=b, target=a, images=(ident,) * b.order)
    prod = semidirect_product(a, b, trivial)
    ca = next(x for x in sorted(centre(a)) if element_orders(a)[x] == 2)
    cb = next(x for x in sorted(centre(b)) if element_orders(b)[x] == 2)
    return quotient_by_normal_subgroup(prod, {identity_of(prod), ca * b.order + cb})


def test_corpus_criterion_shape_on_constructed_order_32_groups(tmp_path):
    # the two extraspecial groups of order 32 have connected commuting graphs
    # on 30 vertices; a directory shaped like the full corpus (seven connected
    # entries at order 32, none below) exercises the checker's pass path
    from comgraph.constructors import dihedral, generalized_quaternion
    from comgraph.graphs import components
    from comgraph.verify import check_corpus

    plus = _central_product(dihedral(8), dihedral(8))
    minus = _central_product(dihedral(8), generalized_quaternion(8))
    for g in (plus, minus):
        cg = commuting_graph(g)
        assert g.order == 32 and len(cg.centre) == 2
        assert cg.graph.order == 30 and len(components(cg.graph)) == 1

    d = tmp_path / "corpus32"
    d.mkdir()
    for i in range(7):
        write_table(d / f"g32_{i}.tbl", plus if i % 2 else minus)
    write_table(d / "small_s3.tbl", build_group("symmetric:3"))
    write_table(d / "small_q8.tbl", build_group("quaternion:8"))
    status, detail = check_corpus(str(d))
    assert status == "pass", detail
