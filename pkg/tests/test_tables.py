import random

import numpy as np
import pytest

from comgraph.constructors import build_group, fixture_table, left_zero
from comgraph.tables import (
    CayleyTable,
    MalformedTable,
    NotAGroup,
    NotASemigroup,
    NotNormal,
    centraliser,
    centre,
    check_associativity,
    classify_magma,
    element_orders,
    find_equivalence,
    format_table,
    identity_of,
    normaliser,
    opposite,
    parse_table,
    quotient_by_normal_subgroup,
    relabel_table,
    unitize,
)


def brute_commuters(table, a):
    return {x for x in range(table.order) if table.mul(x, a) == table.mul(a, x)}


def test_associativity_of_stock_tables(centrefree6):
    assert check_associativity(centrefree6) is None
    assert check_associativity(left_zero(3)) is None


def test_first_associativity_violation_is_lexicographic():
    sub3 = CayleyTable([[(i - j) % 3 for j in range(3)] for i in range(3)])
    assert check_associativity(sub3) == (0, 0, 1)
    # (0-0)-1 = 2 = 0-(0-1); the first bad triple in scan order is (0,0,1):
    # (0*0)*1 = -1 = 2 while 0*(0*1) = 0-2 = 1
    assert sub3.mul(sub3.mul(0, 0), 1) != sub3.mul(0, sub3.mul(0, 1))


def test_classify_magma():
    assert classify_magma(left_zero(3)) == "semigroup"
    assert classify_magma(CayleyTable([[(i + j) % 4 for j in range(4)] for i in range(4)])) == "group"
    assert classify_magma(fixture_table("centrefree6")) == "semigroup"
    monoid = unitize(left_zero(2))
    assert classify_magma(monoid) == "monoid"


def test_centre(centrefree6):
    assert centre(centrefree6) == frozenset()
    z4 = CayleyTable([[(i + j) % 4 for j in range(4)] for i in range(4)])
    assert centre(z4) == frozenset(range(4))


def test_centraliser_empty_set_is_everything(centrefree6):
    assert centraliser(centrefree6, set()) == frozenset(range(6))


def test_centraliser_of_three_cycle_in_s3(s3):
    orders = element_orders(s3)
    c = next(i for i, o in enumerate(orders) if o == 3)
    expected = brute_commuters(s3, c)
    assert centraliser(s3, {c}) == frozenset(expected)
    # the brute-force set is the cyclic subgroup generated by c
    assert expected == {identity_of(s3), c, s3.mul(c, c)}


def test_centraliser_in_printed_six_element_table(centrefree6):
    # read off the printed table: s5 commutes with s1, s2, s4 and itself
    assert centraliser(centrefree6, {4}) == frozenset({0, 1, 3, 4})


def test_centre_contained_in_every_centraliser(centrefree6, s3):
    rng = random.Random(1)
    for table in (centrefree6, s3):
        for _ in range(10):
            subset = {rng.randrange(table.order) for _ in range(rng.randint(1, 3))}
            assert centre(table) <= centraliser(table, subset)


def test_normaliser_requires_group(centrefree6):
    with pytest.raises(NotAGroup):
        normaliser(centrefree6, {0})


def test_normaliser_whole_group_and_index_two(s3):
    assert normaliser(s3, set(range(6))) == frozenset(range(6))
    orders = element_orders(s3)
    sub = {i for i, o in enumerate(orders) if o in (1, 3)}
    assert normaliser(s3, sub) == frozenset(range(6))


def test_normaliser_of_order_three_subgroup_in_a4(a4):
    c = next(i for i, o in enumerate(element_orders(a4)) if o == 3)
    sub = {identity_of(a4), c, a4.mul(c, c)}
    # independent check: x^-1 A x = A by scanning rows for the inverse
    e = identity_of(a4)
    expected = set()
    for x in range(12):
        xi = next(y for y in range(12) if a4.mul(x, y) == e)
        if {a4.mul(a4.mul(xi, a), x) for a in sub} == sub:
            expected.add(x)
    assert normaliser(a4, sub) == frozenset(expected) == frozenset(sub)


def test_opposite_is_involution_and_preserves_structure(centrefree6):
    opp = opposite(centrefree6)
    assert opposite(opp) == centrefree6
    assert check_associativity(opp) is None
    assert centre(opp) == centre(centrefree6)
    for a in range(6):
        assert centraliser(opp, {a}) == centraliser(centrefree6, {a})
    z4 = CayleyTable([[(i + j) % 4 for j in range(4)] for i in range(4)])
    assert opposite(z4) == z4


def test_unitize(centrefree6):
    m = unitize(centrefree6)
    assert m.order == 7
    assert identity_of(m) == 6
    again = unitize(m)
    assert again.order == 8 and identity_of(again) == 7
    with pytest.raises(NotASemigroup):
        unitize(CayleyTable([[(i - j) % 3 for j in range(3)] for i in range(3)]))


def test_quotients():
    z4 = CayleyTable([[(i + j) % 4 for j in range(4)] for i in range(4)])
    q = quotient_by_normal_subgroup(z4, {0, 2})
    assert q.order == 2 and classify_magma(q) == "group"


def test_quotient_rejects_non_normal(s3):
    t = next(i for i, o in enumerate(element_orders(s3)) if o == 2)
    with pytest.raises(NotNormal):
        quotient_by_normal_subgroup(s3, {identity_of(s3), t})


def test_sl27_quotient_by_centre_has_order_168():
    # oracle: count determinant-one matrices over GF(7) directly
    count = 0
    for a in range(7):
        for b in range(7):
            for c in range(7):
                for d in range(7):
                    if (a * d - b * c) % 7 == 1:
                        count += 1
    assert count == 336
    sl = build_group("sl2:7")
    assert sl.order == count
    psl = quotient_by_normal_subgroup(sl, centre(sl))
    assert psl.order == 168


def test_find_equivalence_on_relabellings(sl23):
    rng = random.Random(5)
    for table in (fixture_table("centrefree6"), sl23):
        for _ in range(5):
            perm = list(range(table.order))
            rng.shuffle(perm)
            cert = find_equivalence(table, relabel_table(table, perm))
            assert cert is not None and cert.kind == "isomorphism"


def test_find_equivalence_certificates_invert(centrefree6):
    rng = random.Random(11)
    perm = list(range(6))
    rng.shuffle(perm)
    other = relabel_table(centrefree6, perm)
    cert = find_equivalence(centrefree6, other)
    inv = cert.inverted()
    from comgraph.tables import certificate_holds

    assert certificate_holds(inv, other, centrefree6)


def test_q8_and_d8_are_not_equivalent(q8, d8):
    assert find_equivalence(q8, d8, allow_anti=True) is None
    assert sum(1 for o in element_orders(q8) if o == 2) == 1
    assert sum(1 for o in element_orders(d8) if o == 2) == 5


def test_group_centre_divides_order(sl23, s4, q8):
    for table in (sl23, s4, q8):
        assert table.order % len(centre(table)) == 0


def test_table_round_trip(centrefree6):
    text = format_table(centrefree6, comment="six elements")
    back = parse_table(text)
    assert back == centrefree6
    assert back.labels == centrefree6.labels


def test_parse_errors():
    with pytest.raises(MalformedTable):
        parse_table("magma 2\n0 0\n")
    with pytest.raises(MalformedTable):
        parse_table("graph 2\n")
    with pytest.raises(MalformedTable):
        parse_table("magma 2\n0 3\n0 0\n")
    with pytest.raises(MalformedTable):
        CayleyTable(np.zeros((2, 3), dtype=int))
