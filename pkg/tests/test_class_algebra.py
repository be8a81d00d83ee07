import random
from fractions import Fraction

import pytest

from symcover.characters import Label, character_table
from symcover.class_algebra import (
    StructureQuery,
    brute_square_support,
    brute_structure_constant,
    covers,
    exploratory_theorem_scan,
    gleason_instance,
    product_support,
    square_support,
    structure_constant,
    structure_constant_of,
    target_classes,
    verify_s12_identity,
    verify_vishne,
    vishne_prediction,
)
from symcover.partitions import NormalSet, class_size, enumerate_partitions
from symcover.perms import compose, cycle_type, group_elements


def test_structure_constant_examples():
    assert structure_constant_of("S", 3, (2, 1), (2, 1), (3,)) == 3
    assert structure_constant_of("S", 4, (2, 2), (2, 2), (4,)) == 0
    for ct in enumerate_partitions(5):
        # beta = alpha^-1 tau with tau = 1 forces beta = alpha^-1, and S_n classes are closed under inverse
        assert structure_constant_of("S", 5, ct, ct, (1,) * 5) == class_size(ct)


def test_query_validation():
    with pytest.raises(ValueError):
        StructureQuery(4, "A", Label((2, 1, 1)), Label((3, 1)), Label((3, 1)))
    with pytest.raises(ValueError):
        StructureQuery(4, "S", Label((3, 1), "+"), Label((3, 1)), Label((3, 1)))
    with pytest.raises(ValueError):
        structure_constant_of("A", 5, "5", "5", "5")
    q = StructureQuery(5, "A", Label((5,), "+"), Label((5,), "+"), Label((3, 1, 1)))
    assert structure_constant(q) == brute_structure_constant("A", 5, "5+", "5+", "3,1,1")


@pytest.mark.parametrize("group,n", [("S", 4), ("A", 4), ("S", 5), ("A", 5)])
def test_structure_constants_brute(group, n):
    cols = character_table(group, n).cols
    for c1 in cols:
        for c2 in cols:
            for c3 in cols:
                assert structure_constant_of(group, n, c1, c2, c3) == brute_structure_constant(group, n, c1, c2, c3)


def test_constants_from_full_multiplication():
    # every ordered pair (a, b) with a*b = tau counted once; independent of the pair-counting oracle
    group, n = "S", 4
    elems = group_elements(group, n)
    rng = random.Random(3)
    types = enumerate_partitions(n)
    for _ in range(20):
        c1, c2, c3 = (rng.choice(types) for _ in range(3))
        tau = next(p for p in elems if cycle_type(p) == c3)
        count = sum(1 for a in elems if cycle_type(a) == c1
                    for b in elems if cycle_type(b) == c2 and compose(a, b) == tau)
        assert structure_constant_of(group, n, c1, c2, c3) == count


def test_square_support_examples():
    assert set(square_support((3,), "S", 3)) == {Label((3,)), Label((1, 1, 1))}
    assert set(square_support((2, 2), "S", 4)) == {Label((2, 2)), Label((1,) * 4)}
    assert square_support((1,) * 5, "S") == [Label((1,) * 5)]


@pytest.mark.parametrize("group,n", [("S", 5), ("A", 5), ("S", 6), ("A", 6)])
def test_square_support_brute(group, n):
    for c in character_table(group, n).cols:
        assert set(square_support(c, group, n)) == brute_square_support(group, n, c)


def test_union_labels_in_an():
    # the unbranched label names both halves of a split class
    both = set(product_support("A", 5, "5", "5"))
    halves = set()
    for a in ("5+", "5-"):
        for b in ("5+", "5-"):
            halves |= set(product_support("A", 5, a, b))
    assert both == halves


def test_covers_examples():
    res = covers(NormalSet(3, frozenset([(3,)]), "S"), "An")
    assert res.covered and set(res.certificate) == {Label((3,)), Label((1, 1, 1))}
    res = covers(NormalSet(4, frozenset([(2, 2)]), "S"), "An")
    assert not res.covered and Label((3, 1)) in res.uncovered
    full = NormalSet(6, frozenset(c for c in enumerate_partitions(6) if (sum(c) - len(c)) % 2 == 0), "A")
    assert covers(full, "An").covered
    with pytest.raises(ValueError):
        target_classes("A", 5, "Sn")


def test_gleason_small():
    for n in range(3, 9):
        assert gleason_instance(n).covered


def test_vishne():
    assert vishne_prediction(4) == [Label((2, 2)), Label((1,) * 4)]
    for n in (2, 4, 6):
        assert verify_vishne(n, "characters") and verify_vishne(n, "brute")
    with pytest.raises(ValueError):
        verify_vishne(5)


def test_s12_identity():
    check = verify_s12_identity()
    assert check.holds
    assert check.left_type == check.right_type == (3, 3, 3, 3)
    assert check.product_type == (2,) * 6


def test_scan_examples():
    rows = exploratory_theorem_scan(5)
    assert {"theorem": "gleason", "n": 5, "class": "5", "statement": "(n)^2 = A_n", "verdict": "holds"} in rows
    a3 = [r for r in exploratory_theorem_scan(3) if r["theorem"] == "larsen-tiep"]
    assert {r["class"]: r["verdict"] for r in a3} == {"3": "holds", "3+": "fails", "3-": "fails"}
    lp = [r for r in exploratory_theorem_scan(4) if r["theorem"] == "lulov-pak"]
    assert [r["class"] for r in lp] == ["4"]
    assert all(r["verdict"] in ("holds", "fails") for r in exploratory_theorem_scan(8))


def test_brute_constant_is_integral_density():
    # sum over C3 of a_{11}^{3} |C3| = |C1|^2
    for group, n in (("S", 5), ("A", 5)):
        table = character_table(group, n)
        for c in table.cols:
            total = sum(structure_constant_of(group, n, c, c, c3) * size
                        for c3, size in zip(table.cols, table.class_sizes))
            size_c = table.class_sizes[table.col_index(c)]
            assert Fraction(total) == size_c**2
