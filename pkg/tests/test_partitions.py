from collections import Counter
from fractions import Fraction
from math import factorial, log

import pytest
from hypothesis import given, settings, strategies as st

from symcover.certified import ford_bound_lower
from symcover.partitions import (
    NormalSet,
    centralizer_order,
    class_density,
    class_size,
    conjugate,
    cycle_count_distribution,
    dumps_cycle_type,
    enumerate_partitions,
    fraction_str,
    multiplicities,
    oplus,
    parity,
    partition_count,
    splits_in_an,
)
from symcover.perms import conjugacy_orbit, cycle_type, group_elements, perm_sign


def _brute_partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        return [()]
    return [(k,) + rest for k in range(min(n, largest), 0, -1) for rest in _brute_partitions(n - k, k)]


def _pentagonal(n):
    p = [1] + [0] * n
    for m in range(1, n + 1):
        k, total = 1, 0
        while True:
            g1, g2 = k * (3 * k - 1) // 2, k * (3 * k + 1) // 2
            if g1 > m:
                break
            s = 1 if k % 2 else -1
            total += s * p[m - g1]
            if g2 <= m:
                total += s * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


def test_small_enumerations():
    assert enumerate_partitions(1) == ((1,),)
    assert enumerate_partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert len(enumerate_partitions(10)) == 42
    assert enumerate_partitions(0) == ((),)


@pytest.mark.parametrize("n", [5, 12, 20, 35])
def test_enumeration_against_oracles(n):
    parts = enumerate_partitions(n)
    assert len(parts) == _pentagonal(n) == partition_count(n)
    if n <= 20:
        assert list(parts) == _brute_partitions(n)
    assert list(parts) == sorted(parts, reverse=True)


def test_enumeration_range():
    with pytest.raises(ValueError):
        enumerate_partitions(61)
    with pytest.raises(ValueError):
        enumerate_partitions(-1)


def test_class_size_examples():
    assert class_size((2, 1, 1)) == 6
    assert class_size((5,)) == 24
    assert class_size((1,) * 9) == 1
    assert class_density((2, 1, 1)) == Fraction(1, 4)


@pytest.mark.parametrize("n", range(1, 8))
def test_class_size_matches_enumeration(n):
    counts = Counter(cycle_type(p) for p in group_elements("S", n))
    for ct in enumerate_partitions(n):
        assert class_size(ct) == counts[ct]
        assert centralizer_order(ct) * class_size(ct) == factorial(n)


@pytest.mark.parametrize("n", range(0, 31))
def test_class_equation(n):
    assert sum(class_size(ct) for ct in enumerate_partitions(n)) == factorial(n)


def test_parity_examples():
    assert parity((5,)) == "even"
    assert parity((2, 1, 1)) == "odd"
    assert parity((1,) * 7) == "even"


@pytest.mark.parametrize("n", range(1, 7))
def test_parity_matches_sign(n):
    for p in group_elements("S", n):
        assert (parity(cycle_type(p)) == "even") == (perm_sign(p) == 1)


def test_splitting_examples():
    assert splits_in_an((5,))
    assert not splits_in_an((3, 1, 1))
    assert not splits_in_an((2, 2))
    with pytest.raises(ValueError):
        splits_in_an((2, 1))


@pytest.mark.parametrize("n", range(2, 8))
def test_splitting_matches_orbits(n):
    alt = group_elements("A", n)
    seen = set()
    for p in alt:
        if p in seen:
            continue
        orbit = conjugacy_orbit(p, "A")
        seen |= orbit
        ct = cycle_type(p)
        assert splits_in_an(ct) == (len(orbit) < class_size(ct))


def test_oplus():
    assert oplus((3,), (2, 1)) == (3, 2, 1)
    assert oplus((1,), (1,)) == (1, 1)
    assert oplus((2, 2), (3, 3)) == (3, 3, 2, 2)


@given(st.integers(1, 4), st.integers(1, 3), st.data())
def test_oplus_algebra(a, b, data):
    x = data.draw(st.sampled_from(enumerate_partitions(a)))
    y = data.draw(st.sampled_from(enumerate_partitions(b)))
    z = data.draw(st.sampled_from(enumerate_partitions(data.draw(st.integers(1, 3)))))
    assert oplus(x, y) == oplus(y, x)
    assert oplus(oplus(x, y), z) == oplus(x, oplus(y, z))
    fx, fy, fxy = multiplicities(x), multiplicities(y), multiplicities(oplus(x, y))
    assert all(fxy.get(i, 0) == fx.get(i, 0) + fy.get(i, 0) for i in fxy)


@pytest.mark.parametrize("m,k", [(3, 2), (4, 3), (2, 2), (5, 2), (3, 3)])
def test_oplus_multinomial(m, k):
    # brute force: elements of S_{m+k} preserving {1..m} with the given pieces
    n = m + k
    for x in enumerate_partitions(m):
        for y in enumerate_partitions(k):
            joint = sum(1 for p in group_elements("S", n)
                        if all(p[i] < m for i in range(m))
                        and cycle_type(p[:m]) == x
                        and cycle_type(tuple(v - m for v in p[m:])) == y)
            assert joint == class_size(x) * class_size(y)
            # the class of x (+) y contains exactly binom(n, m) * joint such pairs when x, y share no part
            if not set(x) & set(y):
                assert class_size(oplus(x, y)) == joint * factorial(n) // (factorial(m) * factorial(k))


def test_cycle_count_examples():
    assert cycle_count_distribution(3)[1] == Fraction(1, 3)
    assert cycle_count_distribution(4)[2] == Fraction(11, 24)
    assert cycle_count_distribution(6)[6] == Fraction(1, factorial(6))


@pytest.mark.parametrize("n", range(1, 8))
def test_cycle_count_brute(n):
    counts = Counter(len(cycle_type(p)) for p in group_elements("S", n))
    dist = cycle_count_distribution(n)
    assert sum(dist.values()) == 1
    assert all(dist[m] == Fraction(counts[m], factorial(n)) for m in range(1, n + 1))


def test_ford_bound_lower_is_below_the_float_value():
    for n in (2, 10, 50):
        for m in (1, 2, 5, n):
            exact = (2 * log(n)) ** (m - 1) / factorial(m - 1)
            assert float(ford_bound_lower(n, m)) <= exact * (1 + 1e-12)


def test_conjugate():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate((2, 2)) == (2, 2)


def test_normal_set():
    A = NormalSet(4, frozenset([(3, 1), (1, 1, 1, 1)]), "A")
    assert A.density() == Fraction(9, 12)
    with pytest.raises(ValueError):
        NormalSet(4, frozenset([(2, 1, 1)]), "A")
    with pytest.raises(ValueError):
        NormalSet(4, frozenset([(2, 1)]), "S")


def test_serialization():
    assert dumps_cycle_type((3, 2, 1)) == "[3, 2, 1]"
    assert fraction_str(Fraction(2, 4)) == "1/2"
    assert fraction_str(3) == "3/1"


@settings(max_examples=30)
@given(st.integers(2, 50), st.data())
def test_ford_bound_property(n, data):
    m = data.draw(st.integers(1, n))
    assert cycle_count_distribution(n)[m] <= ford_bound_lower(n, m, prec=256)
