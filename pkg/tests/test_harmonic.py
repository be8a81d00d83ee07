import random
from fractions import Fraction

import pytest

from symcover.characters import Label, character_table
from symcover.harmonic import (
    GroupFunction,
    cayley_eigenvalues,
    class_members,
    convolution_eigenvalues,
    convolve,
    hoffman_bound,
    independence_pairing,
    isotypic_decomposition,
    isotypic_project,
    level_projection_norm,
    random_subset,
    spread_projection_report,
)
from symcover.perms import compose, from_cycles, group_elements, identity, inverse, perm_sign
from symcover.scalar import AlgebraicScalar, exact_sum


def _operator(c, group, n):
    """Dense rational matrix of f -> E_{s in C} f(s y)."""
    elems = group_elements(group, n)
    idx = {p: i for i, p in enumerate(elems)}
    members = class_members(c, group, n)
    w = Fraction(1, len(members))
    m = [[Fraction(0)] * len(elems) for _ in elems]
    for y, p in enumerate(elems):
        for s in members:
            m[y][idx[compose(s, p)]] += w
    return m


def _matmul(a, b):
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col) if x and y) for col in cols] for row in a]


def _trace_powers(m, k):
    out, p = [], m
    for _ in range(k):
        out.append(sum(p[i][i] for i in range(len(p))))
        p = _matmul(p, m)
    return out


@pytest.mark.parametrize("group,n,c", [("S", 3, "3"), ("S", 3, "2,1"), ("S", 4, "2,1,1"),
                                       ("S", 4, "4"), ("A", 4, "2,2"), ("A", 4, "3,1+")])
def test_spectrum_against_dense_operator(group, n, c):
    """Power sums of the eigenvalues, weighted by chi(1)^2, equal traces of M^k."""
    table = character_table(group, n)
    eig = cayley_eigenvalues(c, group, n)
    traces = _trace_powers(_operator(c, group, n), 4)
    for k, tr in enumerate(traces, start=1):
        predicted = exact_sum(AlgebraicScalar.coerce(eig[r]) ** k * d * d for r, d in zip(table.rows, table.dims))
        assert predicted == tr


def test_eigenvalue_examples():
    eig = cayley_eigenvalues("3", "S", 3)
    assert eig == {Label((3,)): 1, Label((1, 1, 1)): 1, Label((2, 1)): Fraction(-1, 2)}
    assert cayley_eigenvalues("2,1,1", "S", 4)[Label((3, 1))] == Fraction(1, 3)
    for c in character_table("A", 5).cols:
        assert cayley_eigenvalues(c, "A", 5)[Label((5,))] == 1


def test_convolution_eigenvalues_invert_the_class():
    plus, minus = Label((3,), "+"), Label((3,), "-")
    assert convolution_eigenvalues(plus, "A", 3) == cayley_eigenvalues(minus, "A", 3)
    assert convolution_eigenvalues("5+", "A", 5) == cayley_eigenvalues("5+", "A", 5)


def test_convolution_examples():
    rng = random.Random(1)
    g = GroupFunction("S", 3, tuple(Fraction(rng.randint(-3, 3)) for _ in range(6)))
    ones = GroupFunction.constant("S", 3)
    assert convolve(ones, g) == GroupFunction.constant("S", 3, g.expectation())
    delta = GroupFunction.normalized_indicator("S", 3, [identity(3)])
    assert convolve(delta, g) == g
    a3 = [p for p in group_elements("S", 3) if perm_sign(p) == 1]
    h = GroupFunction.normalized_indicator("S", 3, a3)
    assert convolve(h, h) == h


def test_convolution_definition_brute():
    rng = random.Random(5)
    elems = group_elements("S", 4)
    f = GroupFunction("S", 4, tuple(Fraction(rng.randint(-2, 2)) for _ in elems))
    g = GroupFunction("S", 4, tuple(Fraction(rng.randint(-2, 2)) for _ in elems))
    fv, gv = dict(zip(elems, f.values)), dict(zip(elems, g.values))
    direct = tuple(sum(fv[x] * gv[compose(inverse(x), y)] for x in elems) / len(elems) for y in elems)
    assert convolve(f, g).values == direct


def test_isotypic_examples():
    ones = GroupFunction.constant("S", 4)
    for comp in isotypic_decomposition(ones):
        assert comp.projection == (ones if comp.label == Label((4,)) else GroupFunction.constant("S", 4, 0))
    sgn = GroupFunction.from_callable("S", 4, perm_sign)
    assert isotypic_project(sgn, Label((1,) * 4)).projection == sgn


@pytest.mark.parametrize("group,n", [("S", 4), ("A", 4), ("A", 5)])
def test_parseval_and_reconstruction(group, n):
    rng = random.Random(n)
    f = GroupFunction.indicator(group, n, random_subset(group, n, rng))
    comps = isotypic_decomposition(f)
    total = comps[0].projection
    for comp in comps[1:]:
        total = total + comp.projection
    assert total == f
    assert exact_sum(c.norm_sq for c in comps) == f.norm_sq()
    # projections are eigenvectors of the class convolution
    c = character_table(group, n).cols[-1]
    h = GroupFunction.normalized_indicator(group, n, class_members(c, group, n))
    lam = convolution_eigenvalues(c, group, n)
    for comp in comps:
        assert convolve(h, comp.projection) == comp.projection.scale(lam[comp.label])


def test_level_norms():
    ones = GroupFunction.constant("S", 5)
    assert level_projection_norm(ones, 0) == 1
    sgn = GroupFunction.from_callable("S", 5, perm_sign)
    assert level_projection_norm(sgn, 0) == 1 and level_projection_norm(sgn, 1) == 0
    rng = random.Random(2)
    f = GroupFunction.indicator("S", 5, random_subset("S", 5, rng))
    assert sum(level_projection_norm(f, d) for d in range(3)) == f.norm_sq()
    with pytest.raises(ValueError):
        level_projection_norm(f, -1)


def test_pairing_examples():
    s3 = group_elements("S", 3)
    a3 = [p for p in s3 if perm_sign(p) == 1]
    p = independence_pairing(a3, a3, "2,1", "S", 3)
    assert p.direct == p.spectral == 0
    p = independence_pairing(s3, s3, "2,1", "S", 3)
    assert p.direct == p.spectral == 1
    klein = [identity(4)] + [from_cycles(c, 4) for c in ([(1, 2), (3, 4)], [(1, 3), (2, 4)], [(1, 4), (2, 3)])]
    p = independence_pairing(klein, klein, "3,1", "A", 4)
    assert p.direct == p.spectral == 0


@pytest.mark.parametrize("group,n", [("S", 4), ("A", 5)])
def test_pairing_random_sets(group, n):
    rng = random.Random(11)
    for c in character_table(group, n).cols[:-1]:
        I = random_subset(group, n, rng, 0.2)
        J = random_subset(group, n, rng, 0.2)
        assert independence_pairing(I, J, c, group, n).agree


def test_hoffman_examples():
    assert hoffman_bound("2,1", "S", 3) == Fraction(1, 2)
    # Klein cosets give independent sets of size 3 in A_4, so the bound is attained
    assert hoffman_bound("2,2", "A", 4) == Fraction(1, 4)
    assert hoffman_bound("3", "A", 3) == Fraction(1, 3)
    with pytest.raises(ValueError):
        hoffman_bound("1,1,1", "S", 3)


def test_hoffman_is_invariant_under_inversion():
    assert hoffman_bound("3,1+", "A", 4) == hoffman_bound("3,1-", "A", 4) == hoffman_bound("3,1", "A", 4)


def test_spread_report_examples():
    g = group_elements("S", 4)
    rows = spread_projection_report(g, "S", 4, Fraction(1, 10), max_d=1)
    chars = [r for r in rows if r["kind"] == "character"]
    assert all(r["margin"] == "inf" for r in chars if r["label"] != "4")
    a4 = [p for p in g if perm_sign(p) == 1]
    rows = spread_projection_report(a4, "S", 4, Fraction(1, 10), max_d=1)
    sign_row = next(r for r in rows if r["label"] == "1,1,1,1")
    assert float(sign_row["value"]) == 1
    # a 1-umvirate: permutations sending 1 to 2
    u = [p for p in g if p[0] == 1]
    ind = GroupFunction.indicator("S", 4, u)
    level1 = next(r for r in spread_projection_report(u, "S", 4, Fraction(1, 10), max_d=1) if r["label"] == "d=1")
    assert abs(float(level1["value"]) - float(level_projection_norm(ind, 1))) < 1e-12
    # direct projector: mu(1 - mu) split between levels 0, 1 leaves 1/4 - 1/16 = 3/16 on level 1
    assert level_projection_norm(ind, 1) == Fraction(3, 16)


def test_group_range():
    with pytest.raises(ValueError):
        GroupFunction.constant("S", 8)
