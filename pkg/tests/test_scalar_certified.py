import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from symcover.certified import LogLinear, factorize, ford_bound_lower, power_sum
from symcover.scalar import AlgebraicScalar, exact_sum, scalar_from_json, scalar_json, squarefree_decomposition

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=30)


def test_squarefree():
    assert squarefree_decomposition(12) == (2, 3)
    assert squarefree_decomposition(-27) == (3, -3)
    assert squarefree_decomposition(1) == (1, 1)


def test_normalisation():
    assert AlgebraicScalar.sqrt(4) == AlgebraicScalar(Fraction(2))
    assert AlgebraicScalar(Fraction(1), Fraction(1), 8) == AlgebraicScalar(Fraction(1), Fraction(2), 2)
    assert AlgebraicScalar(Fraction(3), Fraction(0), 5).d == 0
    with pytest.raises(ValueError):
        AlgebraicScalar(Fraction(0), Fraction(1), 0)


@given(rationals, rationals, rationals, rationals, st.sampled_from([-3, -1, 2, 5, 21]))
def test_field_operations(a, b, c, e, d):
    x = AlgebraicScalar(a, b, d) if b else AlgebraicScalar(a)
    y = AlgebraicScalar(c, e, d) if e else AlgebraicScalar(c)
    assert (x + y) - y == x
    assert x * y == y * x
    if y != 0:
        assert (x / y) * y == x
    if d > 0:
        assert math.isclose(float(x * y), float(x) * float(y), rel_tol=1e-9, abs_tol=1e-9)


def test_ordering_on_real_surds():
    root2 = AlgebraicScalar.sqrt(2)
    assert root2 > Fraction(141, 100) and root2 < Fraction(142, 100)
    assert -root2 < 0
    assert min([root2, Fraction(3, 2), 1 - root2]) == 1 - root2


def test_complex_conjugate_of_cube_root_of_unity():
    omega = AlgebraicScalar(Fraction(-1, 2), Fraction(1, 2), -3)
    assert omega * omega * omega == 1
    assert omega + omega.complex_conjugate() == -1
    assert omega * omega.complex_conjugate() == 1


def test_exact_sum_mixed_radicands():
    r2, r3 = AlgebraicScalar.sqrt(2), AlgebraicScalar.sqrt(3)
    assert exact_sum([r2, r3, -r3, Fraction(1)]) == 1 + r2
    with pytest.raises(ArithmeticError):
        exact_sum([r2, r3])


def test_json_roundtrip():
    for v in (Fraction(3), Fraction(-2, 7), AlgebraicScalar(Fraction(1, 2), Fraction(-3, 2), 5)):
        assert scalar_from_json(scalar_json(v)) == AlgebraicScalar.coerce(v)
    assert scalar_json(Fraction(4, 2)) == "2"


def test_factorize():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert factorize(1) == {}


def test_loglinear_exact_values():
    assert LogLinear.log(10, 10).exact_value() == 1
    assert LogLinear.log(4, 2).exact_value() == Fraction(1, 2)
    assert LogLinear.log(8, 4).exact_value() == Fraction(2, 3)
    assert LogLinear.log(10, 5).exact_value() is None


@pytest.mark.parametrize("base,x", [(10, 5), (7, 3), (30, 29), (12, 18)])
def test_loglinear_interval_encloses_and_is_narrow(base, x):
    lo, hi = LogLinear.log(base, x).certified_interval(Fraction(1, 10**14))
    assert hi - lo <= Fraction(1, 10**14)
    assert lo <= Fraction(math.log(x) / math.log(base)) * (1 + Fraction(1, 10**13))
    assert hi >= Fraction(math.log(x) / math.log(base)) * (1 - Fraction(1, 10**13))


def test_loglinear_comparisons():
    a = LogLinear.log(10, 5)
    b = LogLinear.log(10, 2)
    assert a + b == 1
    assert a > b and b < Fraction(1, 2) < a
    assert (a * 2 - LogLinear.log(10, 25)).sign() == 0
    with pytest.raises(ValueError):
        _ = a + LogLinear.log(9, 2)


def test_ford_bound_small_cases():
    # m = 1: (2 log n)^0 / 0! = 1
    assert ford_bound_lower(7, 1) <= 1
    assert ford_bound_lower(7, 1) > 1 - Fraction(1, 10**12)
    approx = 2 * math.log(20)
    assert math.isclose(float(ford_bound_lower(20, 3)), approx**2 / 2, rel_tol=1e-12)


def test_power_sum():
    lo, hi = power_sum([(1, 2), (4, 1)], Fraction(1, 2), Fraction(1, 10**15))
    assert lo <= Fraction(5, 2) <= hi
