from fractions import Fraction as F
import math

import pytest
from hypothesis import given, strategies as st

from lorentz_poly.scalar_poly import (
    PowerPoly,
    add,
    chebyshev_T,
    count_roots_in,
    count_real_roots_with_multiplicity,
    derivative,
    evaluate,
    from_factors,
    mul,
    scale,
    squarefree_decomposition,
    sturm_isolate,
    taylor_shift,
)

from conftest import X, polys, rationals


def test_polys_are_normalized():
    f = PowerPoly([1, 2, 0, 0])
    assert f.coeffs == (1, 2)
    assert f.degree == 1
    assert PowerPoly([0, 0]).degree == -1
    assert PowerPoly([]).is_zero()


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        PowerPoly([0.5])


def test_immutable():
    f = X + 1
    with pytest.raises(AttributeError):
        f.coeffs = (1,)


@pytest.mark.parametrize(
    "f, x, expected",
    [
        (X * X + 1, 0, 1),
        ((X + 1) ** 3 - 4, 1, 4),
        (PowerPoly([]), F(7, 3), 0),
    ],
)
def test_evaluate(f, x, expected):
    assert evaluate(f, x) == expected


def test_derivative_examples():
    assert derivative(X * X + 1) == 2 * X
    assert derivative(PowerPoly([5])).is_zero()
    assert derivative((X + 1) ** 3 - 4) == 3 * (X + 1) ** 2


def test_mul_examples():
    assert mul(X + 1, X - 1) == X * X - 1
    f = X**3 - F(2, 3) * X
    assert mul(f, PowerPoly([1])) == f
    assert from_factors([], [((0, 1), 1)]) == X * X + 1


def test_from_factors_examples():
    assert from_factors([(-1, 2)]) == X * X + 2 * X + 1
    assert from_factors([], [((0, 1), 1)]) == X * X + 1
    g = from_factors([(2, 1)], [((0, 1), 1)], 3)
    assert g == PowerPoly([-6, 3, -6, 3])
    assert g.factors.real_roots == ((2, 1),)
    assert g.factors.leading == 3
    with pytest.raises(ValueError):
        from_factors([(1, 1)], [], 0)


def test_chebyshev_examples():
    assert chebyshev_T(0) == PowerPoly([1])
    assert chebyshev_T(2) == 2 * X * X - 1
    assert chebyshev_T(4) == 8 * X**4 - 8 * X**2 + 1


@pytest.mark.parametrize("n", [1, 3, 6, 9])
def test_chebyshev_bounded_and_equioscillating(n):
    T = chebyshev_T(n).to_floats()
    for i in range(101):
        x = -1 + 2 * i / 100
        assert abs(sum(c * x**k for k, c in enumerate(T))) <= 1 + 1e-12
    for k in range(n + 1):
        x = math.cos(k * math.pi / n)
        assert abs(abs(sum(c * x**j for j, c in enumerate(T))) - 1) < 1e-9


def test_sturm_isolate_examples():
    brs = sturm_isolate(X * X - F(1, 4), (-1, 1))
    assert len(brs) == 2
    assert brs[0].lo < F(-1, 2) < brs[0].hi or brs[0].root == F(-1, 2)
    assert brs[1].lo < F(1, 2) < brs[1].hi or brs[1].root == F(1, 2)
    assert sturm_isolate(X * X + 1) == []
    assert sturm_isolate((X - 2) ** 2, (-1, 1)) == []


def test_count_roots_examples():
    assert count_roots_in(X * X - F(1, 4), (-1, 1)) == 2
    assert count_roots_in((X + 1) ** 3, (-1, 1)) == 0
    assert count_roots_in(X * X + 1, (-1, 1)) == 0


def test_multiplicity_parity():
    f = from_factors([(0, 2), (F(1, 3), 3)])
    brs = sturm_isolate(f, (-1, 1))
    parities = sorted(b.multiplicity_parity for b in brs)
    assert parities == ["even", "odd"]
    assert count_real_roots_with_multiplicity(f) == 5


def test_squarefree_decomposition():
    f = from_factors([(1, 1), (2, 2), (-3, 3)], [((0, 1), 2)])
    parts = squarefree_decomposition(f)
    assert parts[0] == X - 1
    assert parts[1] == mul(X - 2, X * X + 1)
    assert parts[2] == X + 3


@given(polys(), polys(), st.lists(rationals(), min_size=20, max_size=20))
def test_mul_is_pointwise(f, g, xs):
    h = mul(f, g)
    assert h.degree == f.degree + g.degree
    for x in xs:
        assert evaluate(h, x) == evaluate(f, x) * evaluate(g, x)


@given(polys(), polys())
def test_product_rule(f, g):
    assert derivative(mul(f, g)) == add(mul(derivative(f), g), mul(f, derivative(g)))


@given(polys(), rationals(), rationals())
def test_scale_and_shift(f, c, h):
    assert evaluate(scale(f, c), h) == c * evaluate(f, h)
    assert evaluate(taylor_shift(f, h), 0) == evaluate(f, h)


@given(
    st.lists(st.tuples(rationals(max_num=12, max_den=4), st.integers(1, 3)), max_size=5, unique_by=lambda t: t[0]),
    st.lists(st.tuples(st.tuples(rationals(), rationals(nonzero=True)), st.just(1)), max_size=2),
    rationals(nonzero=True),
    rationals(max_num=4, max_den=3),
    rationals(max_num=4, max_den=3),
)
def test_sturm_matches_constructed_roots(reals, pairs, lead, lo, hi):
    if lo >= hi:
        lo, hi = hi - 1, lo + 1
    f = from_factors(reals, pairs, lead)
    inside = [r for r, _ in reals if lo < r < hi]
    assert count_roots_in(f, (lo, hi)) == len(inside)
    assert len(sturm_isolate(f, (lo, hi))) == len(inside)
    assert len(sturm_isolate(f)) == len(reals)
    assert count_real_roots_with_multiplicity(f) == sum(m for _, m in reals)


@given(st.lists(rationals(max_num=6, max_den=5), min_size=1, max_size=6, unique=True))
def test_brackets_are_disjoint_and_hold_one_root(roots):
    f = from_factors([(r, 1) for r in roots])
    brs = sturm_isolate(f)
    assert len(brs) == len(roots)
    for a, b in zip(brs, brs[1:]):
        assert a.hi <= b.lo
    for br, r in zip(brs, sorted(roots)):
        assert br.root == r or br.lo < r < br.hi
