from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from lorentz_poly.errors import (
    BadNestingError,
    DegreeDecreaseError,
    DegreeTooSmallError,
    IntervalMismatchError,
    ZeroInsideDiskError,
    ZeroPolynomialError,
)
from lorentz_poly.lorentz import (
    LorentzForm,
    basis_poly,
    elevate,
    from_power,
    lorentz_degree,
    lorentz_from_factors,
    mul_lorentz,
    restrict_interval,
    scale_lorentz,
    to_power,
)
from lorentz_poly.scalar_poly import PowerPoly, from_factors

from conftest import X, polys, rationals

H = F(1, 2)


def L(*cs, a=-1, b=1):
    return LorentzForm(a, b, cs)


def solve_oracle(f, d, a=-1, b=1):
    """Lorentz coefficients by Gaussian elimination on the full basis matrix."""
    cols = [basis_poly(j, d, a, b) for j in range(d + 1)]
    rows = [[cols[j].coeff(k) for j in range(d + 1)] + [f.coeff(k)] for k in range(d + 1)]
    n = d + 1
    for c in range(n):
        piv = next(r for r in range(c, n) if rows[r][c] != 0)
        rows[c], rows[piv] = rows[piv], rows[c]
        for r in range(n):
            if r != c and rows[r][c] != 0:
                t = rows[r][c] / rows[c][c]
                rows[r] = [x - t * y for x, y in zip(rows[r], rows[c])]
    return tuple(rows[i][n] / rows[i][i] for i in range(n))


def degree_oracle(f, cap, a=-1, b=1):
    # either sign is acceptable: without interior zeros f has one sign on (a, b)
    for d in range(f.degree, cap + 1):
        cs = solve_oracle(f, d, a, b)
        if all(c >= 0 for c in cs) or all(c <= 0 for c in cs):
            return d
    return None


# --- conversion ------------------------------------------------------------


def test_to_power_examples():
    assert to_power(L(1, 0)) == X + 1
    assert to_power(L(H, 0, H)) == X * X + 1
    assert to_power(L(F(7, 3))) == PowerPoly([F(7, 3)])


def test_from_power_examples():
    assert from_power(X * X + 1, 2).coeffs == (H, 0, H)
    assert from_power(X + 1, 2).coeffs == (H, H, 0)
    assert from_power(X, 1).coeffs == (H, -H)
    with pytest.raises(DegreeTooSmallError):
        from_power(X**3, 2)


def test_coefficient_convention():
    # coeffs[j] multiplies (b - x)^j (x - a)^(d - j)
    assert to_power(L(0, 1)) == 1 - X
    assert basis_poly(1, 3, 0, 2) == (2 - X) * X * X


def test_lorentz_form_validation():
    with pytest.raises(ValueError):
        LorentzForm(1, 1, (1,))
    with pytest.raises(ValueError):
        LorentzForm(-1, 1, ())


@given(polys(max_degree=10), st.integers(0, 6), rationals(max_num=5, max_den=3), rationals(max_num=5, max_den=3))
def test_round_trip(f, extra, a, b):
    if a == b:
        b = a + 1
    a, b = min(a, b), max(a, b)
    d = max(f.degree, 0) + extra
    Lf = from_power(f, d, a, b)
    assert Lf.d == d
    assert to_power(Lf) == f


@settings(max_examples=60)
@given(polys(max_degree=5), st.integers(0, 3), rationals(max_num=3, max_den=2))
def test_matches_gaussian_elimination(f, extra, a):
    d = f.degree + extra
    assert from_power(f, d, a, a + 2).coeffs == solve_oracle(f, d, a, a + 2)


# --- elevation -------------------------------------------------------------


def test_elevate_examples():
    assert elevate(L(1, 0), 2).coeffs == (H, H, 0)
    assert elevate(L(1), 2).coeffs == (F(1, 4), H, F(1, 4))
    M = L(3, -1, 2)
    assert elevate(M, 2) == M
    with pytest.raises(DegreeDecreaseError):
        elevate(M, 1)


@given(polys(max_degree=8), st.integers(0, 4))
def test_elevation_consistency(f, extra):
    d = f.degree + extra
    assert elevate(from_power(f, d), d + 1) == from_power(f, d + 1)


@given(st.lists(rationals(max_num=9).map(abs), min_size=1, max_size=7), st.integers(1, 10))
def test_elevation_keeps_nonnegativity(cs, k):
    M = L(*cs)
    E = elevate(M, M.d + k)
    assert E.is_nonneg()
    assert to_power(E) == to_power(M)


# --- restriction -----------------------------------------------------------


def test_restrict_example_linear():
    # x + 1 = 2x + (1 - x) on [0, 1]; coeffs[0] goes with (x - 0), coeffs[1] with (1 - x)
    R = restrict_interval(L(1, 0), 0, 1)
    assert R.coeffs == (2, 1)
    assert to_power(R) == X + 1


def test_restrict_same_interval_is_identity():
    M = L(2, F(1, 3), 0, 5)
    assert restrict_interval(M, -1, 1) == M


def test_restrict_constant():
    R = restrict_interval(L(H, H), F(-1, 3), F(1, 2))
    assert to_power(R) == PowerPoly([1])
    assert R.is_nonneg()


def test_restrict_bad_nesting():
    with pytest.raises(BadNestingError):
        restrict_interval(L(1, 1), -2, 0)
    with pytest.raises(BadNestingError):
        restrict_interval(L(1, 1), F(1, 2), F(1, 2))


@given(st.lists(rationals(max_num=9).map(abs), min_size=1, max_size=6),
       rationals(max_num=3, max_den=7), rationals(max_num=3, max_den=7))
def test_restriction_correctness(cs, s, t):
    a, b = F(-2), F(3)
    c, e = sorted((a + (b - a) * abs(s) / 3, a + (b - a) * abs(t) / 3))
    if c == e:
        c, e = (c, c + F(1, 5)) if c < b else (c - F(1, 5), c)
    M = LorentzForm(a, b, tuple(cs))
    R = restrict_interval(M, c, e)
    assert R.interval == (c, e) and R.d == M.d
    assert to_power(R) == to_power(M)
    assert R.is_nonneg()


@pytest.mark.parametrize("a,b,c,e", [(-1, 1, 0, 1), (-3, 2, F(-1, 2), F(1, 3)), (0, 5, 1, 4), (-1, 1, -1, F(1, 7))])
def test_restriction_identities(a, b, c, e):
    # x - a and b - x rewritten on [c, e] with nonnegative weights
    a, b, c, e = map(F, (a, b, c, e))
    w = e - c
    assert (X - a) == ((e - a) * (X - c) + (c - a) * (e - X)) * (1 / w)
    assert (b - X) == ((b - e) * (X - c) + (b - c) * (e - X)) * (1 / w)
    assert min(e - a, c - a, b - e, b - c) >= 0


# --- products and factor forms ---------------------------------------------


def test_mul_lorentz_examples():
    assert mul_lorentz(L(1, 0), L(0, 1)).coeffs == (0, 1, 0)
    M = L(2, 3)
    assert mul_lorentz(M, L(1)) == M
    assert mul_lorentz(L(1, 0), L(1, 0)).coeffs == (1, 0, 0)
    with pytest.raises(IntervalMismatchError):
        mul_lorentz(L(1, 0), L(1, 0, a=0))


def test_scale_lorentz():
    assert to_power(scale_lorentz(L(1, 2), 3)) == 3 * to_power(L(1, 2))


def test_from_factors_examples():
    form, sign = lorentz_from_factors(from_factors([(1, 1)], [], -1))
    assert form.coeffs == (0, 1) and sign == 1  # 1 - x is the (b - x) basis element
    form, sign = lorentz_from_factors(from_factors([], [((0, 1), 1)]))
    assert form.coeffs == (H, 0, H)
    form, _ = lorentz_from_factors(from_factors([], [((0, 2), 1)]))
    assert form.coeffs == (F(5, 4), F(3, 2), F(5, 4))
    assert to_power(form) == X * X + 4


def test_from_factors_sign():
    f = from_factors([(2, 1), (-3, 2)], [((F(1, 2), 1), 1)], F(-2, 3))
    form, sign = lorentz_from_factors(f)
    assert form.is_nonneg()
    assert sign * to_power(form) == f
    assert sign == 1  # -(2/3)(x - 2) > 0 on (-1, 1)


def test_from_factors_rejects_inner_roots():
    with pytest.raises(ZeroInsideDiskError):
        lorentz_from_factors(from_factors([(F(1, 2), 1)]))
    with pytest.raises(ZeroInsideDiskError):
        lorentz_from_factors(from_factors([], [((F(1, 2), F(1, 2)), 1)]))


@pytest.mark.parametrize("re, im", [(0, 1), (F(3, 5), F(4, 5)), (2, 1), (F(-1, 3), 3), (F(7, 2), F(1, 9))])
def test_quadratic_identity(re, im):
    re, im = F(re), F(im)
    mod2 = re * re + im * im
    q = X * X - 2 * re * X + mod2
    lhs = ((1 + re) ** 2 + im**2) / 4 * (1 - X) ** 2 + (mod2 - 1) / 2 * (1 - X * X) \
        + ((1 - re) ** 2 + im**2) / 4 * (X + 1) ** 2
    assert lhs == q


@pytest.mark.parametrize("r", [1, -1, 2, F(-7, 3), F(5, 4)])
def test_linear_identity(r):
    r = F(r)
    assert X - r == (1 - r) / 2 * (X + 1) - (r + 1) / 2 * (1 - X)


real_root = st.builds(lambda s, m: s * (1 + m), st.sampled_from([1, -1]), rationals(max_num=6, max_den=4).map(abs))


@st.composite
def pair_root(draw):
    re = draw(rationals(max_num=8, max_den=4))
    im = draw(rationals(max_num=8, max_den=4, nonzero=True).map(abs))
    if re * re + im * im < 1:
        im = 1 + im
    return re, im


@given(st.lists(st.tuples(real_root, st.integers(1, 2)), max_size=4),
       st.lists(st.tuples(pair_root(), st.integers(1, 2)), max_size=2),
       rationals(nonzero=True))
def test_factor_forms_match_from_power(reals, pairs, lead):
    f = from_factors(reals, pairs, lead)
    form, sign = lorentz_from_factors(f)
    assert form.is_nonneg() and form.d == f.degree
    assert from_power(sign * f, f.degree) == form


# --- Lorentz degree --------------------------------------------------------


def test_degree_examples():
    r = lorentz_degree(X * X + 1)
    assert r.outcome == "finite" and r.d == 2 and str(r) == "finite 2"
    assert lorentz_degree(X).outcome == "infinite"
    assert str(lorentz_degree(X)) == "infinite"
    for n in range(1, 7):
        assert lorentz_degree((X + 1) ** n).d == n
    r = lorentz_degree(X * X + F(1, 100))
    assert r.outcome == "finite" and r.d > 2
    assert r.d == 101


def test_degree_of_square_is_four():
    assert lorentz_degree((X * X + 1) ** 2).d == 4


def test_degree_sign_normalization():
    r = lorentz_degree(-(X * X) - 1)
    assert r.d == 2 and r.sign == -1
    assert to_power(r.form) == X * X + 1


def test_degree_unknown_and_errors():
    r = lorentz_degree(X * X + F(1, 100), cap=50)
    assert r.outcome == "unknown" and str(r) == "unknown (cap 50 reached)"
    with pytest.raises(ZeroPolynomialError):
        lorentz_degree(PowerPoly([]))
    with pytest.raises(ValueError):
        lorentz_degree(X**3 + 2, cap=2)


def test_degree_endpoint_roots_are_finite():
    assert lorentz_degree((X + 1) * (1 - X)).d == 2
    assert lorentz_degree(X - 1).d == 1


def test_degree_minimality():
    for f in [X * X + F(1, 4), (X - F(1, 2)) ** 2 + F(1, 9), X**4 + F(1, 2)]:
        r = lorentz_degree(f)
        assert r.outcome == "finite" and r.d > f.degree
        assert r.form.is_nonneg()
        assert not from_power(f, r.d - 1).is_nonneg()


def test_degree_on_other_interval():
    # x has no zero in (1, 3) and is a nonnegative form of degree 1 there
    assert lorentz_degree(X, 1, 3).d == 1
    assert lorentz_degree(X, -1, 3).outcome == "infinite"


@settings(max_examples=25)
@given(polys(max_degree=4))
def test_degree_matches_oracle(f):
    cap = 30
    if f.degree < 1:
        return
    r = lorentz_degree(f, cap=cap)
    if r.outcome == "infinite":
        assert degree_oracle(f, cap) is None
        return
    expected = degree_oracle(f, cap)
    if expected is None:
        assert r.outcome == "unknown"
    else:
        assert r.outcome == "finite" and r.d == expected
