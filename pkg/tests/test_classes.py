from fractions import Fraction as F

import pytest

from lorentz_poly.classes import (
    KINDS,
    ClassTag,
    Membership,
    in_lorentz_class,
    membership,
    monotone_on_interval,
    real_zeros_outside_interval,
    sample,
    zeros_outside_open_disk,
)
from lorentz_poly.errors import ZeroPolynomialError
from lorentz_poly.lorentz import lorentz_from_factors
from lorentz_poly.scalar_poly import PowerPoly, derivative, from_factors

from conftest import X


def test_class_tag_aliases_and_validation():
    assert ClassTag("deriv-disk", 3).kind == "deriv-zeros-outside-disk"
    assert ClassTag("pn0", 2).kind == "zeros-outside-disk"
    with pytest.raises(ValueError):
        ClassTag("nonsense", 2)
    with pytest.raises(ValueError):
        ClassTag("lorentz", -1)


def test_constructive_is_never_indeterminate():
    with pytest.raises(ValueError):
        Membership("indeterminate", "constructive")


def test_in_lorentz_class_examples():
    assert in_lorentz_class((X + 1) ** 2, 2).yes
    assert in_lorentz_class(X, 1).verdict == "no"
    assert in_lorentz_class(X * X + 1, 2).yes
    assert in_lorentz_class(X**3, 2).verdict == "no"
    assert all(in_lorentz_class(X * X + 1, d).basis == "constructive" for d in (1, 2, 5))


def test_zeros_outside_disk_examples():
    m = zeros_outside_open_disk(from_factors([(-1, 4)]))
    assert m.yes and m.basis == "constructive" and m.margin == 0
    assert zeros_outside_open_disk(X * X + F(1, 4)).verdict == "no"
    m = zeros_outside_open_disk(X * X + 1)
    assert m.yes and m.basis == "constructive"
    with pytest.raises(ZeroPolynomialError):
        zeros_outside_open_disk(PowerPoly([]))


@pytest.mark.parametrize(
    "f, verdict",
    [
        ((X + 1) ** 3, "yes"),
        (X * X + X + 1, "yes"),  # primitive cube roots of unity
        (X**4 + 1, "yes"),
        ((X * X + 4) * (X * X + F(1, 4)), "no"),  # reciprocal pair straddling the circle
        ((X - 2) * (X - F(1, 2)), "no"),
        (X * (X - 3), "no"),
        ((X * X + 1) ** 2 * (X + 3), "yes"),
        (X**5 - 5 * X**4 + X - 5, "yes"),
        (X + F(1, 2), "no"),
        (PowerPoly([7]), "yes"),
    ],
)
def test_zeros_outside_disk_without_factor_list(f, verdict):
    assert zeros_outside_open_disk(PowerPoly(f.coeffs)).verdict == verdict


def test_zeros_outside_disk_factor_path():
    f = from_factors([(F(1, 2), 1)])
    m = zeros_outside_open_disk(f)
    assert m.verdict == "no" and m.basis == "constructive"
    g = from_factors([], [((F(3, 5), F(4, 5)), 1)])
    assert zeros_outside_open_disk(g).yes


def test_real_zeros_outside_examples():
    assert real_zeros_outside_interval((X - 1) * (X + 2)).yes
    assert real_zeros_outside_interval(X * X + 1).verdict == "no"
    assert real_zeros_outside_interval((X - F(1, 2)) * (X - 2)).verdict == "no"
    assert real_zeros_outside_interval(PowerPoly([3])).yes


def test_monotone_examples():
    assert monotone_on_interval(X**3).yes
    assert monotone_on_interval(X * X).verdict == "no"
    for n in range(1, 6):
        assert monotone_on_interval((X + 1) ** n).yes
    assert monotone_on_interval(-(X**3) + 2).yes


def test_membership_dispatch():
    f = (X + 1) ** 3 - 4
    assert membership(ClassTag("deriv-lorentz", 3), f).yes
    assert membership(ClassTag("deriv-disk", 3), f).yes
    assert membership(ClassTag("monotone-real", 3), f).verdict == "no"  # zero inside (-1, 1)
    assert membership(ClassTag("monotone", 3), f).yes
    assert membership(ClassTag("lorentz", 2), f).verdict == "no"  # degree too high


def test_sampling_is_deterministic():
    for kind in KINDS:
        a = sample(ClassTag(kind, 5), seed=11)
        b = sample(ClassTag(kind, 5), seed=11)
        assert a.poly == b.poly


@pytest.mark.parametrize("kind", KINDS)
def test_generator_predicate_closure(kind):
    ns = range(2, 13)
    for n in ns:
        tag = ClassTag(kind, n)
        for seed in range(60):
            s = sample(tag, seed=seed)
            assert s.poly.degree <= n
            m = membership(tag, s.poly, s.evidence)
            assert m.yes, (kind, n, seed, s.poly)


def test_sample_examples():
    s = sample(ClassTag("lorentz", 3), seed=0)
    assert in_lorentz_class(s.poly, 3).yes
    for seed in range(20):
        s = sample(ClassTag("deriv-disk", 4), seed=seed)
        assert zeros_outside_open_disk(s.evidence).yes
        assert s.evidence == derivative(s.poly)
        s = sample(ClassTag("monotone-real", 2), seed=seed)
        assert monotone_on_interval(s.poly).yes and real_zeros_outside_interval(s.poly).yes


def test_disk_samples_admit_signed_lorentz_forms():
    for seed in range(200):
        f = sample(ClassTag("disk", 1 + seed % 10), seed=seed).poly
        form, sign = lorentz_from_factors(f)
        assert in_lorentz_class(sign * f, f.degree).yes


def test_rolle_consistency():
    for seed in range(150):
        f = sample(ClassTag("monotone-real", 2 + seed % 8), seed=seed).poly
        if f.degree >= 2:
            assert real_zeros_outside_interval(derivative(f)).yes


def test_numeric_path_agrees_with_factors():
    for seed in range(200):
        s = sample(ClassTag("disk", 2 + seed % 8), seed=seed)
        fac = s.poly.factors
        moduli = [abs(r) for r, _ in fac.real_roots] + [(re * re + im * im) for (re, im), _ in fac.complex_pairs]
        if moduli and min(abs(m - 1) for m in moduli) > F(1, 10**6):
            plain = PowerPoly(s.poly.coeffs)
            assert zeros_outside_open_disk(plain).verdict == zeros_outside_open_disk(s.poly).verdict
