"""Membership predicates and seeded generators for the constrained classes.

Classes (``ClassTag.kind``):

* ``lorentz-nonneg``: nonnegative degree-n Lorentz form on [-1, 1]
* ``zeros-outside-disk``: real polynomials of degree <= n, no zeros with |z| < 1
* ``deriv-lorentz``: f' is a nonnegative degree-(n-1) Lorentz form
* ``deriv-zeros-outside-disk``: f' has no zeros with |z| < 1
* ``real-zeros-outside``: all zeros real and outside (-1, 1)
* ``monotone-real-zeros-outside``: the previous class, also monotone on [-1, 1]
* ``monotone-only``: monotone on [-1, 1]; used as a negative control
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import RejectionBudgetExceededError, ZeroPolynomialError
from .lorentz import LorentzForm, from_power, to_power
from .scalar_poly import (
    PowerPoly,
    RationalLike,
    antiderivative,
    as_rational,
    count_real_roots_with_multiplicity,
    count_roots_in,
    derivative,
    evaluate,
    exact_div,
    from_factors,
    poly_gcd,
    squarefree_decomposition,
    squarefree_part,
)

KINDS = (
    "lorentz-nonneg",
    "zeros-outside-disk",
    "deriv-lorentz",
    "deriv-zeros-outside-disk",
    "real-zeros-outside",
    "monotone-real-zeros-outside",
    "monotone-only",
)

ALIASES = {
    "lorentz": "lorentz-nonneg",
    "disk": "zeros-outside-disk",
    "pn0": "zeros-outside-disk",
    "deriv-disk": "deriv-zeros-outside-disk",
    "monotone-real": "monotone-real-zeros-outside",
    "monotone": "monotone-only",
}

NUMERIC_MARGIN = 1e-9
REJECTION_BUDGET = 10**4


@dataclass(frozen=True)
class ClassTag:
    kind: str
    n: int

    def __post_init__(self):
        kind = ALIASES.get(self.kind, self.kind)
        if kind not in KINDS:
            raise ValueError(f"unknown class {self.kind!r}; expected one of {', '.join(KINDS)}")
        object.__setattr__(self, "kind", kind)
        if self.n < 0:
            raise ValueError("class degree must be nonnegative")

    def __str__(self) -> str:
        return f"{self.kind}({self.n})"


@dataclass(frozen=True)
class Membership:
    verdict: str  # "yes" | "no" | "indeterminate"
    basis: str  # "constructive" | "numeric"
    margin: Optional[float] = None

    def __post_init__(self):
        if self.basis == "constructive" and self.verdict == "indeterminate":
            raise ValueError("constructive membership cannot be indeterminate")

    @property
    def yes(self) -> bool:
        return self.verdict == "yes"


YES = Membership("yes", "constructive")
NO = Membership("no", "constructive")


# ---------------------------------------------------------------------------
# predicates


def lorentz_coefficients(f: PowerPoly, d: int, a: RationalLike = -1, b: RationalLike = 1) -> Optional[LorentzForm]:
    if f.degree > d:
        return None
    return from_power(f, d, a, b)


def in_lorentz_class(f: PowerPoly, d: int, a: RationalLike = -1, b: RationalLike = 1) -> Membership:
    L = lorentz_coefficients(f, d, a, b)
    return YES if L is not None and L.is_nonneg() else NO


def _disk_margin_from_factors(f: PowerPoly) -> Membership:
    fac = f.factors
    margins = []
    inside = False
    for r, _ in fac.real_roots:
        inside |= abs(r) < 1
        margins.append(abs(abs(float(r)) - 1))
    for (re, im), _ in fac.complex_pairs:
        mod2 = re * re + im * im
        inside |= mod2 < 1
        margins.append(abs(math.sqrt(float(mod2)) - 1))
    margin = min(margins) if margins else None
    return Membership("no" if inside else "yes", "constructive", margin)


def zeros_outside_open_disk(f: PowerPoly) -> Membership:
    """Are all complex zeros of f in |z| >= 1?

    Exact when f carries a factor list; otherwise companion-matrix eigenvalues
    decide with a margin of 1e-9 around the unit circle.
    """
    if f.is_zero():
        raise ZeroPolynomialError("the zero polynomial vanishes everywhere")
    if f.factors is not None:
        return _disk_margin_from_factors(f)
    if f.degree == 0:
        return YES
    g = squarefree_part(f)
    if evaluate(g, 0) == 0:
        return Membership("no", "constructive", 1.0)
    # roots at +-1 sit on the circle
    for r in (1, -1):
        if evaluate(g, r) == 0:
            g = exact_div(g, PowerPoly.linear(r))
    # every circle root is shared with the reciprocal polynomial; the shared
    # factor is palindromic and is settled exactly
    h = poly_gcd(g, PowerPoly(reversed(g.coeffs)))
    if h.degree > 0:
        if not _palindromic_roots_on_circle(h):
            return Membership("no", "constructive", 0.0)
        g = exact_div(g, h)
    if g.degree == 0:
        return Membership("yes", "constructive", 0.0 if h.degree > 0 else None)
    roots = np.roots([float(c) for c in reversed(g.coeffs)])
    mods = np.abs(roots)
    margin = float(np.min(np.abs(mods - 1)))
    if h.degree > 0:
        margin = 0.0
    if np.all(mods >= 1 + NUMERIC_MARGIN):
        return Membership("yes", "numeric", margin)
    if np.any(mods <= 1 - NUMERIC_MARGIN):
        return Membership("no", "numeric", margin)
    return Membership("indeterminate", "numeric", margin)


def _palindromic_roots_on_circle(h: PowerPoly) -> bool:
    """All roots of a palindromic h (no roots at 0, +-1) lie on |z| = 1.

    Writes h(z) = z^m H(z + 1/z); the roots are on the circle exactly when H
    has m real roots, counted with multiplicity, in (-2, 2).
    """
    # the root set is closed under z -> 1/z and avoids +-1, so monic h is
    # palindromic of even degree
    cs = h.monic().coeffs
    if len(cs) % 2 == 0 or tuple(reversed(cs)) != cs:
        raise ArithmeticError("shared reciprocal factor is not palindromic")
    m = (len(cs) - 1) // 2
    t = PowerPoly([0, 1])
    dickson = [PowerPoly([2]), t]
    for _ in range(m - 1):
        dickson.append(t * dickson[-1] - dickson[-2])
    H = PowerPoly([cs[m]])
    for k in range(1, m + 1):
        H = H + cs[m + k] * dickson[k]
    return count_real_roots_with_multiplicity(H, (-2, 2)) == m


def real_zeros_outside_interval(f: PowerPoly) -> Membership:
    """All zeros of f real and none in (-1, 1); decided by Sturm counts."""
    if f.is_zero():
        raise ZeroPolynomialError("the zero polynomial vanishes everywhere")
    if f.degree == 0:
        return YES
    if count_real_roots_with_multiplicity(f) != f.degree:
        return NO
    return NO if count_roots_in(f, (-1, 1)) else YES


def monotone_on_interval(f: PowerPoly) -> Membership:
    """f' has no odd-multiplicity root inside (-1, 1)."""
    df = derivative(f)
    if df.degree <= 0:
        return YES
    for i, part in enumerate(squarefree_decomposition(df), start=1):
        if i % 2 and part.degree > 0 and count_roots_in(part, (-1, 1)):
            return NO
    return YES


def _with_evidence(target: PowerPoly, evidence: Optional[PowerPoly]) -> PowerPoly:
    if evidence is not None and evidence.factors is not None and evidence == target:
        return evidence
    return target


def membership(tag: ClassTag, f: PowerPoly, evidence: Optional[PowerPoly] = None) -> Membership:
    """Class predicate for ``tag``.

    ``evidence`` may be a factor-carrying copy of f (or of f' for the
    derivative classes); it is only used after checking it equals the target.
    """
    n = tag.n
    kind = tag.kind
    if f.is_zero():
        return NO
    if kind == "lorentz-nonneg":
        return in_lorentz_class(f, n)
    if kind == "deriv-lorentz":
        if f.degree > n:
            return NO
        return in_lorentz_class(derivative(f), max(n - 1, 0))
    if f.degree > n:
        return NO
    if kind == "zeros-outside-disk":
        return zeros_outside_open_disk(_with_evidence(f, evidence))
    if kind == "deriv-zeros-outside-disk":
        df = derivative(f)
        if df.is_zero():
            return NO
        return zeros_outside_open_disk(_with_evidence(df, evidence))
    if kind == "real-zeros-outside":
        return real_zeros_outside_interval(f)
    if kind == "monotone-real-zeros-outside":
        if f.degree < 1:
            return NO
        m = monotone_on_interval(f)
        return real_zeros_outside_interval(f) if m.yes else m
    if kind == "monotone-only":
        return monotone_on_interval(f) if f.degree >= 1 else NO
    raise AssertionError(kind)


# ---------------------------------------------------------------------------
# generators


@dataclass
class Sample:
    tag: ClassTag
    seed: int
    poly: PowerPoly
    evidence: Optional[PowerPoly] = None  # factor-carrying f or f'
    form: Optional[LorentzForm] = field(default=None, repr=False)  # nonneg form of f or f'
    params: Optional[dict] = field(default=None, repr=False)  # construction data not kept elsewhere


def _small_pos(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 20), rng.randint(1, 8))


def _nonneg_coeff(rng: random.Random) -> Fraction:
    return Fraction(0) if rng.random() < 1 / 3 else _small_pos(rng)


def _signed(rng: random.Random) -> Fraction:
    c = _small_pos(rng)
    return c if rng.random() < 0.5 else -c


def _random_constant(rng: random.Random, g_anti: PowerPoly) -> Fraction:
    # a third of the draws centre f so that f(1) = -f(-1): the extremal situation
    if rng.random() < 1 / 3:
        return -(evaluate(g_anti, 1) + evaluate(g_anti, -1)) / 2
    return Fraction(rng.randint(-40, 40), rng.randint(1, 8))


def _lorentz_form(rng: random.Random, d: int, a: Fraction = Fraction(-1), b: Fraction = Fraction(1)) -> LorentzForm:
    cs = [_nonneg_coeff(rng) for _ in range(d + 1)]
    if not any(cs):
        cs[rng.randrange(d + 1)] = _small_pos(rng)
    return LorentzForm(a, b, tuple(cs))


def _real_root(rng: random.Random) -> Fraction:
    sign = 1 if rng.random() < 0.5 else -1
    if rng.random() < 0.5:
        return Fraction(sign)
    modulus = Fraction(math.exp(rng.uniform(0, math.log(4)))).limit_denominator(16)
    return sign * max(modulus, Fraction(1))


def _complex_root(rng: random.Random) -> tuple[Fraction, Fraction]:
    if rng.random() < 0.5:
        # rational point on the unit circle: ((1-t^2), 2t) / (1+t^2)
        t = Fraction(rng.randint(1, 12), rng.randint(1, 12))
        re = (1 - t * t) / (1 + t * t)
        im = 2 * t / (1 + t * t)
        return (re if rng.random() < 0.5 else -re), im
    while True:
        radius = math.exp(rng.uniform(0, math.log(4)))
        theta = rng.uniform(0.05, math.pi - 0.05)
        re = Fraction(radius * math.cos(theta)).limit_denominator(16)
        im = Fraction(radius * math.sin(theta)).limit_denominator(16)
        if im != 0 and re * re + im * im >= 1:
            return re, im


def _disk_factors(rng: random.Random, degree: int, real_only: bool):
    real_roots, pairs = [], []
    remaining = degree
    while remaining > 0:
        if real_roots and rng.random() < 0.25:
            r, _ = real_roots[-1]
            real_roots.append((r, 1))
            remaining -= 1
        elif not real_only and remaining >= 2 and rng.random() < 0.5:
            pairs.append((_complex_root(rng), 1))
            remaining -= 2
        else:
            real_roots.append((_real_root(rng), 1))
            remaining -= 1
    return real_roots, pairs


def _disk_poly(rng: random.Random, n: int, real_only: bool = False) -> PowerPoly:
    degree = n if rng.random() < 5 / 6 or n == 0 else rng.randint(0, n - 1)
    real_roots, pairs = _disk_factors(rng, degree, real_only)
    return from_factors(real_roots, pairs, _signed(rng))


def sample(tag: ClassTag, n: Optional[int] = None, seed: int = 0) -> Sample:
    """Draw a polynomial from ``tag``'s class; identical seeds give identical draws."""
    if n is not None:
        tag = ClassTag(tag.kind if isinstance(tag, ClassTag) else tag, n)
    elif not isinstance(tag, ClassTag):
        raise ValueError("need a ClassTag or an explicit degree")
    n = tag.n
    rng = random.Random(seed)
    kind = tag.kind
    if kind == "lorentz-nonneg":
        L = _lorentz_form(rng, n)
        return Sample(tag, seed, to_power(L), form=L)
    if kind == "zeros-outside-disk":
        f = _disk_poly(rng, n)
        return Sample(tag, seed, f, evidence=f)
    if kind == "real-zeros-outside":
        f = _disk_poly(rng, n, real_only=True)
        return Sample(tag, seed, f, evidence=f)
    if kind == "deriv-lorentz":
        if n < 1:
            raise ValueError("derivative classes need n >= 1")
        L = _lorentz_form(rng, n - 1)
        g = antiderivative(to_power(L))
        return Sample(tag, seed, g + _random_constant(rng, g), form=L)
    if kind == "deriv-zeros-outside-disk":
        if n < 1:
            raise ValueError("derivative classes need n >= 1")
        dg = _disk_poly(rng, n - 1)
        g = antiderivative(dg)
        return Sample(tag, seed, g + _random_constant(rng, g), evidence=dg)
    if kind == "monotone-real-zeros-outside":
        if n < 1:
            raise ValueError("monotone classes need n >= 1")
        for _ in range(REJECTION_BUDGET):
            f = _disk_poly(rng, n, real_only=True)
            if f.degree >= 1 and monotone_on_interval(f).yes:
                return Sample(tag, seed, f, evidence=f)
        raise RejectionBudgetExceededError(f"no monotone draw for {tag} in {REJECTION_BUDGET} tries")
    if kind == "monotone-only":
        if n < 1:
            raise ValueError("monotone classes need n >= 1")
        k = rng.randint(0, (n - 1) // 2)
        s = PowerPoly([_signed(rng) for _ in range(k + 1)])
        L = _lorentz_form(rng, n - 1 - 2 * k)
        df = s * s * to_power(L)
        sign = -1 if rng.random() < 0.5 else 1
        g = antiderivative(sign * df)
        f = g + _random_constant(rng, g)
        return Sample(tag, seed, f, params={"s": s.coeffs, "form": L, "sign": sign})
    raise AssertionError(kind)
