"""Lorentz (Bernstein-type) representations on an interval [a, b].

A degree-d form stores ``coeffs[j]`` as the coefficient of
``(b - x)**j * (x - a)**(d - j)``.  The d + 1 products form a basis of the
polynomials of degree at most d, so the coefficient list of a polynomial at a
fixed (a, b, d) is unique.  Nonnegativity of the coefficients is a predicate,
not an invariant: signed forms are allowed as intermediate values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Sequence, Union

from .errors import (
    BadNestingError,
    DegreeDecreaseError,
    DegreeTooSmallError,
    IntervalMismatchError,
    ZeroInsideDiskError,
    ZeroPolynomialError,
)
from .scalar_poly import (
    Factors,
    PowerPoly,
    RationalLike,
    as_rational,
    count_roots_in,
    sign_right,
    taylor_shift,
)


@dataclass(frozen=True)
class LorentzForm:
    a: Fraction
    b: Fraction
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "b", as_rational(self.b))
        object.__setattr__(self, "coeffs", tuple(as_rational(c) for c in self.coeffs))
        if not self.a < self.b:
            raise ValueError("Lorentz forms need a < b")
        if not self.coeffs:
            raise ValueError("a Lorentz form needs at least one coefficient")

    @property
    def d(self) -> int:
        return len(self.coeffs) - 1

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return self.a, self.b

    def is_nonneg(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def to_power(self) -> PowerPoly:
        return to_power(self)


def _binomial_row(alpha: Fraction, beta: Fraction, k: int) -> list[Fraction]:
    # coefficients of (alpha*V + beta*U)^k indexed by the power of V
    return [comb(k, i) * alpha**i * beta ** (k - i) for i in range(k + 1)]


def _convolve(u: Sequence[Fraction], v: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(u) + len(v) - 1)
    for i, x in enumerate(u):
        if x == 0:
            continue
        for j, y in enumerate(v):
            out[i + j] += x * y
    return out


def basis_poly(j: int, d: int, a: RationalLike = -1, b: RationalLike = 1) -> PowerPoly:
    """(b - x)^j (x - a)^(d - j) in the power basis."""
    a, b = as_rational(a), as_rational(b)
    return PowerPoly([b, -1]) ** j * PowerPoly([-a, 1]) ** (d - j)


def to_power(L: LorentzForm) -> PowerPoly:
    """Expand a Lorentz form into the power basis."""
    # work in u = x - a where (b - x) = h - u
    h = L.b - L.a
    d = L.d
    out = [Fraction(0)] * (d + 1)
    for j, c in enumerate(L.coeffs):
        if c == 0:
            continue
        # (h - u)^j u^(d - j)
        for i in range(j + 1):
            out[d - j + i] += c * comb(j, i) * h ** (j - i) * (-1) ** i
    return taylor_shift(PowerPoly(out), -L.a)


def from_power(f: PowerPoly, d: int, a: RationalLike = -1, b: RationalLike = 1) -> LorentzForm:
    """Unique degree-d Lorentz coefficients of f on [a, b].

    The linear system is lower-triangular in u = x - a (basis element j has
    lowest u-power d - j), so it is solved by exact forward substitution.
    """
    a, b = as_rational(a), as_rational(b)
    if not a < b:
        raise ValueError("need a < b")
    if d < 0 or f.degree > d:
        raise DegreeTooSmallError(f"degree {d} is below deg f = {f.degree}")
    h = b - a
    g = taylor_shift(f, a)  # g(u) = f(u + a)
    c: list[Fraction] = [Fraction(0)] * (d + 1)
    for j0 in range(d, -1, -1):
        acc = g.coeff(d - j0) / h**j0
        for j in range(j0 + 1, d + 1):
            if c[j]:
                acc -= (-1) ** (j - j0) * comb(j, j0) * c[j]
        c[j0] = acc
    return LorentzForm(a, b, tuple(c))


def elevate(L: LorentzForm, d_new: int) -> LorentzForm:
    """Rewrite L at a higher degree using (b - x) + (x - a) = b - a."""
    if d_new < L.d:
        raise DegreeDecreaseError(f"cannot lower degree {L.d} to {d_new}")
    inv_h = 1 / (L.b - L.a)
    cs = list(L.coeffs)
    for _ in range(d_new - L.d):
        cs = [(cs[j] if j < len(cs) else 0) + (cs[j - 1] if j else 0) for j in range(len(cs) + 1)]
        cs = [c * inv_h for c in cs]
    return LorentzForm(L.a, L.b, tuple(cs))


def restrict_interval(L: LorentzForm, c: RationalLike, e: RationalLike) -> LorentzForm:
    """Re-express L on a subinterval [c, e] of [a, b] at the same degree.

    Uses  x - a = ((e-a)(x-c) + (c-a)(e-x)) / (e-c)
    and   b - x = ((b-e)(x-c) + (b-c)(e-x)) / (e-c),
    all of whose weights are nonnegative when a <= c < e <= b.
    """
    c, e = as_rational(c), as_rational(e)
    a, b = L.a, L.b
    if not (a <= c < e <= b):
        raise BadNestingError(f"[{c}, {e}] is not a subinterval of [{a}, {b}]")
    w = e - c
    # V = e - x, U = x - c; index = power of V
    xa_v, xa_u = (c - a) / w, (e - a) / w
    bx_v, bx_u = (b - c) / w, (b - e) / w
    d = L.d
    out = [Fraction(0)] * (d + 1)
    for j, coef in enumerate(L.coeffs):
        if coef == 0:
            continue
        term = _convolve(_binomial_row(bx_v, bx_u, j), _binomial_row(xa_v, xa_u, d - j))
        for i, t in enumerate(term):
            out[i] += coef * t
    return LorentzForm(c, e, tuple(out))


def mul_lorentz(L1: LorentzForm, L2: LorentzForm) -> LorentzForm:
    if (L1.a, L1.b) != (L2.a, L2.b):
        raise IntervalMismatchError("Lorentz forms live on different intervals")
    return LorentzForm(L1.a, L1.b, tuple(_convolve(L1.coeffs, L2.coeffs)))


def scale_lorentz(L: LorentzForm, s: RationalLike) -> LorentzForm:
    s = as_rational(s)
    return LorentzForm(L.a, L.b, tuple(s * c for c in L.coeffs))


def _factors_of(obj: Union[PowerPoly, Factors]) -> Factors:
    if isinstance(obj, Factors):
        return obj
    if obj.factors is None:
        raise ValueError("polynomial carries no factor list; build it with from_factors")
    return obj.factors


def lorentz_from_factors(factors: Union[PowerPoly, Factors]) -> tuple[LorentzForm, int]:
    """Nonnegative degree-n form on [-1, 1] for s*f, with the sign s returned.

    Every real root r must have |r| >= 1 and every complex pair |alpha| >= 1.
    """
    fac = _factors_of(factors)
    one = Fraction(1)
    form = LorentzForm(-one, one, (abs(fac.leading),))
    sign = 1 if fac.leading > 0 else -1
    for r, m in fac.real_roots:
        if abs(r) < 1:
            raise ZeroInsideDiskError(f"real root {r} lies inside the open unit disk")
        # x - r = ((1 - r)/2)(x + 1) - ((r + 1)/2)(1 - x)
        lin = (((1 - r) / 2), -((r + 1) / 2))
        s = 1 if r <= -1 else -1
        lin_form = LorentzForm(-one, one, (s * lin[0], s * lin[1]))
        for _ in range(m):
            form = mul_lorentz(form, lin_form)
        if m % 2:
            sign = -sign if s < 0 else sign
    for (re, im), m in fac.complex_pairs:
        mod2 = re * re + im * im
        if mod2 < 1:
            raise ZeroInsideDiskError(f"complex root {re}+{im}i lies inside the open unit disk")
        # (x-alpha)(x-conj alpha) = |1-alpha|^2/4 (x+1)^2 + (|alpha|^2-1)/2 (1-x)(x+1) + |1+alpha|^2/4 (1-x)^2
        quad = LorentzForm(
            -one,
            one,
            (((1 - re) ** 2 + im * im) / 4, (mod2 - 1) / 2, ((1 + re) ** 2 + im * im) / 4),
        )
        for _ in range(m):
            form = mul_lorentz(form, quad)
    return form, sign


# ---------------------------------------------------------------------------
# Lorentz degree


@dataclass(frozen=True)
class LorentzDegreeResult:
    """Outcome of a Lorentz-degree scan: 'finite', 'infinite' or 'unknown'."""

    outcome: str
    d: Optional[int] = None
    cap: Optional[int] = None
    sign: int = 1
    form: Optional[LorentzForm] = field(default=None, compare=False, repr=False)

    def __str__(self) -> str:
        if self.outcome == "finite":
            return f"finite {self.d}"
        if self.outcome == "infinite":
            return "infinite"
        return f"unknown (cap {self.cap} reached)"


def default_cap(n: int, eps: Optional[RationalLike] = None) -> int:
    if eps is not None:
        eps = as_rational(eps)
        return max(n, math.ceil(10 * n / (eps * eps)))
    return 64 * max(n, 1)


def lorentz_degree(
    f: PowerPoly,
    a: RationalLike = -1,
    b: RationalLike = 1,
    cap: Optional[int] = None,
    eps: Optional[RationalLike] = None,
) -> LorentzDegreeResult:
    """Smallest d with a nonnegative degree-d representation of +-f on [a, b].

    The sign is fixed by f at the midpoint.  The scan starts from the exact
    solve at d = deg f and then elevates one degree at a time; by uniqueness
    every elevated form equals the direct solve at that degree.
    """
    a, b = as_rational(a), as_rational(b)
    if f.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no Lorentz degree")
    n = f.degree
    if cap is None:
        cap = default_cap(n, eps)
    if cap < n:
        raise ValueError(f"cap {cap} is below deg f = {n}")
    if n > 0 and count_roots_in(f, (a, b)) > 0:
        return LorentzDegreeResult("infinite", cap=cap)
    sign = sign_right(f, (a + b) / 2)
    if sign < 0:
        f = -f
    L = from_power(f, n, a, b)
    inv_h = 1 / (b - a)
    cs = list(L.coeffs)
    d = n
    while True:
        if all(c >= 0 for c in cs):
            return LorentzDegreeResult("finite", d=d, cap=cap, sign=sign, form=LorentzForm(a, b, tuple(cs)))
        if d >= cap:
            return LorentzDegreeResult("unknown", cap=cap, sign=sign)
        cs = [((cs[j] if j <= d else 0) + (cs[j - 1] if j else 0)) * inv_h for j in range(d + 2)]
        d += 1
