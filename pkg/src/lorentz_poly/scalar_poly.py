"""Exact rational polynomials in the power basis, and Sturm root isolation.

Everything here works over :class:`fractions.Fraction`; nothing rounds.
Polynomials are immutable and store coefficients in ascending order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd
from typing import Iterable, Optional, Sequence, Union

Rational = Fraction
RationalLike = Union[int, Fraction, str]


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact rationals; use Fraction(str(x))")
    return Fraction(x)


@dataclass(frozen=True)
class Factors:
    """Constructive factorization: leading * prod (x - r)^m * prod ((x-a)(x-conj a))^m.

    ``real_roots`` holds ``(r, m)`` pairs; ``complex_pairs`` holds ``((re, im), m)``
    with ``im != 0``.
    """

    real_roots: tuple[tuple[Fraction, int], ...]
    complex_pairs: tuple[tuple[tuple[Fraction, Fraction], int], ...]
    leading: Fraction

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.real_roots) + 2 * sum(m for _, m in self.complex_pairs)


class PowerPoly:
    """Polynomial with exact rational coefficients, ``coeffs[k]`` multiplies x^k."""

    __slots__ = ("coeffs", "factors")

    def __init__(self, coeffs: Iterable[RationalLike] = (), factors: Optional[Factors] = None):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "factors", factors)

    def __setattr__(self, name, value):
        raise AttributeError("PowerPoly is immutable")

    def __reduce__(self):
        return (PowerPoly, (self.coeffs, self.factors))

    # construction helpers
    @classmethod
    def constant(cls, c: RationalLike) -> "PowerPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "PowerPoly":
        return cls([0, 1])

    @classmethod
    def linear(cls, root: RationalLike) -> "PowerPoly":
        """The monic linear polynomial x - root."""
        return cls([-as_rational(root), 1])

    # basic queries
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, x: RationalLike) -> Fraction:
        return evaluate(self, x)

    def __eq__(self, other) -> bool:
        if isinstance(other, PowerPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == PowerPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"PowerPoly([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' + mono if mono else ''}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # arithmetic
    def __add__(self, other) -> "PowerPoly":
        return add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other) -> "PowerPoly":
        return add(self, scale(_coerce(other), -1))

    def __rsub__(self, other) -> "PowerPoly":
        return add(_coerce(other), scale(self, -1))

    def __neg__(self) -> "PowerPoly":
        return scale(self, -1)

    def __mul__(self, other) -> "PowerPoly":
        if isinstance(other, (int, Fraction)):
            return scale(self, other)
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PowerPoly":
        if k < 0:
            raise ValueError("negative power")
        result = PowerPoly([1])
        base = self
        while k:
            if k & 1:
                result = mul(result, base)
            base = mul(base, base)
            k >>= 1
        return result

    def derivative(self) -> "PowerPoly":
        return derivative(self)

    def antiderivative(self, constant: RationalLike = 0) -> "PowerPoly":
        return antiderivative(self, constant)

    def monic(self) -> "PowerPoly":
        if self.is_zero():
            return self
        return scale(self, 1 / self.leading)

    def to_floats(self) -> list[float]:
        return [float(c) for c in self.coeffs]


def _coerce(obj) -> PowerPoly:
    if isinstance(obj, PowerPoly):
        return obj
    if isinstance(obj, (int, Fraction)):
        return PowerPoly([obj])
    raise TypeError(f"cannot use {type(obj).__name__} as a polynomial")


def evaluate(f: PowerPoly, x: RationalLike) -> Fraction:
    """Exact Horner evaluation."""
    x = as_rational(x)
    acc = Fraction(0)
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


def derivative(f: PowerPoly) -> PowerPoly:
    return PowerPoly([k * c for k, c in enumerate(f.coeffs)][1:])


def antiderivative(f: PowerPoly, constant: RationalLike = 0) -> PowerPoly:
    return PowerPoly([as_rational(constant)] + [c / (k + 1) for k, c in enumerate(f.coeffs)])


def add(f: PowerPoly, g: PowerPoly) -> PowerPoly:
    n = max(len(f.coeffs), len(g.coeffs))
    return PowerPoly([f.coeff(k) + g.coeff(k) for k in range(n)])


def scale(f: PowerPoly, c: RationalLike) -> PowerPoly:
    c = as_rational(c)
    return PowerPoly([c * a for a in f.coeffs])


def mul(f: PowerPoly, g: PowerPoly) -> PowerPoly:
    if f.is_zero() or g.is_zero():
        return PowerPoly()
    out = [Fraction(0)] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(g.coeffs):
            out[i + j] += a * b
    return PowerPoly(out)


def divmod_poly(f: PowerPoly, g: PowerPoly) -> tuple[PowerPoly, PowerPoly]:
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(f.coeffs)
    dg = g.degree
    lc = g.leading
    if len(rem) - 1 < dg:
        return PowerPoly(), f
    quot = [Fraction(0)] * (len(rem) - dg)
    for k in range(len(rem) - 1, dg - 1, -1):
        c = rem[k] / lc
        quot[k - dg] = c
        if c:
            for j, b in enumerate(g.coeffs):
                rem[k - dg + j] -= c * b
    return PowerPoly(quot), PowerPoly(rem[:dg])


def exact_div(f: PowerPoly, g: PowerPoly) -> PowerPoly:
    q, r = divmod_poly(f, g)
    if not r.is_zero():
        raise ValueError("division is not exact")
    return q


def poly_gcd(f: PowerPoly, g: PowerPoly) -> PowerPoly:
    """Monic gcd (zero if both inputs are zero)."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, divmod_poly(a, b)[1]
    return a.monic()


def taylor_shift(f: PowerPoly, h: RationalLike) -> PowerPoly:
    """Coefficients of f(x + h)."""
    h = as_rational(h)
    cs = list(f.coeffs)
    n = len(cs)
    for i in range(n):
        for k in range(n - 2, i - 1, -1):
            cs[k] += h * cs[k + 1]
    return PowerPoly(cs)


def compose_affine(f: PowerPoly, alpha: RationalLike, beta: RationalLike) -> PowerPoly:
    """Coefficients of f(alpha*x + beta)."""
    alpha = as_rational(alpha)
    g = taylor_shift(f, beta)
    return PowerPoly([c * alpha**k for k, c in enumerate(g.coeffs)])


def from_factors(
    real_roots: Sequence[tuple[RationalLike, int]] = (),
    complex_pairs: Sequence[tuple[tuple[RationalLike, RationalLike], int]] = (),
    leading: RationalLike = 1,
) -> PowerPoly:
    """Expand ``leading * prod (x - r)^m * prod (x^2 - 2 re x + re^2 + im^2)^m``.

    The factor list is kept on the result so zero-location predicates can
    answer without floating point.
    """
    leading = as_rational(leading)
    if leading == 0:
        raise ValueError("leading coefficient must be nonzero")
    rr = tuple((as_rational(r), int(m)) for r, m in real_roots if int(m) > 0)
    cp = []
    for (re, im), m in complex_pairs:
        re, im = as_rational(re), as_rational(im)
        if im == 0:
            raise ValueError("complex pair with zero imaginary part; list it as a double real root")
        if int(m) > 0:
            cp.append(((re, abs(im)), int(m)))
    out = PowerPoly([leading])
    for r, m in rr:
        out = mul(out, PowerPoly.linear(r) ** m)
    for (re, im), m in cp:
        out = mul(out, PowerPoly([re * re + im * im, -2 * re, 1]) ** m)
    return PowerPoly(out.coeffs, Factors(rr, tuple(cp), leading))


def chebyshev_T(n: int) -> PowerPoly:
    if n < 0:
        raise ValueError("n must be nonnegative")
    t_prev, t = PowerPoly([1]), PowerPoly([0, 1])
    if n == 0:
        return t_prev
    two_x = PowerPoly([0, 2])
    for _ in range(n - 1):
        t_prev, t = t, mul(two_x, t) - t_prev
    return t


# ---------------------------------------------------------------------------
# square-free decomposition and Sturm sequences


def squarefree_decomposition(f: PowerPoly) -> list[PowerPoly]:
    """Yun's algorithm: returns [a_1, a_2, ...] with f = lc * prod a_i^i, a_i monic square-free."""
    if f.is_zero():
        raise ValueError("zero polynomial has no square-free decomposition")
    f = f.monic()
    if f.degree == 0:
        return []
    df = derivative(f)
    a0 = poly_gcd(f, df)
    b = exact_div(f, a0)
    c = exact_div(df, a0)
    d = c - derivative(b)
    parts = []
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = exact_div(b, a)
        c = exact_div(d, a)
        d = c - derivative(b)
        parts.append(a)
    return parts


def squarefree_part(f: PowerPoly) -> PowerPoly:
    """f / gcd(f, f'), monic."""
    if f.degree <= 0:
        return PowerPoly([1]) if not f.is_zero() else f
    return exact_div(f.monic(), poly_gcd(f, derivative(f)))


def _primitive_positive(f: PowerPoly) -> PowerPoly:
    # rescale by a positive rational so coefficients are coprime integers;
    # sign pattern (hence Sturm variations) is unchanged
    if f.is_zero():
        return f
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    g = 0
    for v in ints:
        g = igcd(g, v)
    return PowerPoly([Fraction(v // g) for v in ints])


def sturm_sequence(f: PowerPoly) -> list[PowerPoly]:
    """Sturm chain of the square-free part of f (entries rescaled by positive constants)."""
    g = _primitive_positive(squarefree_part(f))
    seq = [g, _primitive_positive(derivative(g))]
    while seq[-1].degree > 0:
        r = divmod_poly(seq[-2], seq[-1])[1]
        if r.is_zero():
            break
        seq.append(_primitive_positive(-r))
    return seq


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def sign_right(p: PowerPoly, x: Fraction) -> int:
    """Sign of p on (x, x + h) for all small h > 0."""
    v = evaluate(p, x)
    if v != 0 or p.is_zero():
        return _sign(v)
    for c in taylor_shift(p, x).coeffs:
        if c != 0:
            return _sign(c)
    return 0


def sign_left(p: PowerPoly, x: Fraction) -> int:
    """Sign of p on (x - h, x) for all small h > 0."""
    v = evaluate(p, x)
    if v != 0 or p.is_zero():
        return _sign(v)
    for k, c in enumerate(taylor_shift(p, x).coeffs):
        if c != 0:
            return _sign(c) * (-1) ** k
    return 0


def _variations(signs: Iterable[int]) -> int:
    prev = 0
    count = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _variations_at(seq: list[PowerPoly], x: Optional[Fraction], side: str) -> int:
    if x is None:
        # side "right" means +infinity approached from the left, etc.
        if side == "pos_inf":
            return _variations(_sign(p.leading) for p in seq)
        return _variations(_sign(p.leading) * (-1) ** p.degree for p in seq)
    fn = sign_right if side == "right" else sign_left
    return _variations(fn(p, x) for p in seq)


def _count_open(seq: list[PowerPoly], lo: Optional[Fraction], hi: Optional[Fraction]) -> int:
    v_lo = _variations_at(seq, lo, "neg_inf" if lo is None else "right")
    v_hi = _variations_at(seq, hi, "pos_inf" if hi is None else "left")
    return v_lo - v_hi


Interval = Optional[tuple[Optional[RationalLike], Optional[RationalLike]]]


def _normalize_interval(interval: Interval) -> tuple[Optional[Fraction], Optional[Fraction]]:
    if interval is None:
        return None, None
    lo, hi = interval
    lo = None if lo is None else as_rational(lo)
    hi = None if hi is None else as_rational(hi)
    if lo is not None and hi is not None and not lo < hi:
        raise ValueError("interval must satisfy lo < hi")
    return lo, hi


def count_roots_in(f: PowerPoly, interval: Interval = None) -> int:
    """Number of distinct real roots of f strictly inside the open interval.

    ``None`` (or ``None`` endpoints) stands for the whole line / infinite ends.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    if f.degree == 0:
        return 0
    lo, hi = _normalize_interval(interval)
    return _count_open(sturm_sequence(f), lo, hi)


def count_real_roots_with_multiplicity(f: PowerPoly, interval: Interval = None) -> int:
    if f.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    lo, hi = _normalize_interval(interval)
    total = 0
    for i, a in enumerate(squarefree_decomposition(f), start=1):
        if a.degree > 0:
            total += i * _count_open(sturm_sequence(a), lo, hi)
    return total


@dataclass(frozen=True)
class RootBracket:
    """Open interval (lo, hi) holding exactly one distinct real root.

    ``root`` is set when the root was hit exactly during bisection.
    """

    lo: Fraction
    hi: Fraction
    multiplicity: int
    root: Optional[Fraction] = None

    @property
    def multiplicity_parity(self) -> str:
        return "odd" if self.multiplicity % 2 else "even"

    @property
    def midpoint(self) -> Fraction:
        return self.root if self.root is not None else (self.lo + self.hi) / 2


def cauchy_bound(f: PowerPoly) -> Fraction:
    lc = abs(f.leading)
    return 1 + max((abs(c) / lc for c in f.coeffs[:-1]), default=Fraction(0))


class _Isolator:
    """Sturm data for one polynomial: square-free part and its chain."""

    def __init__(self, f: PowerPoly):
        self.parts = squarefree_decomposition(f)
        self.g = _primitive_positive(squarefree_part(f))
        self.seq = sturm_sequence(self.g)

    def count(self, lo, hi) -> int:
        return _count_open(self.seq, lo, hi)

    def multiplicity_of(self, lo: Fraction, hi: Fraction, root: Optional[Fraction]) -> int:
        for i, a in enumerate(self.parts, start=1):
            if a.degree <= 0:
                continue
            if root is not None:
                if evaluate(a, root) == 0:
                    return i
            elif _count_open(sturm_sequence(a), lo, hi) == 1:
                return i
        raise AssertionError("root not found in any square-free factor")

    def isolate(self, lo: Fraction, hi: Fraction) -> list[RootBracket]:
        out = []
        stack = [(lo, hi, self.count(lo, hi))]
        while stack:
            a, b, k = stack.pop()
            if k == 0:
                continue
            if k == 1:
                out.append(RootBracket(a, b, self.multiplicity_of(a, b, None)))
                continue
            m = (a + b) / 2
            if evaluate(self.g, m) == 0:
                delta = (b - a) / 4
                while True:
                    left, right = m - delta, m + delta
                    if (
                        evaluate(self.g, left) != 0
                        and evaluate(self.g, right) != 0
                        and self.count(left, right) == 1
                    ):
                        break
                    delta /= 2
                out.append(RootBracket(left, right, self.multiplicity_of(left, right, m), root=m))
                stack.append((right, b, self.count(right, b)))
                stack.append((a, left, self.count(a, left)))
            else:
                stack.append((m, b, self.count(m, b)))
                stack.append((a, m, self.count(a, m)))
        out.sort(key=lambda br: br.lo)
        return out

    def refine(self, br: RootBracket, width: Fraction) -> RootBracket:
        """Bisect until hi - lo <= width (or the root is hit exactly)."""
        if br.root is not None:
            if br.hi - br.lo <= width:
                return br
            half = width / 2
            return RootBracket(br.root - half, br.root + half, br.multiplicity, br.root)
        lo, hi = br.lo, br.hi
        s_lo = sign_right(self.g, lo)
        while hi - lo > width:
            m = (lo + hi) / 2
            s = _sign(evaluate(self.g, m))
            if s == 0:
                half = min(width, hi - lo) / 2
                return RootBracket(m - half, m + half, br.multiplicity, m)
            if s == s_lo:
                lo = m
            else:
                hi = m
        return RootBracket(lo, hi, br.multiplicity)


def sturm_isolate(f: PowerPoly, interval: Interval = None) -> list[RootBracket]:
    """Disjoint brackets, one per distinct real root of f in the open interval."""
    if f.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    if f.degree == 0:
        return []
    lo, hi = _normalize_interval(interval)
    iso = _Isolator(f)
    if lo is None or hi is None:
        bound = cauchy_bound(iso.g)
        lo = -bound if lo is None else lo
        hi = bound if hi is None else hi
    return iso.isolate(lo, hi)


def refine_bracket(f: PowerPoly, br: RootBracket, width: RationalLike) -> RootBracket:
    return _Isolator(f).refine(br, as_rational(width))


def real_root_approximations(f: PowerPoly, interval: Interval = None) -> list[tuple[float, int]]:
    """Float approximations (about 1e-17 relative) of the distinct real roots, with multiplicity."""
    if f.degree <= 0:
        return []
    iso = _Isolator(f)
    lo, hi = _normalize_interval(interval)
    if lo is None or hi is None:
        bound = cauchy_bound(iso.g)
        lo = -bound if lo is None else lo
        hi = bound if hi is None else hi
    out = []
    for br in iso.isolate(lo, hi):
        scale_ = max(Fraction(1), abs(br.lo), abs(br.hi))
        br = iso.refine(br, scale_ / 2**60)
        out.append((float(br.midpoint), br.multiplicity))
    return out
