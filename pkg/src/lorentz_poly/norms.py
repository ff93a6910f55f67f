"""Sup norms and L_p norms of polynomials on an interval.

Each norm comes back as a :class:`NormValue` that carries a rational
enclosure ``[power_lo, power_hi]`` of the p-th power of the norm (of the norm
itself when p is infinite).  When the enclosure is a single point the mode is
``"exact"``.  Otherwise the mode is ``"quadrature"``, meaning a numerically
refined value. Sup norms attained at irrational critical points also get that
mode, because they come from bisection and not from the quadrature routine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Optional, Union

import numpy as np

from .errors import NonPositivePError
from .lorentz import LorentzForm, from_power
from .scalar_poly import (
    PowerPoly,
    RationalLike,
    RootBracket,
    _Isolator,
    antiderivative,
    as_rational,
    derivative,
    evaluate,
    taylor_shift,
)

Exponent = Union[Fraction, float]
INF = math.inf

# bisection precision for sup norms, relative to the norm
SUP_REL_TOL = Fraction(1, 10**15)
QUAD_REL_TOL = 1e-12
GL_NODES = 16


@dataclass(frozen=True)
class NormValue:
    value: Union[Fraction, float]
    mode: str
    error_bound: float
    p: Exponent
    power_lo: Fraction
    power_hi: Fraction
    argmax: Optional[Union[Fraction, float]] = None

    @property
    def is_exact(self) -> bool:
        return self.mode == "exact"

    @property
    def power(self) -> Union[Fraction, float]:
        """The p-th power of the norm (the norm itself for p = infinity)."""
        if self.power_lo == self.power_hi:
            return self.power_lo
        return float((self.power_lo + self.power_hi) / 2)

    def enclosure(self) -> tuple[Fraction, Fraction]:
        """Rational bounds on the norm value itself."""
        if self.p == INF or self.p == 1:
            return self.power_lo, self.power_hi
        if isinstance(self.value, Fraction) and self.is_exact:
            return self.value, self.value
        inv = 1.0 / float(self.p)
        lo = float(self.power_lo) ** inv * (1 - 1e-14)
        hi = float(self.power_hi) ** inv * (1 + 1e-14)
        return Fraction(max(lo, 0.0)), Fraction(hi)


def as_exponent(p) -> Exponent:
    if isinstance(p, str):
        t = p.strip().lower()
        if t in ("inf", "infinity", "oo", "+inf"):
            return INF
        if t in ("-inf", "-infinity"):
            raise NonPositivePError("p must be positive")
        p = Fraction(t)
    if isinstance(p, float):
        if math.isinf(p):
            if p < 0:
                raise NonPositivePError("p must be positive")
            return INF
        p = Fraction(p)
    p = Fraction(p)
    if p <= 0:
        raise NonPositivePError(f"p must be positive, got {p}")
    return p


def integral_exact(f: PowerPoly, a: RationalLike = -1, b: RationalLike = 1) -> Fraction:
    F = antiderivative(f)
    return evaluate(F, b) - evaluate(F, a)


def _iroot(n: int, k: int) -> Optional[int]:
    """Exact integer k-th root of n >= 0, or None."""
    if n < 2:
        return n
    x = int(round(n ** (1.0 / k))) if n.bit_length() < 1000 else 1 << (n.bit_length() // k + 1)
    # Newton from above
    x = max(x, 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    for cand in (x - 1, x, x + 1):
        if cand >= 0 and cand**k == n:
            return cand
    return None


def rational_root(r: Fraction, k: int) -> Optional[Fraction]:
    """Exact k-th root of a nonnegative rational when it is rational."""
    if k == 1:
        return r
    num = _iroot(r.numerator, k)
    if num is None:
        return None
    den = _iroot(r.denominator, k)
    if den is None:
        return None
    return Fraction(num, den)


def _from_power_value(power: Fraction, p: Exponent) -> tuple[Union[Fraction, float], float]:
    if p == 1:
        return power, 0.0
    if p.denominator == 1:
        exact = rational_root(power, int(p))
        if exact is not None:
            return exact, 0.0
    val = float(power) ** (1.0 / float(p))
    return val, 4 * math.ulp(val) if val else 0.0


def _taylor_abs_bound(f: PowerPoly, lo: Fraction, hi: Fraction) -> Fraction:
    """Upper bound for |f| on [lo, hi] from the Taylor expansion at the midpoint."""
    m = (lo + hi) / 2
    r = (hi - lo) / 2
    g = taylor_shift(f, m)
    bound = Fraction(0)
    rk = Fraction(1)
    for c in g.coeffs:
        bound += abs(c) * rk
        rk *= r
    return bound


# ---------------------------------------------------------------------------
# sup norm


def _rational_in(br: RootBracket, g: PowerPoly) -> Optional[Fraction]:
    """A small-denominator exact root of g inside the bracket, if one exists."""
    mid = br.midpoint
    for k in range(1, 9):
        guess = mid.limit_denominator(10**k)
        if br.lo < guess < br.hi and evaluate(g, guess) == 0:
            return guess
    return None


def sup_norm(f: PowerPoly, a: RationalLike = -1, b: RationalLike = 1) -> NormValue:
    """max |f| over [a, b].

    Candidates are the endpoints and the critical points of f.  Rational
    critical points are used exactly; irrational ones are enclosed by bisection
    on a Sturm bracket plus a Taylor bound until the enclosure is tight.
    """
    a, b = as_rational(a), as_rational(b)
    if not a < b:
        raise ValueError("need a < b")
    exact_pts = [a, b]
    open_brackets: list[RootBracket] = []
    iso = None
    if f.degree >= 2:
        df = derivative(f)
        iso = _Isolator(df)
        for br in iso.isolate(a, b):
            if br.root is not None:
                exact_pts.append(br.root)
                continue
            br = iso.refine(br, (b - a) / 2**48)
            if br.root is None:
                guess = _rational_in(br, df)
                if guess is not None:
                    br = RootBracket(br.lo, br.hi, br.multiplicity, guess)
            if br.root is not None:
                exact_pts.append(br.root)
            else:
                open_brackets.append(br)

    exact_max = Fraction(-1)
    argmax = None
    for x in sorted(exact_pts):
        v = abs(evaluate(f, x))
        if v > exact_max:
            exact_max, argmax = v, x

    lower = exact_max
    lower_arg: Union[Fraction, None] = argmax
    width = (b - a) / 2**20
    pending = list(open_brackets)
    uppers: dict[int, Fraction] = {}
    while pending:
        still = []
        upper = exact_max
        for idx, br in enumerate(pending):
            u = _taylor_abs_bound(f, br.lo, br.hi)
            for x in (br.lo, br.midpoint, br.hi):
                v = abs(evaluate(f, x))
                if v > lower:
                    lower, lower_arg = v, x
            if u > exact_max:
                still.append(br)
                upper = max(upper, u)
        pending = still
        if not pending:
            break
        scale_ = max(lower, Fraction(1, 10**300))
        if upper - lower <= SUP_REL_TOL * scale_:
            hi_bound = upper
            val = float((lower + hi_bound) / 2)
            return NormValue(
                value=val,
                mode="quadrature",
                error_bound=float((hi_bound - lower) / 2) + math.ulp(val),
                p=INF,
                power_lo=lower,
                power_hi=hi_bound,
                argmax=float(lower_arg),
            )
        width /= 2**8
        pending = [iso.refine(br, width) for br in pending]
        # brackets that collapsed onto a rational critical point become exact
        still = []
        for br in pending:
            if br.root is not None:
                v = abs(evaluate(f, br.root))
                if v > exact_max or (v == exact_max and br.root < argmax):
                    exact_max, argmax = v, br.root
                if v > lower:
                    lower, lower_arg = v, br.root
            else:
                still.append(br)
        pending = still
    return NormValue(exact_max, "exact", 0.0, INF, exact_max, exact_max, argmax)


# ---------------------------------------------------------------------------
# quadrature


@lru_cache(maxsize=None)
def _gl(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    # map to [0, 1]
    return (x + 1) / 2, w / 2


def _bernstein_eval(beta: np.ndarray, t: np.ndarray) -> np.ndarray:
    """sum_i beta_i C(d,i) t^i (1-t)^(d-i), vectorized (de Casteljau)."""
    d = len(beta) - 1
    work = np.tile(beta[:, None], (1, len(t)))
    s = 1.0 - t
    for r in range(1, d + 1):
        work[: d - r + 1] = s * work[: d - r + 1] + t * work[1 : d - r + 2]
    return work[0]


def adaptive_gauss_legendre(func, lo: float, hi: float, abs_tol: float, max_depth: int = 60):
    """Integrate func over [lo, hi] by local panel halving.

    A panel is accepted once its 16-point value and the sum over its two
    halves agree to within its share of ``abs_tol``.  Returns
    (value, error_estimate), the estimate being the sum of accepted deltas.
    """
    nodes, weights = _gl(GL_NODES)

    def panel(u, v):
        return (v - u) * float(np.dot(weights, func(u + (v - u) * nodes)))

    total = 0.0
    err = 0.0
    width = hi - lo
    stack = [(lo, hi, panel(lo, hi), 0)]
    while stack:
        u, v, coarse, depth = stack.pop()
        m = 0.5 * (u + v)
        left, right = panel(u, m), panel(m, v)
        fine = left + right
        delta = abs(fine - coarse)
        share = abs_tol * (v - u) / width
        if delta <= share or depth >= max_depth or m <= u or m >= v:
            total += fine
            err += delta
        else:
            stack.append((m, v, right, depth + 1))
            stack.append((u, m, left, depth + 1))
    return total, err


def _piece_integral(f: PowerPoly, u: Fraction, v: Fraction, p: float, rel_tol: float):
    """integral over [u, v] of |f|^p, f free of roots inside (u, v).

    Evaluates f in the Bernstein basis of [u, v], splitting at the midpoint and
    mirroring the right half so each half is evaluated accurately near its
    outer endpoint, where roots of f may sit.
    """
    d = max(f.degree, 0)
    L = from_power(f, d, u, v)
    h = v - u
    # beta_i multiplies C(d,i) t^i (1-t)^(d-i), t = (x-u)/h
    beta = [h**d * L.coeffs[d - i] / comb(d, i) for i in range(d + 1)]
    bf = np.array([float(c) for c in beta])
    hf = float(h)
    if not np.any(bf):
        return 0.0, 0.0
    scale_ = float(max(abs(c) for c in beta))
    norm_b = bf / scale_
    left_fn = lambda t: np.abs(_bernstein_eval(norm_b, t)) ** p
    right_fn = lambda t: np.abs(_bernstein_eval(norm_b[::-1], t)) ** p
    # magnitude estimate for the absolute tolerance
    nodes, weights = _gl(GL_NODES)
    t = np.concatenate([nodes / 2, 0.5 + nodes / 2])
    rough = float(np.dot(np.concatenate([weights, weights]), np.abs(_bernstein_eval(norm_b, t)) ** p)) / 2
    abs_tol = rel_tol * max(rough, 1e-300)
    v1, e1 = adaptive_gauss_legendre(left_fn, 0.0, 0.5, abs_tol / 2)
    v2, e2 = adaptive_gauss_legendre(right_fn, 0.0, 0.5, abs_tol / 2)
    factor = hf * scale_**p
    val = (v1 + v2) * factor
    err = (e1 + e2) * factor + 1e-15 * (d + 1) * abs(val)
    return val, err


def _breakpoints(f: PowerPoly, a: Fraction, b: Fraction, odd_only: bool) -> tuple[list[Fraction], list[RootBracket]]:
    """Rational breakpoints at the real roots of f in (a, b), plus brackets of irrational ones."""
    if f.degree <= 0:
        return [], []
    iso = _Isolator(f)
    pts, loose = [], []
    for br in iso.isolate(a, b):
        if odd_only and br.multiplicity % 2 == 0:
            continue
        br = iso.refine(br, (b - a) / 2**64)
        if br.root is None:
            guess = br.midpoint.limit_denominator(10**6)
            if br.lo < guess < br.hi and evaluate(f, guess) == 0:
                br = RootBracket(br.lo, br.hi, br.multiplicity, guess)
        if br.root is not None:
            pts.append(br.root)
        else:
            loose.append(br)
            pts.append(br.midpoint)
    return pts, loose


def lp_norm(
    f: PowerPoly,
    p,
    a: RationalLike = -1,
    b: RationalLike = 1,
    nonneg: bool = False,
    rel_tol: float = QUAD_REL_TOL,
) -> NormValue:
    """(integral_a^b |f|^p)^(1/p); p = inf gives the sup norm.

    ``nonneg=True`` promises f >= 0 on [a, b] with no interior roots (true for
    any nonzero nonnegative Lorentz form), which skips sign splitting.
    """
    p = as_exponent(p)
    a, b = as_rational(a), as_rational(b)
    if p == INF:
        return sup_norm(f, a, b)
    if f.is_zero():
        return NormValue(Fraction(0), "exact", 0.0, p, Fraction(0), Fraction(0))
    if p.denominator == 1:
        k = int(p)
        fk = f**k
        if nonneg or k % 2 == 0:
            power = abs(integral_exact(fk, a, b))
            lo_p = hi_p = power
        else:
            pts, loose = _breakpoints(f, a, b, odd_only=True)
            if not loose:
                edges = [a] + pts + [b]
                lo_p = hi_p = sum((abs(integral_exact(fk, u, v)) for u, v in zip(edges, edges[1:])), Fraction(0))
            else:
                # exact pieces between brackets, each bracket enclosed by [0, M^k * width]
                cuts = [a]
                slack = Fraction(0)
                roots = {br.midpoint: br for br in loose}
                for x in pts:
                    if x in roots:
                        br = roots[x]
                        cuts.extend([br.lo, br.hi])
                        slack += _taylor_abs_bound(f, br.lo, br.hi) ** k * (br.hi - br.lo)
                    else:
                        cuts.extend([x, x])
                cuts.append(b)
                base = Fraction(0)
                for u, v in zip(cuts[0::2], cuts[1::2]):
                    if v > u:
                        base += abs(integral_exact(fk, u, v))
                lo_p, hi_p = base, base + slack
        if lo_p == hi_p:
            value, err = _from_power_value(lo_p, p)
            return NormValue(value, "exact", err, p, lo_p, hi_p)
        mid = (lo_p + hi_p) / 2
        value = float(mid) ** (1.0 / k)
        err = value * float((hi_p - lo_p) / (2 * mid)) / k + 4 * math.ulp(value)
        return NormValue(value, "quadrature", err, p, lo_p, hi_p)

    pf = float(p)
    if nonneg:
        edges = [a, b]
    else:
        pts, _ = _breakpoints(f, a, b, odd_only=False)
        edges = [a] + pts + [b]
    total = 0.0
    err = 0.0
    for u, v in zip(edges, edges[1:]):
        if v <= u:
            continue
        val, e = _piece_integral(f, u, v, pf, rel_tol)
        total += val
        err += e
    lo_p = Fraction(max(total - err, 0.0))
    hi_p = Fraction(total + err)
    value = total ** (1.0 / pf)
    val_err = value * (err / total) / pf + 4 * math.ulp(value) if total > 0 else err ** (1.0 / pf)
    return NormValue(value, "quadrature", val_err, p, lo_p, hi_p)


def lorentz_lp_norm(L: LorentzForm, p, rel_tol: float = QUAD_REL_TOL) -> NormValue:
    """L_p norm of a nonnegative Lorentz form on its own interval."""
    return lp_norm(L.to_power(), p, L.a, L.b, nonneg=L.is_nonneg(), rel_tol=rel_tol)
