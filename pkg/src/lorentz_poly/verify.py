"""Checkers for the Markov- and Nikolskii-type inequalities, plus batch drivers.

Every checker computes both sides of its inequality, normalizes them to an
observed ``ratio`` and the theorem's constant ``bound``, and decides the
comparison.  Exact rational paths compare with zero tolerance.  Numeric paths
compare certified enclosures: a check holds only if the whole ratio enclosure
sits at or below the bound enclosure, fails only if it sits strictly above it,
and is otherwise reported as indeterminate.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from .classes import (
    ClassTag,
    Membership,
    Sample,
    in_lorentz_class,
    membership,
    monotone_on_interval,
    real_zeros_outside_interval,
    sample,
    zeros_outside_open_disk,
)
from .errors import ClassViolationError
from .lorentz import LorentzForm, to_power
from .norms import INF, QUAD_REL_TOL, NormValue, as_exponent, lp_norm, rational_root, sup_norm
from .scalar_poly import PowerPoly, RationalLike, as_rational, derivative, evaluate

Number = Union[Fraction, float]
NEAR_EQUALITY = 1e-10
FLOAT_REL = 1e-15


@dataclass(frozen=True)
class Quantity:
    """A real number with rational bounds ``lo <= value <= hi``."""

    value: Number
    lo: Fraction
    hi: Fraction

    @classmethod
    def exact(cls, x: RationalLike) -> "Quantity":
        x = as_rational(x)
        return cls(x, x, x)

    @classmethod
    def approx(cls, x: float, rel: float = FLOAT_REL) -> "Quantity":
        pad = abs(x) * rel + 1e-300
        return cls(x, Fraction(x - pad), Fraction(x + pad))

    @classmethod
    def from_norm(cls, nv: NormValue) -> "Quantity":
        lo, hi = nv.enclosure()
        return cls(nv.value, lo, hi)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def __mul__(self, other: "Quantity") -> "Quantity":
        # only used on nonnegative quantities
        return Quantity(_mul(self.value, other.value), self.lo * other.lo, self.hi * other.hi)

    def __truediv__(self, other: "Quantity") -> "Quantity":
        if other.lo <= 0:
            raise ZeroDivisionError("denominator enclosure touches zero")
        return Quantity(_div(self.value, other.value), self.lo / other.hi, self.hi / other.lo)


def _mul(x: Number, y: Number) -> Number:
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x * y
    return float(x) * float(y)


def _div(x: Number, y: Number) -> Number:
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x / y
    return float(x) / float(y)


def _rational_pow(base: Fraction, e: Fraction) -> Optional[Fraction]:
    """base**e when it is rational (base > 0, e >= 0 rational)."""
    r = rational_root(base**e.numerator, e.denominator)
    return r


def _pow_q(base: Fraction, q: Fraction) -> Quantity:
    """base**q for rational base >= 0 and rational q > 0, exact when q is an integer."""
    if q.denominator == 1:
        return Quantity.exact(base ** int(q))
    return Quantity.approx(float(base) ** float(q), 1e-14)


@dataclass
class Verdict:
    theorem: str
    n: int
    lhs: NormValue
    rhs_bound: Quantity
    ratio: Number
    bound: Number
    slack: Number
    status: str  # "holds" | "fails" | "indeterminate"
    equality: bool
    equality_within: Number
    witness: PowerPoly
    class_evidence: Membership
    exact: bool
    equality_family: bool = False
    params: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)
    ratio_error: float = 0.0  # half-width of the certified ratio enclosure

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    @property
    def near_equality(self) -> bool:
        return self.equality or abs(float(self.equality_within)) < NEAR_EQUALITY


def _decide(ratio: Quantity, bound: Quantity) -> tuple[str, bool]:
    if ratio.is_exact and bound.is_exact:
        return ("holds" if ratio.lo <= bound.lo else "fails"), ratio.lo == bound.lo
    if ratio.hi <= bound.lo:
        return "holds", False
    if ratio.lo > bound.hi:
        return "fails", False
    return "indeterminate", False


def _finish(
    theorem, n, lhs, rhs, ratio: Quantity, bound: Quantity, f, evidence, status=None, equality=None,
    exact=None, family=False, params=None, notes=None,
) -> Verdict:
    if status is None:
        status, equality = _decide(ratio, bound)
    if exact is None:
        exact = ratio.is_exact and bound.is_exact
    if equality and exact:
        # certified equality: the ratio is the bound itself
        ratio = bound
    if equality:
        slack: Number = Fraction(0)
        within: Number = Fraction(0)
    elif exact:
        slack = bound.lo - ratio.lo
        within = slack / bound.lo if bound.lo else Fraction(0)
    else:
        slack = float(bound.value) - float(ratio.value)
        within = slack / float(bound.value) if float(bound.value) else 0.0
    return Verdict(
        theorem=theorem,
        n=n,
        lhs=lhs,
        rhs_bound=rhs,
        ratio=ratio.value,
        bound=bound.value,
        slack=slack,
        status=status,
        equality=bool(equality),
        equality_within=within,
        witness=f,
        class_evidence=evidence,
        exact=exact,
        equality_family=family,
        params=params or {},
        notes=notes or {},
        ratio_error=float((ratio.hi - ratio.lo) / 2),
    )


def _indeterminate(theorem, n, f, evidence, params=None) -> Verdict:
    nan = float("nan")
    zero = NormValue(nan, "quadrature", nan, INF, Fraction(0), Fraction(0))
    return Verdict(theorem, n, zero, Quantity(nan, Fraction(0), Fraction(0)), nan, nan, nan,
                   "indeterminate", False, nan, f, evidence, False, params=params or {})


def _require(evidence: Membership, theorem: str, what: str) -> bool:
    """True if the class check passed, False if undecidable; raises on violation."""
    if evidence.verdict == "no":
        raise ClassViolationError(f"{theorem}: input is not {what}")
    return evidence.verdict == "yes"


# ---------------------------------------------------------------------------
# equality families


def shifted_power(f: PowerPoly) -> Optional[tuple[Fraction, Optional[Fraction], int]]:
    """(c, r, k) with f = c (x - r)^k, or None.  Constants give r = None."""
    if f.is_zero():
        return None
    k = f.degree
    c = f.leading
    if k == 0:
        return c, None, 0
    r = -f.coeff(k - 1) / (k * c)
    return (c, r, k) if f == c * PowerPoly.linear(r) ** k else None


def is_power_family(f: PowerPoly, d: int, a: RationalLike = -1, b: RationalLike = 1) -> bool:
    """f = c (x - a)^d or f = c (b - x)^d with c != 0."""
    sp = shifted_power(f)
    if sp is None:
        return False
    _, r, k = sp
    if k != d:
        return False
    return k == 0 or r in (as_rational(a), as_rational(b))


def is_markov_family(f: PowerPoly, d: int) -> bool:
    """f = c((1 + x)^d - 2^(d-1)) or f = c((1 - x)^d - 2^(d-1)), c != 0."""
    if d < 1 or f.degree != d:
        return False
    for base in (PowerPoly([1, 1]), PowerPoly([1, -1])):
        g = base**d - 2 ** (d - 1)
        c = f.leading / g.leading
        if f == c * g:
            return True
    return False


# ---------------------------------------------------------------------------
# Nikolskii-type checks


def _nikolskii(theorem: str, f: PowerPoly, d: int, p, q, evidence: Membership, rel_tol: float) -> Verdict:
    p, q = as_exponent(p), as_exponent(q)
    if q == INF or not q < p:
        raise ValueError("need 0 < q < p <= inf")
    params = {"p": p, "q": q, "d": d}
    K = (q * d + 1) / 2
    expo = (1 / q - (0 if p == INF else 1 / p))
    # |f| is nonnegative with no interior zeros for both classes
    g = f if evaluate(f, 0) >= 0 else -f
    family = is_power_family(f, d)
    norm_p = lp_norm(g, p, nonneg=True, rel_tol=rel_tol)
    norm_q = lp_norm(g, q, nonneg=True, rel_tol=rel_tol)
    lhs = norm_p
    bound_val = float(K) ** float(expo)
    exact_bound = _rational_pow(K, expo)
    bound_q = Quantity.exact(exact_bound) if exact_bound is not None else Quantity.approx(bound_val, 1e-14)
    qn = Quantity.from_norm(norm_q)
    rhs = bound_q * qn
    ratio = Quantity.from_norm(norm_p) / qn

    if family and (p == INF or d == 0):
        # c(x +- 1)^d: ||f||_inf = |c| 2^d and ||f||_q^q = |c|^q 2^(qd+1)/(qd+1), so both sides agree;
        # constants (d = 0) give |c| 2^(1/p) on both sides for every p
        return _finish(theorem, d, lhs, rhs, ratio, bound_q, f, evidence, "holds", True,
                       exact=True, family=True, params=params, notes={"path": "closed-form"})

    if q.denominator == 1 and (p == INF or p.denominator == 1) and norm_p.is_exact and norm_q.is_exact:
        P_q = norm_q.power_lo
        if p == INF:
            left, right = norm_p.power_lo ** int(q), K * P_q
        else:
            P_p = norm_p.power_lo
            left = P_p ** int(q)
            right = K ** int(p - q) * P_q ** int(p)
        status = "holds" if left <= right else "fails"
        equal = left == right
        ratio_v = float(ratio.value)
        r = Quantity(ratio_v, ratio.lo, ratio.hi)
        v = _finish(theorem, d, lhs, rhs, r, bound_q, f, evidence, status, equal, exact=True,
                    family=family, params=params, notes={"path": "exact-powers"})
        if not equal:
            v.slack = bound_val - ratio_v
            v.equality_within = v.slack / bound_val
        return v
    return _finish(theorem, d, lhs, rhs, ratio, bound_q, f, evidence, family=family, params=params,
                   notes={"path": "enclosure"})


def _with_retry(fn: Callable[[float], Verdict]) -> Verdict:
    v = fn(QUAD_REL_TOL)
    if v.status == "indeterminate" and not v.exact:
        v = fn(QUAD_REL_TOL / 100)
        v.notes["retried"] = True
    return v


def check_nikolskii_lorentz(f: PowerPoly, d: int, p, q, form: Optional[LorentzForm] = None) -> Verdict:
    """||f||_p <= ((qd+1)/2)^(1/q-1/p) ||f||_q on the nonnegative degree-d Lorentz cone."""
    ev = in_lorentz_class(f, d)
    _require(ev, "thm2.1", f"a nonnegative degree-{d} Lorentz form")
    return _with_retry(lambda tol: _nikolskii("thm2.1", f, d, p, q, ev, tol))


def check_nikolskii_pn0(f: PowerPoly, n: int, p, q, evidence: Optional[PowerPoly] = None) -> Verdict:
    """Same inequality with d = n for polynomials of degree <= n without zeros in |z| < 1."""
    target = evidence if evidence is not None and evidence == f and evidence.factors else f
    ev = zeros_outside_open_disk(target)
    if f.degree > n:
        raise ClassViolationError(f"thm2.2: degree {f.degree} exceeds n = {n}")
    if not _require(ev, "thm2.2", "free of zeros in the open unit disk"):
        return _indeterminate("thm2.2", n, f, ev, {"p": as_exponent(p), "q": as_exponent(q)})
    return _with_retry(lambda tol: _nikolskii("thm2.2", f, n, p, q, ev, tol))


# ---------------------------------------------------------------------------
# Markov-type checks


def _markov(theorem: str, f: PowerPoly, n: int, factor: Fraction, evidence: Membership,
            family: bool = False, notes: Optional[dict] = None) -> Verdict:
    df = derivative(f)
    lhs = sup_norm(df)
    base = sup_norm(f)
    qb = Quantity.from_norm(base)
    ratio = Quantity.from_norm(lhs) / qb
    bound = Quantity.exact(factor)
    rhs = Quantity(float(factor) * float(base.value), factor * qb.lo, factor * qb.hi)
    return _finish(theorem, n, lhs, rhs, ratio, bound, f, evidence, family=family, notes=notes)


def check_markov_deriv_lorentz(f: PowerPoly, d: int) -> Verdict:
    """||f'|| <= d ||f|| when f' is a nonnegative degree-(d-1) Lorentz form."""
    if f.degree > d or d < 1:
        raise ClassViolationError(f"thm2.3: need 1 <= d and deg f <= d (deg f = {f.degree}, d = {d})")
    df = derivative(f)
    ev = in_lorentz_class(df, d - 1)
    _require(ev, "thm2.3", f"an antiderivative of a nonnegative degree-{d - 1} Lorentz form")
    v = _markov("thm2.3", f, d, Fraction(d), ev, family=is_markov_family(f, d))
    # intermediate step: ||f'|| <= (d/2)(f(1) - f(-1)) <= d ||f||
    chain = Fraction(d, 2) * (evaluate(f, 1) - evaluate(f, -1))
    lo, hi = v.lhs.enclosure()
    v.notes["chain_bound"] = chain
    v.notes["chain_holds"] = True if hi <= chain else (False if lo > chain else None)
    return v


def check_markov_deriv_disk(f: PowerPoly, n: int, evidence: Optional[PowerPoly] = None) -> Verdict:
    """||f'|| <= n ||f|| when f' has no zeros in the open unit disk."""
    if f.degree > n:
        raise ClassViolationError(f"thm2.4: degree {f.degree} exceeds n = {n}")
    df = derivative(f)
    if df.is_zero():
        raise ClassViolationError("thm2.4: f' vanishes identically")
    target = evidence if evidence is not None and evidence == df and evidence.factors else df
    ev = zeros_outside_open_disk(target)
    if not _require(ev, "thm2.4", "a polynomial whose derivative has no zeros in the open unit disk"):
        return _indeterminate("thm2.4", n, f, ev)
    return _markov("thm2.4", f, n, Fraction(n), ev, family=is_markov_family(f, n))


def check_markov_monotone_realzeros(f: PowerPoly, n: int, require_real_zeros: bool = True) -> Verdict:
    """||f'|| <= (n/2) ||f|| for monotone f with all zeros real and outside (-1, 1).

    With ``require_real_zeros=False`` only monotonicity is enforced; the bound
    is then false in general, which is what the negative control relies on.
    """
    if f.degree > n or f.degree < 1:
        raise ClassViolationError(f"thm2.5: need 1 <= deg f <= n (deg f = {f.degree}, n = {n})")
    ev = monotone_on_interval(f)
    _require(ev, "thm2.5", "monotone on [-1, 1]")
    notes = {}
    if require_real_zeros:
        ev = real_zeros_outside_interval(f)
        _require(ev, "thm2.5", "a polynomial with all zeros in R \\ (-1, 1)")
    endpoint = evaluate(f, 1) * evaluate(f, -1)
    notes["endpoint_product_nonneg"] = endpoint >= 0
    v = _markov("thm2.5", f, n, Fraction(n, 2), ev, family=is_power_family(f, n), notes=notes)
    if require_real_zeros and endpoint < 0:
        v.status = "fails"
    return v


def erdos_factor(n: int) -> Fraction:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return Fraction(1, 2)
    return Fraction(n, 2) * Fraction(n, n - 1) ** (n - 1)


def check_erdos_factor(f: PowerPoly, n: int) -> Verdict:
    """||f'|| <= (n/2)(n/(n-1))^(n-1) ||f|| for real zeros outside (-1, 1); also compares with en/2."""
    if f.is_zero() or f.degree > n or n < 1:
        raise ClassViolationError(f"erdos: need f != 0 and deg f <= n (deg f = {f.degree}, n = {n})")
    ev = real_zeros_outside_interval(f)
    _require(ev, "erdos", "a polynomial with all zeros in R \\ (-1, 1)")
    factor = erdos_factor(n)
    v = _markov("erdos", f, n, factor, ev)
    scheick = math.e * n / 2
    v.notes["scheick_bound"] = scheick
    v.notes["below_scheick"] = float(v.ratio) <= scheick * (1 + 1e-15)
    v.notes["erdos_below_scheick"] = float(factor) <= scheick
    return v


def bernstein_monotone_bound(n: int) -> Fraction:
    return Fraction((n + 1) ** 2, 4) if n % 2 else Fraction(n * (n + 2), 4)


def check_bernstein_monotone(f: PowerPoly, n: int) -> Verdict:
    """Ratio of a monotone polynomial against the supremum over the monotone class."""
    if f.is_zero() or f.degree > n or n < 1:
        raise ClassViolationError(f"bernstein-monotone: need f != 0 and deg f <= n (deg f = {f.degree})")
    ev = monotone_on_interval(f)
    _require(ev, "bernstein-monotone", "monotone on [-1, 1]")
    return _markov("bernstein-monotone", f, n, bernstein_monotone_bound(n), ev)


# ---------------------------------------------------------------------------
# endpoint and sup-norm lemmas


def _lemma_endpoint(f, d, q, a, b, ev, rel_tol) -> Verdict:
    params = {"q": q, "d": d, "a": a, "b": b}
    factor = (q * d + 1) / (b - a)
    top = max(evaluate(f, a), evaluate(f, b))
    lhs_q = _pow_q(top, q)
    integ = lp_norm(f, q, a, b, nonneg=True, rel_tol=rel_tol)
    I = Quantity(integ.power, integ.power_lo, integ.power_hi)
    ratio = lhs_q / I
    bound = Quantity.exact(factor)
    lhs = NormValue(lhs_q.value, "exact" if lhs_q.is_exact else "quadrature",
                    0.0 if lhs_q.is_exact else float(lhs_q.hi - lhs_q.lo) / 2, q, lhs_q.lo, lhs_q.hi)
    rhs = Quantity(_mul(factor, I.value), factor * I.lo, factor * I.hi)
    if is_power_family(f, d, a, b) and not (ratio.is_exact and bound.is_exact):
        # c(x-a)^d or c(b-x)^d: both sides equal |c|^q (b-a)^(dq)
        return _finish("lem3.3", d, lhs, rhs, ratio, bound, f, ev, "holds", True, exact=True,
                       family=True, params=params, notes={"path": "closed-form"})
    return _finish("lem3.3", d, lhs, rhs, ratio, bound, f, ev, family=is_power_family(f, d, a, b),
                   params=params)


def check_lemma_endpoint(f: PowerPoly, d: int, q, a: RationalLike = -1, b: RationalLike = 1) -> Verdict:
    """max{f(a), f(b)}^q <= (qd+1)/(b-a) * integral_a^b f^q for f nonnegative Lorentz on [a, b]."""
    a, b = as_rational(a), as_rational(b)
    q = as_exponent(q)
    if q == INF:
        raise ValueError("q must be finite")
    ev = in_lorentz_class(f, d, a, b)
    _require(ev, "lem3.3", f"a nonnegative degree-{d} Lorentz form on [{a}, {b}]")
    return _with_retry(lambda tol: _lemma_endpoint(f, d, q, a, b, ev, tol))


def _lemma_sup(f, d, q, ev, rel_tol) -> Verdict:
    params = {"q": q, "d": d}
    factor = (q * d + 1) / 2
    s = sup_norm(f)
    qs = Quantity.from_norm(s)
    if qs.is_exact:
        top = _pow_q(qs.lo, q)
    else:
        top = Quantity(float(s.value) ** float(q), _pow_q(qs.lo, q).lo, _pow_q(qs.hi, q).hi)
    integ = lp_norm(f, q, nonneg=True, rel_tol=rel_tol)
    I = Quantity(integ.power, integ.power_lo, integ.power_hi)
    ratio = top / I
    bound = Quantity.exact(factor)
    rhs = Quantity(float(factor) * float(I.value), factor * I.lo, factor * I.hi)
    family = is_power_family(f, d)
    if family and not (ratio.is_exact and bound.is_exact):
        return _finish("lem3.4", d, s, rhs, ratio, bound, f, ev, "holds", True, exact=True,
                       family=True, params=params, notes={"path": "closed-form"})
    return _finish("lem3.4", d, s, rhs, ratio, bound, f, ev, family=family, params=params)


def check_lemma_supnorm(f: PowerPoly, d: int, q) -> Verdict:
    """||f||_inf^q <= ((qd+1)/2) ||f||_q^q on the nonnegative degree-d Lorentz cone."""
    q = as_exponent(q)
    if q == INF:
        raise ValueError("q must be finite")
    ev = in_lorentz_class(f, d)
    _require(ev, "lem3.4", f"a nonnegative degree-{d} Lorentz form")
    return _with_retry(lambda tol: _lemma_sup(f, d, q, ev, tol))


# ---------------------------------------------------------------------------
# batch driver


@dataclass(frozen=True)
class TheoremInfo:
    id: str
    class_kind: str
    uses_p: bool
    uses_q: bool
    min_n: int
    description: str


THEOREMS: dict[str, TheoremInfo] = {
    t.id: t
    for t in (
        TheoremInfo("thm2.1", "lorentz-nonneg", True, True, 0, "Nikolskii, nonnegative Lorentz forms"),
        TheoremInfo("thm2.2", "zeros-outside-disk", True, True, 0, "Nikolskii, no zeros in the open disk"),
        TheoremInfo("thm2.3", "deriv-lorentz", False, False, 1, "Markov, f' a nonnegative Lorentz form"),
        TheoremInfo("thm2.4", "deriv-zeros-outside-disk", False, False, 1, "Markov, f' without zeros in the open disk"),
        TheoremInfo("thm2.5", "monotone-real-zeros-outside", False, False, 1, "Markov n/2, monotone with real zeros outside"),
        TheoremInfo("lem3.3", "lorentz-nonneg", False, True, 0, "endpoint value vs integral"),
        TheoremInfo("lem3.4", "lorentz-nonneg", False, True, 0, "sup norm vs L_q norm"),
        TheoremInfo("erdos", "real-zeros-outside", False, False, 1, "Erdos factor, real zeros outside"),
        TheoremInfo("bernstein-monotone", "monotone-only", False, False, 1, "Bernstein monotone supremum"),
    )
}

DEFAULT_QS = (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3))
# interval endpoints drawn for the endpoint lemma
LEMMA_ENDPOINTS = (Fraction(-3), Fraction(-2), Fraction(-1), Fraction(-1, 2), Fraction(0),
                   Fraction(1, 3), Fraction(1), Fraction(5, 2))


def default_ps(q: Fraction) -> list:
    out = []
    for p in (q + Fraction(1, 2), 2 * q, INF):
        if p not in out:
            out.append(p)
    return out


def trial_grid(theorem: str, n_values: Sequence[int], qs: Sequence = DEFAULT_QS,
               ps: Optional[Sequence] = None) -> list[dict]:
    """Parameter combinations cycled through by the trials of one theorem."""
    info = THEOREMS[theorem]
    grid = []
    for n in n_values:
        if n < info.min_n:
            continue
        if info.uses_p:
            for q in qs:
                q = as_exponent(q)
                for p in (default_ps(q) if ps is None else [as_exponent(x) for x in ps]):
                    if q < p:
                        grid.append({"n": n, "q": q, "p": p})
        elif info.uses_q:
            for q in qs:
                grid.append({"n": n, "q": as_exponent(q)})
        else:
            grid.append({"n": n})
    if not grid:
        raise ValueError(f"no admissible parameters for {theorem}")
    return grid


def _lemma_interval(seed: int) -> tuple[Fraction, Fraction]:
    import random

    rng = random.Random(seed ^ 0x5EED)
    a, b = sorted(rng.sample(LEMMA_ENDPOINTS, 2))
    return a, b


def run_check(theorem: str, smp: Sample, params: dict, negative_control: bool = False) -> Verdict:
    """Apply the checker for ``theorem`` to one generated sample."""
    f, n = smp.poly, params["n"]
    if theorem == "thm2.1":
        return check_nikolskii_lorentz(f, n, params["p"], params["q"], form=smp.form)
    if theorem == "thm2.2":
        return check_nikolskii_pn0(f, n, params["p"], params["q"], evidence=smp.evidence)
    if theorem == "thm2.3":
        return check_markov_deriv_lorentz(f, n)
    if theorem == "thm2.4":
        return check_markov_deriv_disk(f, n, evidence=smp.evidence)
    if theorem == "thm2.5":
        return check_markov_monotone_realzeros(f, n, require_real_zeros=not negative_control)
    if theorem == "lem3.3":
        a, b = params["a"], params["b"]
        L = LorentzForm(a, b, smp.form.coeffs)
        v = check_lemma_endpoint(to_power(L), n, params["q"], a, b)
        return v
    if theorem == "lem3.4":
        return check_lemma_supnorm(f, n, params["q"])
    if theorem == "erdos":
        return check_erdos_factor(f, n)
    if theorem == "bernstein-monotone":
        return check_bernstein_monotone(f, n)
    raise ValueError(f"unknown theorem {theorem!r}")


@dataclass
class TrialRecord:
    theorem: str
    index: int
    seed: int
    n: int
    params: dict
    status: str
    ratio: Number
    bound: Number
    slack: Number
    equality_within: Number
    equality: bool
    exact: bool
    witness: PowerPoly
    class_kind: str
    error: Optional[str] = None
    ratio_error: float = 0.0
    evidence: Optional[PowerPoly] = None  # factor-carrying f or f' behind the class check


def run_trial(theorem: str, index: int, seed: int, grid: list[dict], negative_control: bool = False) -> TrialRecord:
    params = dict(grid[index % len(grid)])
    trial_seed = seed + index
    kind = "monotone-only" if negative_control else THEOREMS[theorem].class_kind
    smp = sample(ClassTag(kind, params["n"]), seed=trial_seed)
    if theorem == "lem3.3":
        params["a"], params["b"] = _lemma_interval(trial_seed)
    try:
        v = run_check(theorem, smp, params, negative_control)
    except ClassViolationError as exc:
        # generators are constructive, so this is an implementation bug
        return TrialRecord(theorem, index, trial_seed, params["n"], params, "fails", float("nan"),
                           float("nan"), float("nan"), float("nan"), False, False, smp.poly, kind, str(exc),
                           evidence=smp.evidence)
    witness = smp.poly if theorem != "lem3.3" else v.witness
    return TrialRecord(theorem, index, trial_seed, params["n"], params, v.status, v.ratio, v.bound, v.slack,
                       v.equality_within, v.equality, v.exact, witness, kind,
                       ratio_error=0.0 if v.exact else v.ratio_error, evidence=smp.evidence)


def _run_chunk(args) -> list[TrialRecord]:
    theorem, indices, seed, grid, negative_control = args
    return [run_trial(theorem, i, seed, grid, negative_control) for i in indices]


@dataclass
class Report:
    theorem: str
    class_kind: str
    trials: int
    passes: int
    failures: int
    indeterminates: int
    equalities: int
    min_slack: Optional[TrialRecord]
    max_ratio: Optional[TrialRecord]
    max_relative: Optional[TrialRecord]
    failure_witness: Optional[TrialRecord]
    records: list[TrialRecord] = field(repr=False, default_factory=list)
    runtime: float = 0.0
    negative_control: bool = False
    seed: int = 0
    n_values: tuple = ()

    @property
    def ok(self) -> bool:
        return self.failures == 0


def _key_float(x: Number) -> float:
    x = float(x)
    return x if not math.isnan(x) else math.inf


def aggregate(theorem: str, records: Iterable[TrialRecord], **meta) -> Report:
    recs = sorted(records, key=lambda r: r.index)
    decided = [r for r in recs if r.status != "indeterminate" and r.error is None]
    failures = [r for r in recs if r.status == "fails"]
    min_slack = min(decided, key=lambda r: (_key_float(r.slack), r.index), default=None)
    max_ratio = min(decided, key=lambda r: (-_key_float(r.ratio) if not math.isnan(float(r.ratio)) else math.inf, r.index),
                    default=None)
    max_rel = min(decided, key=lambda r: (_key_float(r.equality_within), r.index), default=None)
    kind = recs[0].class_kind if recs else THEOREMS[theorem].class_kind
    return Report(
        theorem=theorem,
        class_kind=kind,
        trials=len(recs),
        passes=sum(r.status == "holds" for r in recs),
        failures=len(failures),
        indeterminates=sum(r.status == "indeterminate" for r in recs),
        equalities=sum(bool(r.equality) for r in recs),
        min_slack=min_slack,
        max_ratio=max_ratio,
        max_relative=max_rel,
        failure_witness=failures[0] if failures else None,
        records=recs,
        **meta,
    )


def batch_verify(
    theorem: str,
    n_values: Sequence[int],
    trials: int,
    seed: int = 0,
    qs: Sequence = DEFAULT_QS,
    ps: Optional[Sequence] = None,
    jobs: int = 1,
    abort_on_failure: bool = True,
    negative_control: bool = False,
) -> Report:
    """Run ``trials`` seeded trials of one checker, cycling through the parameter grid.

    Trial i uses sample seed ``seed + i`` and grid entry ``i mod len(grid)``, so
    results do not depend on ``jobs``.  With ``abort_on_failure`` the run stops
    at the first failing chunk; the report carries the witness.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}")
    if negative_control and theorem != "thm2.5":
        raise ValueError("the negative control applies to thm2.5 only")
    grid = trial_grid(theorem, n_values, qs, ps)
    start = time.perf_counter()
    chunk = max(1, min(50, trials // max(1, 4 * jobs)))
    chunks = [list(range(i, min(i + chunk, trials))) for i in range(0, trials, chunk)]
    records: list[TrialRecord] = []
    args = [(theorem, c, seed, grid, negative_control) for c in chunks]
    if jobs <= 1:
        for a in args:
            out = _run_chunk(a)
            records.extend(out)
            if abort_on_failure and not negative_control and any(r.status == "fails" for r in out):
                break
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for out in pool.map(_run_chunk, args):
                records.extend(out)
                if abort_on_failure and not negative_control and any(r.status == "fails" for r in out):
                    break
    rep = aggregate(theorem, records, negative_control=negative_control, seed=seed, n_values=tuple(n_values))
    rep.runtime = time.perf_counter() - start
    return rep


ALL_THEOREMS = tuple(THEOREMS)
