"""Empirical exploration of the inequalities.

Three experiments live here: ratio maximization over a class (random sampling
or coordinate descent in the constructive parameters), pointwise profiles of
|f'(x)| / ||f|| against constant-free envelopes, and the Lorentz-degree growth
scan for ((x - a)^2 + eps^2 (1 - a^2))^n.  Nothing here decides pass/fail on
an unspecified constant; the numbers are reported as observations.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .classes import ClassTag, Sample, sample
from .errors import ClassViolationError
from .lorentz import LorentzDegreeResult, LorentzForm, from_power, lorentz_degree, to_power
from .norms import sup_norm
from .scalar_poly import (
    PowerPoly,
    RationalLike,
    antiderivative,
    as_rational,
    derivative,
    evaluate,
    from_factors,
    squarefree_decomposition,
)
from .verify import (
    Verdict,
    check_bernstein_monotone,
    check_erdos_factor,
    check_markov_deriv_disk,
    check_markov_deriv_lorentz,
    check_markov_monotone_realzeros,
    check_nikolskii_lorentz,
    check_nikolskii_pn0,
)

STRATEGIES = ("random", "coordinate-descent")
PROFILE_GRID_SIZE = 41
WARMUP = 50

# which inequality each class is searched against
CLASS_THEOREM = {
    "lorentz-nonneg": "thm2.1",
    "zeros-outside-disk": "thm2.2",
    "deriv-lorentz": "thm2.3",
    "deriv-zeros-outside-disk": "thm2.4",
    "monotone-real-zeros-outside": "thm2.5",
    "real-zeros-outside": "erdos",
    "monotone-only": "bernstein-monotone",
}


@dataclass
class SearchResult:
    best_poly: PowerPoly
    best_ratio: float
    bound: float
    iterations: int
    strategy: str
    seed: int
    tag: ClassTag
    theorem: str
    verdict: Optional[Verdict] = field(default=None, repr=False)
    history: list[float] = field(default_factory=list, repr=False)

    @property
    def gap(self) -> float:
        return self.bound - self.best_ratio


def _evaluate(theorem: str, smp: Sample, n: int) -> Verdict:
    f = smp.poly
    if theorem == "thm2.1":
        return check_nikolskii_lorentz(f, n, "inf", 1, form=smp.form)
    if theorem == "thm2.2":
        return check_nikolskii_pn0(f, n, "inf", 1, evidence=smp.evidence)
    if theorem == "thm2.3":
        return check_markov_deriv_lorentz(f, n)
    if theorem == "thm2.4":
        return check_markov_deriv_disk(f, n, evidence=smp.evidence)
    if theorem == "thm2.5":
        return check_markov_monotone_realzeros(f, n)
    if theorem == "erdos":
        return check_erdos_factor(f, n)
    if theorem == "bernstein-monotone":
        return check_bernstein_monotone(f, n)
    raise ValueError(f"no search objective for {theorem!r}")


# ---------------------------------------------------------------------------
# constructive parameters
#
# A parameter vector is a flat list of rationals; ``_Layout`` records how the
# entries map back onto a polynomial of the class.


@dataclass(frozen=True)
class _Layout:
    kind: str
    n: int
    n_real: int = 0
    n_pairs: int = 0
    n_s: int = 0
    sign: int = 1


def _split_factors(fac) -> tuple[list[Fraction], list[tuple[Fraction, Fraction]]]:
    reals = [r for r, m in fac.real_roots for _ in range(m)]
    pairs = [z for z, m in fac.complex_pairs for _ in range(m)]
    return reals, pairs


def _factor_vector(fac) -> tuple[list[Fraction], int, int]:
    reals, pairs = _split_factors(fac)
    vec = [fac.leading, *reals]
    for re, im in pairs:
        vec += [re, im]
    return vec, len(reals), len(pairs)


def _rational_factors(g: PowerPoly):
    """Factor g over the rationals and Gaussian-rational pairs, if it splits that way."""
    if g.factors is not None:
        return g.factors
    if g.degree < 1:
        return from_factors([], [], g.leading).factors
    reals, pairs = [], []
    for m, part in enumerate(squarefree_decomposition(g), start=1):
        if part.degree < 1:
            continue
        for z in np.roots([float(c) for c in reversed(part.coeffs)]):
            if abs(z.imag) < 1e-9 * max(1.0, abs(z)):
                reals.append((Fraction(float(z.real)).limit_denominator(10**4), m))
            elif z.imag > 0:
                pairs.append(((Fraction(float(z.real)).limit_denominator(10**4),
                               Fraction(float(z.imag)).limit_denominator(10**4)), m))
    h = from_factors(reals, pairs, g.leading)
    if h != g:
        raise ValueError(f"cannot recover a rational factorization of {g}")
    return h.factors


def _vector_from_sample(smp: Sample) -> tuple[_Layout, list[Fraction]]:
    kind, n = smp.tag.kind, smp.tag.n
    f = smp.poly
    if kind == "lorentz-nonneg":
        return _Layout(kind, n), list(smp.form.coeffs)
    if kind == "deriv-lorentz":
        return _Layout(kind, n), [f.coeff(0), *smp.form.coeffs]
    if kind in ("zeros-outside-disk", "real-zeros-outside", "monotone-real-zeros-outside"):
        vec, k, m = _factor_vector(smp.evidence.factors)
        return _Layout(kind, n, k, m), vec
    if kind == "deriv-zeros-outside-disk":
        vec, k, m = _factor_vector(smp.evidence.factors)
        return _Layout(kind, n, k, m), [f.coeff(0), *vec]
    if kind == "monotone-only":
        p = smp.params
        s = list(p["s"])
        return _Layout(kind, n, n_s=len(s), sign=p["sign"]), [f.coeff(0), *s, *p["form"].coeffs]
    raise AssertionError(kind)


def _sample_from_poly(tag: ClassTag, f: PowerPoly) -> Sample:
    """Wrap a user-supplied polynomial with the construction data its class needs."""
    kind, n = tag.kind, tag.n
    if kind == "lorentz-nonneg":
        L = from_power(f, n)
        if not L.is_nonneg():
            raise ClassViolationError(f"{f} has no nonnegative degree-{n} Lorentz form")
        return Sample(tag, 0, f, form=L)
    if kind == "deriv-lorentz":
        L = from_power(derivative(f), n - 1)
        if not L.is_nonneg():
            raise ClassViolationError(f"{f}' has no nonnegative degree-{n - 1} Lorentz form")
        return Sample(tag, 0, f, form=L)
    if kind in ("zeros-outside-disk", "real-zeros-outside", "monotone-real-zeros-outside"):
        fac = _rational_factors(f)
        return Sample(tag, 0, f, evidence=from_factors(fac.real_roots, fac.complex_pairs, fac.leading))
    if kind == "deriv-zeros-outside-disk":
        fac = _rational_factors(derivative(f))
        return Sample(tag, 0, f, evidence=from_factors(fac.real_roots, fac.complex_pairs, fac.leading))
    if kind == "monotone-only":
        df = derivative(f)
        sign = -1 if evaluate(df, 0) < 0 or (evaluate(df, 0) == 0 and df.leading < 0) else 1
        L = from_power(sign * df, n - 1)
        if not L.is_nonneg():
            raise ClassViolationError(f"{f}' is not a signed nonnegative degree-{n - 1} Lorentz form")
        return Sample(tag, 0, f, params={"s": (Fraction(1),), "form": L, "sign": sign})
    raise AssertionError(kind)


def _build(layout: _Layout, vec: Sequence[Fraction], tag: ClassTag, seed: int) -> Optional[Sample]:
    """Polynomial for a parameter vector, or None when the vector leaves the class."""
    kind, n = layout.kind, layout.n
    if kind == "lorentz-nonneg":
        if any(c < 0 for c in vec) or not any(vec):
            return None
        L = LorentzForm(-1, 1, tuple(vec))
        return Sample(tag, seed, to_power(L), form=L)
    if kind == "deriv-lorentz":
        cs = vec[1:]
        if any(c < 0 for c in cs) or not any(cs):
            return None
        L = LorentzForm(-1, 1, tuple(cs))
        return Sample(tag, seed, antiderivative(to_power(L), vec[0]), form=L)
    if kind == "monotone-only":
        s = PowerPoly(vec[1:1 + layout.n_s])
        cs = vec[1 + layout.n_s:]
        if s.is_zero() or any(c < 0 for c in cs) or not any(cs):
            return None
        L = LorentzForm(-1, 1, tuple(cs))
        df = layout.sign * s * s * to_power(L)
        f = antiderivative(df, vec[0])
        return Sample(tag, seed, f, params={"s": s.coeffs, "form": L, "sign": layout.sign})
    offset = 1 if kind == "deriv-zeros-outside-disk" else 0
    lead = vec[offset]
    reals = vec[offset + 1:offset + 1 + layout.n_real]
    flat = vec[offset + 1 + layout.n_real:]
    pairs = [(flat[2 * i], flat[2 * i + 1]) for i in range(layout.n_pairs)]
    if lead == 0 or any(abs(r) < 1 for r in reals):
        return None
    if any(im <= 0 or re * re + im * im < 1 for re, im in pairs):
        return None
    g = from_factors([(r, 1) for r in reals], [(z, 1) for z in pairs], lead)
    if kind == "deriv-zeros-outside-disk":
        return Sample(tag, seed, antiderivative(g, vec[0]), evidence=g)
    return Sample(tag, seed, g, evidence=g)


def _score(theorem: str, smp: Optional[Sample], n: int) -> Optional[Verdict]:
    if smp is None:
        return None
    try:
        return _evaluate(theorem, smp, n)
    except (ClassViolationError, ZeroDivisionError):
        return None


# ---------------------------------------------------------------------------
# ratio maximization


def maximize_ratio(
    tag,
    n: Optional[int] = None,
    strategy: str = "random",
    iterations: int = 1000,
    seed: int = 0,
    start: Optional[PowerPoly] = None,
) -> SearchResult:
    """Largest observed ratio of the class's Markov or Nikolskii inequality.

    ``random`` keeps the best of ``iterations`` generator draws.
    ``coordinate-descent`` starts from ``start`` (or a seeded draw) and moves
    one constructive parameter at a time by a shrinking rational step, keeping
    only improvements; every iterate is rebuilt from its parameters and
    re-checked for class membership.
    """
    if isinstance(tag, str):
        tag = ClassTag(tag, n)
    elif n is not None:
        tag = ClassTag(tag.kind, n)
    n = tag.n
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    if strategy not in STRATEGIES:
        raise ValueError(f"strategy must be one of {STRATEGIES}")
    theorem = CLASS_THEOREM[tag.kind]

    best: Optional[Verdict] = None
    best_smp: Optional[Sample] = None
    history: list[float] = []

    def better(v: Optional[Verdict]) -> bool:
        return v is not None and (best is None or float(v.ratio) > float(best.ratio))

    if start is not None:
        best_smp = _sample_from_poly(tag, start)
        best = _evaluate(theorem, best_smp, n)
    if strategy == "random":
        for i in range(iterations):
            smp = sample(tag, seed=seed + i)
            v = _score(theorem, smp, n)
            if better(v):
                best, best_smp = v, smp
            history.append(float(best.ratio) if best else float("nan"))
    else:
        rng = random.Random(seed)
        if best_smp is None:
            # warm start from the best of a few draws
            for i in range(max(1, min(WARMUP, iterations // 10))):
                smp = sample(tag, seed=seed + i)
                v = _score(theorem, smp, n)
                if better(v):
                    best, best_smp = v, smp
        layout, vec = _vector_from_sample(best_smp)
        step = Fraction(1, 2)
        misses = 0
        for i in range(iterations):
            k = i % len(vec)
            direction = 1 if rng.random() < 0.5 else -1
            delta = step * max(abs(vec[k]), Fraction(1, 4)) * direction
            trial = list(vec)
            trial[k] = (vec[k] + delta).limit_denominator(2**16)
            v = _score(theorem, _build(layout, trial, tag, seed), n)
            if better(v):
                vec, best, best_smp = trial, v, _build(layout, trial, tag, seed)
                misses = 0
            else:
                misses += 1
                if misses >= 2 * len(vec):
                    step = step / 2 if step > Fraction(1, 2**14) else Fraction(1, 2)
                    misses = 0
            history.append(float(best.ratio))
    if best is None:
        raise ValueError(f"no admissible polynomial found for {tag}")
    return SearchResult(best_smp.poly, float(best.ratio), float(best.bound), iterations, strategy, seed,
                        tag, theorem, best, history)


@dataclass
class ViolationResult:
    """Outcome of the monotone-only negative control against the n/2 bound."""

    found: bool
    n: Optional[int]
    poly: Optional[PowerPoly]
    ratio: Optional[float]
    bound: Optional[float]
    iterations: int
    seed: int


def find_monotone_violation(n_max: int = 6, iterations: int = 10**4, seed: int = 0,
                            n_min: int = 2) -> ViolationResult:
    """Search monotone polynomials (no zero hypothesis) for ||f'|| > (n/2)||f||.

    Degrees are cycled through n_min..n_max.  A hit shows that dropping the
    real-zeros hypothesis breaks the n/2 bound and that the harness notices.
    """
    ns = list(range(n_min, n_max + 1))
    for i in range(iterations):
        n = ns[i % len(ns)]
        smp = sample(ClassTag("monotone-only", n), seed=seed + i)
        v = check_markov_monotone_realzeros(smp.poly, n, require_real_zeros=False)
        if v.status == "fails":
            return ViolationResult(True, n, smp.poly, float(v.ratio), float(v.bound), i + 1, seed)
    return ViolationResult(False, None, None, None, None, iterations, seed)


# ---------------------------------------------------------------------------
# pointwise profiles


def chebyshev_grid(size: int = PROFILE_GRID_SIZE) -> list[float]:
    """Chebyshev points cos((2k+1)pi/(2m)), ascending, all inside (-1, 1)."""
    pts = (math.cos((2 * k + 1) * math.pi / (2 * size)) for k in range(size))
    return sorted(0.0 if abs(x) < 1e-15 else x for x in pts)


def erdos_envelope(n: int, x: float) -> float:
    return min(math.sqrt(n) / (1 - x * x) ** 2, n)


def lorentz_envelope(n: int, x: float) -> float:
    return min(math.sqrt(n / (1 - x * x)), n)


_LORENTZ_KINDS = ("lorentz-nonneg", "deriv-lorentz")


@dataclass
class ProfileRow:
    x: float
    max_ratio: float
    envelope: float
    c_emp: float


@dataclass
class Profile:
    tag: ClassTag
    trials: int
    seed: int
    envelope: str
    rows: list[ProfileRow]

    @property
    def c_emp_max(self) -> float:
        return max(r.c_emp for r in self.rows)


def pointwise_profile(tag, n: Optional[int] = None, trials: int = 200, grid: Optional[Sequence[float]] = None,
                      seed: int = 0) -> Profile:
    """Largest |f'(x)| / ||f|| seen at each grid point over seeded draws from the class."""
    if isinstance(tag, str):
        tag = ClassTag(tag, n)
    elif n is not None:
        tag = ClassTag(tag.kind, n)
    n = tag.n
    xs = list(chebyshev_grid() if grid is None else grid)
    if any(not -1 < x < 1 for x in xs):
        raise ValueError("profile grid points must lie strictly inside (-1, 1)")
    lorentz_like = tag.kind in _LORENTZ_KINDS
    env = lorentz_envelope if lorentz_like else erdos_envelope
    best = [0.0] * len(xs)
    for i in range(trials):
        f = sample(tag, seed=seed + i).poly
        if f.is_zero():
            continue
        norm = float(sup_norm(f).value)
        df = derivative(f)
        vals = np.abs(np.polyval([float(c) for c in reversed(df.coeffs)] or [0.0], xs)) / norm
        best = [max(b, float(v)) for b, v in zip(best, vals)]
    rows = [ProfileRow(x, r, env(n, x), r / env(n, x)) for x, r in zip(xs, best)]
    return Profile(tag, trials, seed, "lorentz" if lorentz_like else "erdos", rows)


# ---------------------------------------------------------------------------
# Lorentz degree growth


@dataclass
class DegreeGrowthRow:
    n: int
    a: Fraction
    eps: Fraction
    d_found: LorentzDegreeResult

    @property
    def status(self) -> str:
        return self.d_found.outcome

    @property
    def normalized(self) -> Optional[float]:
        if self.d_found.outcome != "finite":
            return None
        return float(self.d_found.d * self.eps**2 / self.n)


def growth_polynomial(n: int, a: RationalLike, eps: RationalLike) -> PowerPoly:
    """((x - a)^2 + eps^2 (1 - a^2))^n."""
    a, eps = as_rational(a), as_rational(eps)
    base = PowerPoly([a * a + eps * eps * (1 - a * a), -2 * a, 1])
    return base**n


def growth_cap(n: int, eps: RationalLike) -> int:
    eps = as_rational(eps)
    return math.ceil(10 * n / (eps * eps))


def degree_growth_experiment(n_list: Sequence[int], a_list: Sequence[RationalLike],
                             eps_list: Sequence[RationalLike]) -> list[DegreeGrowthRow]:
    """Lorentz degree of the growth family over every (n, a, eps) combination."""
    rows = []
    for n in n_list:
        if n < 1:
            raise ValueError("n must be >= 1")
        for a in a_list:
            a = as_rational(a)
            if not -1 < a < 1:
                raise ValueError("need -1 < a < 1")
            for eps in eps_list:
                eps = as_rational(eps)
                if not 0 < eps <= 1:
                    raise ValueError("need 0 < eps <= 1")
                p = growth_polynomial(n, a, eps)
                rows.append(DegreeGrowthRow(n, a, eps, lorentz_degree(p, cap=max(growth_cap(n, eps), 2 * n))))
    return rows


def normalized_band(rows: Sequence[DegreeGrowthRow]) -> Optional[tuple[float, float]]:
    """(min, max) of the normalized degrees over the resolved rows."""
    vals = [r.normalized for r in rows if r.normalized is not None]
    if not vals:
        return None
    return min(vals), max(vals)


def band_within(rows: Sequence[DegreeGrowthRow], factor: float = 4.0) -> bool:
    band = normalized_band(rows)
    return band is not None and all(r.status == "finite" for r in rows) and band[1] <= factor * band[0]
