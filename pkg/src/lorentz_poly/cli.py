"""Command-line front end.

Exit codes: 0 on success, 1 when a check fails (the witness is written with
the report), 2 on a configuration or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import serialize as ser
from .classes import KINDS, ClassTag
from .errors import LorentzPolyError
from .lorentz import default_cap, lorentz_degree
from .scalar_poly import PowerPoly, from_factors
from .search import (
    STRATEGIES,
    band_within,
    degree_growth_experiment,
    growth_cap,
    growth_polynomial,
    maximize_ratio,
    normalized_band,
    pointwise_profile,
)
from .verify import (
    ALL_THEOREMS,
    DEFAULT_QS,
    THEOREMS,
    batch_verify,
    check_bernstein_monotone,
    check_erdos_factor,
    check_lemma_endpoint,
    check_lemma_supnorm,
    check_markov_deriv_disk,
    check_markov_deriv_lorentz,
    check_markov_monotone_realzeros,
    check_nikolskii_lorentz,
    check_nikolskii_pn0,
)

DEFAULT_SEED = 0
DEFAULT_N = "1..8"
DEFAULT_TRIALS = 100
DEFAULT_INDETERMINATE_BUDGET = 0.01
SEED_ENV = "LORENTZ_POLY_SEED"


class ConfigError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument parsing helpers


def parse_n_range(text: str) -> list[int]:
    """'2..8' (inclusive), '1,3,5' or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad n range {text!r}") from exc
    if not out or min(out) < 0:
        raise ConfigError(f"bad n range {text!r}")
    return out


def parse_list(text: str, item=ser.parse_rational) -> list:
    try:
        return [item(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def parse_coeffs(text: str) -> PowerPoly:
    """Comma-separated rationals, constant term first."""
    return PowerPoly(parse_list(text))


def parse_factors(text: str) -> PowerPoly:
    """'lead=2;real=-2,3/2^2;pairs=1/2:1' with optional ^multiplicity on each root."""
    lead, reals, pairs = Fraction(1), [], []
    for part in text.split(";"):
        if not part.strip():
            continue
        key, _, val = part.partition("=")
        key = key.strip()
        items = [t.strip() for t in val.split(",") if t.strip()]
        try:
            if key == "lead":
                lead = ser.parse_rational(val)
            elif key == "real":
                for t in items:
                    root, _, m = t.partition("^")
                    reals.append((ser.parse_rational(root), int(m or 1)))
            elif key == "pairs":
                for t in items:
                    z, _, m = t.partition("^")
                    re, _, im = z.partition(":")
                    pairs.append(((ser.parse_rational(re), ser.parse_rational(im)), int(m or 1)))
            else:
                raise ConfigError(f"unknown factor key {key!r}; expected lead, real or pairs")
        except ValueError as exc:
            raise ConfigError(f"bad factor list {text!r}: {exc}") from exc
    try:
        return from_factors(reals, pairs, lead)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def parse_family(text: str) -> tuple[int, Fraction, Fraction]:
    """'n=1,a=0,eps=1/4'."""
    vals = {}
    for part in text.split(","):
        key, _, val = part.partition("=")
        vals[key.strip()] = val.strip()
    try:
        n = int(vals["n"])
        a = ser.parse_rational(vals.get("a", "0"))
        eps = ser.parse_rational(vals["eps"])
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"bad family {text!r}; expected n=<int>,a=<rational>,eps=<rational>") from exc
    if n < 1 or not -1 < a < 1 or not 0 < eps <= 1:
        raise ConfigError("family needs n >= 1, -1 < a < 1 and 0 < eps <= 1")
    return n, a, eps


def default_seed() -> int:
    env = os.environ.get(SEED_ENV)
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError as exc:
        raise ConfigError(f"{SEED_ENV} must be an integer, got {env!r}") from exc


def emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# verify


def recheck_witness(data: dict):
    """Re-run the checker named in a witness record."""
    theorem, n = data["theorem"], int(data["n"])
    if theorem not in THEOREMS:
        raise ConfigError(f"unknown theorem {theorem!r} in witness")
    f = PowerPoly([ser.parse_rational(c) for c in data["coeffs"]])
    params = data.get("params", {})
    evidence = None
    if "factors" in data:
        evidence = ser.factors_from_json(data["factors"])
        if data.get("factors_of", "f") == "f":
            if evidence != f:
                raise ConfigError("witness factor list does not match its coefficients")
            f = evidence
    p = ser.parse_exponent(params["p"]) if "p" in params else None
    q = ser.parse_exponent(params["q"]) if "q" in params else None
    if theorem == "thm2.1":
        return check_nikolskii_lorentz(f, n, p, q)
    if theorem == "thm2.2":
        return check_nikolskii_pn0(f, n, p, q, evidence=evidence)
    if theorem == "thm2.3":
        return check_markov_deriv_lorentz(f, n)
    if theorem == "thm2.4":
        return check_markov_deriv_disk(f, n, evidence=evidence)
    if theorem == "thm2.5":
        return check_markov_monotone_realzeros(f, n, require_real_zeros=data.get("class") != "monotone-only")
    if theorem == "lem3.3":
        a = ser.parse_rational(params.get("a", "-1"))
        b = ser.parse_rational(params.get("b", "1"))
        return check_lemma_endpoint(f, n, q, a, b)
    if theorem == "lem3.4":
        return check_lemma_supnorm(f, n, q)
    if theorem == "erdos":
        return check_erdos_factor(f, n)
    return check_bernstein_monotone(f, n)


def _verify_witness(args) -> int:
    try:
        with open(args.witness, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read witness file: {exc}") from exc
    v = recheck_witness(data)
    out = {
        "theorem": v.theorem,
        "n": v.n,
        "status": v.status,
        "ratio": ser.number_json(v.ratio, v.ratio_error),
        "bound": ser.number_json(v.bound),
        "equality": v.equality,
    }
    if args.format == "json":
        emit(ser.dumps(out), args.output)
    else:
        emit(f"{v.theorem} n={v.n}: {v.status} ratio={ser.scalar_str(v.ratio)} bound={ser.scalar_str(v.bound)}\n",
             args.output)
    return 0 if v.status == "holds" else 1


def cmd_verify(args) -> int:
    if args.witness:
        return _verify_witness(args)
    if args.selector is None:
        raise ConfigError("verify needs a theorem selector or --witness")
    if args.selector == "all":
        theorems = list(ALL_THEOREMS)
    elif args.selector in THEOREMS:
        theorems = [args.selector]
    else:
        raise ConfigError(f"unknown selector {args.selector!r}; choose from {', '.join(ALL_THEOREMS)}, all")
    negative = args.negative_control is not None
    if negative and theorems != ["thm2.5"]:
        raise ConfigError("--negative-control applies to thm2.5 only")
    if args.trials < 1:
        raise ConfigError("--trials must be >= 1")
    n_values = parse_n_range(args.n)
    qs = parse_list(args.q, ser.parse_exponent) if args.q else list(DEFAULT_QS)
    ps = parse_list(args.p, ser.parse_exponent) if args.p else None
    seed = args.seed if args.seed is not None else default_seed()
    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)

    reports = []
    for t in theorems:
        try:
            reports.append(batch_verify(t, n_values, args.trials, seed=seed, qs=qs, ps=ps, jobs=jobs,
                                        negative_control=negative))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    if negative:
        rep = reports[0]
        ok = rep.failures > 0
        note = ("violation found in the weakened class, as expected" if ok
                else "no violation found in the weakened class")
    else:
        budget = args.max_indeterminate
        ok = all(r.failures == 0 and r.indeterminates <= budget * r.trials for r in reports)
        note = None

    if args.format == "json":
        doc = {"seed": seed, "reports": [ser.report_json(r, args.records, args.timing) for r in reports]}
        if note:
            doc["note"] = note
        emit(ser.dumps(doc), args.output)
    elif args.format == "csv":
        emit(ser.reports_csv(reports), args.output)
    else:
        lines = []
        for r in reports:
            top = r.max_ratio
            lines.append(
                f"{r.theorem:<20} trials={r.trials} pass={r.passes} fail={r.failures} "
                f"indeterminate={r.indeterminates} equalities={r.equalities} "
                f"max_ratio={ser.scalar_str(top.ratio) if top else '-'}"
            )
        if note:
            lines.append(note)
        emit("\n".join(lines) + "\n", args.output)

    if not negative:
        for r in reports:
            if r.failure_witness is not None:
                sys.stderr.write(f"failure in {r.theorem}; witness:\n")
                sys.stderr.write(ser.dumps(ser.witness_json(r.failure_witness)))
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# degree


def cmd_degree(args) -> int:
    given = [x is not None for x in (args.coeffs, args.factors, args.family)]
    if sum(given) != 1:
        raise ConfigError("give exactly one of --coeffs, --factors, --family")
    a, b = parse_list(args.interval)
    family = None
    if args.coeffs is not None:
        f = parse_coeffs(args.coeffs)
    elif args.factors is not None:
        f = parse_factors(args.factors)
    else:
        family = parse_family(args.family)
        f = growth_polynomial(*family)
        a, b = Fraction(-1), Fraction(1)
    if f.is_zero():
        raise ConfigError("the zero polynomial has no Lorentz degree")
    cap = args.cap
    if cap is None:
        cap = max(growth_cap(family[0], family[2]), f.degree) if family else default_cap(f.degree)
    res = lorentz_degree(f, a, b, cap=cap)
    normalized = None
    if family and res.outcome == "finite":
        normalized = Fraction(res.d) * family[2] ** 2 / family[0]
    if args.format == "json":
        doc = ser.degree_json(res, with_coeffs=args.show_coeffs)
        doc["poly"] = ser.poly_json(f)
        if normalized is not None:
            doc["normalized"] = ser.float_str(normalized)
        emit(ser.dumps(doc), args.output)
    else:
        lines = [str(res)]
        if normalized is not None:
            lines.append(f"normalized {ser.float_str(normalized)}")
        if args.show_coeffs and res.outcome == "finite":
            sign = "" if res.sign > 0 else " (of -f)"
            lines.append("coeffs" + sign + " " + ",".join(ser.rational_str(c) for c in res.form.coeffs))
        emit("\n".join(lines) + "\n", args.output)
    return 0


# ---------------------------------------------------------------------------
# experiments


def _tag(args) -> ClassTag:
    try:
        return ClassTag(args.cls, args.n)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_search(args) -> int:
    tag = _tag(args)
    seed = args.seed if args.seed is not None else default_seed()
    start = parse_coeffs(args.start) if args.start else None
    res = maximize_ratio(tag, strategy=args.strategy, iterations=args.iters, seed=seed, start=start)
    if args.format == "json":
        emit(ser.dumps(ser.search_json(res)), args.output)
    else:
        emit(
            f"class={res.tag.kind} n={res.tag.n} theorem={res.theorem} strategy={res.strategy}\n"
            f"best_ratio={ser.float_str(res.best_ratio)} bound={ser.float_str(res.bound)} "
            f"gap={ser.float_str(res.gap)}\n"
            f"best_poly={','.join(ser.rational_str(c) for c in res.best_poly.coeffs)}\n",
            args.output,
        )
    return 0


def cmd_profile(args) -> int:
    tag = _tag(args)
    seed = args.seed if args.seed is not None else default_seed()
    prof = pointwise_profile(tag, trials=args.trials, seed=seed)
    if args.format == "json":
        emit(ser.dumps(ser.profile_json(prof)), args.output)
    else:
        emit(ser.profile_csv(prof), args.output)
        sys.stderr.write(f"envelope={prof.envelope} c_emp_max={ser.float_str(prof.c_emp_max)}\n")
    return 0


def cmd_growth(args) -> int:
    ns = [int(x) for x in parse_list(args.n)]
    rows = degree_growth_experiment(ns, parse_list(args.a), parse_list(args.eps))
    if args.format == "json":
        band = normalized_band(rows)
        doc = {"rows": ser.growth_json(rows),
               "band": None if band is None else [ser.float_str(band[0]), ser.float_str(band[1])],
               "within_factor_4": band_within(rows)}
        emit(ser.dumps(doc), args.output)
    else:
        emit(ser.growth_csv(rows), args.output)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(prog="lorentz-poly", description="Exact checks of polynomial inequalities.",
                                     formatter_class=fmt)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="randomized verification of one or all checkers", formatter_class=fmt)
    v.add_argument("selector", nargs="?", help=f"one of {', '.join(ALL_THEOREMS)}, all")
    v.add_argument("--n", default=DEFAULT_N, help="degrees: 'lo..hi', a comma list or one integer")
    v.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="trials per checker")
    v.add_argument("--seed", type=int, default=None,
                   help=f"base seed (default {DEFAULT_SEED}, or ${SEED_ENV} when set)")
    v.add_argument("--q", default=None, help="comma list of q values (default 1/2,1,2,3)")
    v.add_argument("--p", default=None, help="comma list of p values, 'inf' allowed (default q+1/2, 2q, inf)")
    v.add_argument("--jobs", type=int, default=None, help="worker processes (default: number of cores)")
    v.add_argument("--format", choices=("json", "csv", "text"), default="text")
    v.add_argument("--output", default=None, help="write the report here instead of stdout")
    v.add_argument("--negative-control", choices=("monotone-only",), default=None,
                   help="run thm2.5 on the weakened class; success means a violation was found")
    v.add_argument("--witness", default=None, help="re-check a witness JSON file instead of sampling")
    v.add_argument("--max-indeterminate", type=float, default=DEFAULT_INDETERMINATE_BUDGET,
                   help="allowed fraction of indeterminate trials per checker")
    v.add_argument("--records", action="store_true", help="include every trial in JSON output")
    v.add_argument("--timing", action="store_true", help="include wall-clock runtime in JSON output")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("degree", help="Lorentz degree of a polynomial", formatter_class=fmt)
    d.add_argument("--coeffs", default=None, help="rational coefficients, constant term first, e.g. 1,0,1")
    d.add_argument("--factors", default=None, help="e.g. 'lead=2;real=-2,3/2^2;pairs=1/2:1'")
    d.add_argument("--family", default=None, help="((x-a)^2 + eps^2(1-a^2))^n as n=1,a=0,eps=1/4")
    d.add_argument("--interval", default="-1,1", help="a,b")
    d.add_argument("--cap", type=int, default=None, help="largest degree scanned (default 64 deg f, or ceil(10n/eps^2))")
    d.add_argument("--show-coeffs", action="store_true", help="print the nonnegative coefficients found")
    d.add_argument("--format", choices=("json", "text"), default="text")
    d.add_argument("--output", default=None)
    d.set_defaults(func=cmd_degree)

    s = sub.add_parser("search", help="maximize a Markov or Nikolskii ratio over a class", formatter_class=fmt)
    s.add_argument("--class", dest="cls", required=True, help=f"one of {', '.join(KINDS)} (or an alias)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--iters", type=int, default=1000)
    s.add_argument("--strategy", choices=STRATEGIES, default="random")
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--start", default=None, help="starting polynomial coefficients for coordinate descent")
    s.add_argument("--format", choices=("json", "text"), default="text")
    s.add_argument("--output", default=None)
    s.set_defaults(func=cmd_search)

    pr = sub.add_parser("profile", help="pointwise |f'(x)|/||f|| profile on a Chebyshev grid", formatter_class=fmt)
    pr.add_argument("--class", dest="cls", required=True)
    pr.add_argument("--n", type=int, required=True)
    pr.add_argument("--trials", type=int, default=200)
    pr.add_argument("--seed", type=int, default=None)
    pr.add_argument("--format", choices=("json", "csv"), default="csv")
    pr.add_argument("--output", default=None)
    pr.set_defaults(func=cmd_profile)

    g = sub.add_parser("growth", help="Lorentz degree growth experiment", formatter_class=fmt)
    g.add_argument("--n", default="1", help="comma list of n")
    g.add_argument("--a", default="0", help="comma list of centres a in (-1, 1)")
    g.add_argument("--eps", default="1,1/2,1/4,1/8", help="comma list of eps in (0, 1]")
    g.add_argument("--format", choices=("json", "csv"), default="csv")
    g.add_argument("--output", default=None)
    g.set_defaults(func=cmd_growth)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, LorentzPolyError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
