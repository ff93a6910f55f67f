"""JSON and CSV encodings shared by the command line and the tests.

Rationals are written as "num/den" strings.  Floats use 17 significant digits
so output is byte-stable, and every reported number carries its ``mode``
(exact or quadrature) and an ``error_bound``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .lorentz import LorentzDegreeResult
from .norms import INF
from .scalar_poly import PowerPoly, from_factors

VERIFY_CSV_COLUMNS = ("theorem", "n", "trial", "ratio", "bound", "slack", "holds", "equality_within", "witness_id")
GROWTH_CSV_COLUMNS = ("n", "a", "eps", "d", "normalized", "status")
PROFILE_CSV_COLUMNS = ("x", "max_ratio", "envelope", "c_emp")


def rational_str(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def float_str(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def scalar_str(x) -> str:
    """Text form of a parameter or number: "num/den", "inf" or a 17-digit float."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (Fraction, int)):
        return rational_str(x)
    return float_str(x)


def parse_rational(text: str) -> Fraction:
    """'3', '-2/7' or a decimal such as '0.25'; decimals are read exactly."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def parse_exponent(text: str):
    t = text.strip().lower()
    if t in ("inf", "infinity", "oo"):
        return INF
    return parse_rational(t)


def number_json(x, error_bound: float = 0.0) -> dict:
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return {"value": rational_str(x), "mode": "exact", "error_bound": "0"}
    return {"value": float_str(x), "mode": "quadrature", "error_bound": float_str(error_bound)}


def params_json(params: dict) -> dict:
    return {k: v if isinstance(v, int) and not isinstance(v, bool) else scalar_str(v) for k, v in params.items()}


# ---------------------------------------------------------------------------
# polynomials


def poly_json(f: PowerPoly) -> dict:
    out: dict[str, Any] = {"coeffs": [rational_str(c) for c in f.coeffs]}
    if f.factors is not None:
        out["factors"] = factors_json(f)
    return out


def factors_json(f: PowerPoly) -> dict:
    fac = f.factors
    return {
        "leading": rational_str(fac.leading),
        "real_roots": [[rational_str(r), m] for r, m in fac.real_roots],
        "complex_pairs": [[[rational_str(re), rational_str(im)], m] for (re, im), m in fac.complex_pairs],
    }


def factors_from_json(data: dict) -> PowerPoly:
    return from_factors(
        [(parse_rational(r), int(m)) for r, m in data.get("real_roots", [])],
        [((parse_rational(re), parse_rational(im)), int(m)) for (re, im), m in data.get("complex_pairs", [])],
        parse_rational(data["leading"]),
    )


def poly_from_json(data: dict) -> PowerPoly:
    f = PowerPoly([parse_rational(c) for c in data["coeffs"]])
    if "factors" in data:
        g = factors_from_json(data["factors"])
        if g != f:
            raise ValueError("factor list does not expand to the listed coefficients")
        return g
    return f


# ---------------------------------------------------------------------------
# verification reports


def witness_id(rec) -> str:
    return f"{rec.theorem}-{rec.index}"


def witness_json(rec) -> dict:
    """Re-checkable witness record for one trial."""
    out: dict[str, Any] = {"coeffs": [rational_str(c) for c in rec.witness.coeffs]}
    ev = rec.evidence
    if ev is not None and ev.factors is not None:
        out["factors"] = factors_json(ev)
        out["factors_of"] = "f" if ev == rec.witness else "derivative"
    out.update({
        "class": rec.class_kind,
        "seed": rec.seed,
        "theorem": rec.theorem,
        "n": rec.n,
        "params": params_json(rec.params),
    })
    return out


def record_json(rec) -> dict:
    err = 0.0 if rec.exact else rec.ratio_error
    return {
        "trial": rec.index,
        "seed": rec.seed,
        "n": rec.n,
        "params": params_json(rec.params),
        "status": rec.status,
        "ratio": number_json(rec.ratio, err),
        "bound": number_json(rec.bound),
        "slack": number_json(rec.slack, err),
        "equality_within": number_json(rec.equality_within),
        "equality": bool(rec.equality),
        "exact": bool(rec.exact),
        "witness_id": witness_id(rec),
        "witness": witness_json(rec),
        "error": rec.error,
    }


def report_json(rep, include_records: bool = False, include_runtime: bool = False) -> dict:
    out: dict[str, Any] = {
        "theorem": rep.theorem,
        "class": rep.class_kind,
        "seed": rep.seed,
        "n_values": list(rep.n_values),
        "negative_control": rep.negative_control,
        "trials": rep.trials,
        "passes": rep.passes,
        "failures": rep.failures,
        "indeterminates": rep.indeterminates,
        "equalities": rep.equalities,
        "ok": rep.ok,
        "min_slack": record_json(rep.min_slack) if rep.min_slack else None,
        "max_ratio": record_json(rep.max_ratio) if rep.max_ratio else None,
        "failure_witness": record_json(rep.failure_witness) if rep.failure_witness else None,
    }
    if include_records:
        out["records"] = [record_json(r) for r in rep.records]
    if include_runtime:
        out["runtime_seconds"] = float_str(rep.runtime)
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(columns: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


def _holds_cell(status: str) -> str:
    return {"holds": "true", "fails": "false"}.get(status, "indeterminate")


def reports_csv(reports: Iterable) -> str:
    rows = []
    for rep in reports:
        for r in rep.records:
            rows.append((r.theorem, str(r.n), str(r.index), scalar_str(r.ratio), scalar_str(r.bound),
                         scalar_str(r.slack), _holds_cell(r.status), scalar_str(r.equality_within), witness_id(r)))
    return _csv(VERIFY_CSV_COLUMNS, rows)


# ---------------------------------------------------------------------------
# experiments


def degree_json(res: LorentzDegreeResult, with_coeffs: bool = False) -> dict:
    out: dict[str, Any] = {"outcome": res.outcome, "d": res.d, "cap": res.cap, "text": str(res)}
    if res.outcome == "finite":
        out["sign"] = res.sign
        if with_coeffs:
            out["interval"] = [rational_str(res.form.a), rational_str(res.form.b)]
            out["coeffs"] = [rational_str(c) for c in res.form.coeffs]
    return out


def growth_csv(rows) -> str:
    return _csv(GROWTH_CSV_COLUMNS, [
        (str(r.n), rational_str(r.a), rational_str(r.eps), "" if r.d_found.d is None else str(r.d_found.d),
         "" if r.normalized is None else float_str(r.normalized), r.status)
        for r in rows
    ])


def growth_json(rows) -> list[dict]:
    return [
        {"n": r.n, "a": rational_str(r.a), "eps": rational_str(r.eps), "d": r.d_found.d,
         "normalized": None if r.normalized is None else float_str(r.normalized), "status": r.status}
        for r in rows
    ]


def profile_csv(profile) -> str:
    return _csv(PROFILE_CSV_COLUMNS, [
        (float_str(r.x), float_str(r.max_ratio), float_str(r.envelope), float_str(r.c_emp)) for r in profile.rows
    ])


def profile_json(profile) -> dict:
    return {
        "class": profile.tag.kind,
        "n": profile.tag.n,
        "trials": profile.trials,
        "seed": profile.seed,
        "envelope": profile.envelope,
        "c_emp_max": float_str(profile.c_emp_max),
        "rows": [
            {"x": float_str(r.x), "max_ratio": float_str(r.max_ratio), "envelope": float_str(r.envelope),
             "c_emp": float_str(r.c_emp)}
            for r in profile.rows
        ],
    }


def search_json(res) -> dict:
    return {
        "class": res.tag.kind,
        "n": res.tag.n,
        "theorem": res.theorem,
        "strategy": res.strategy,
        "iterations": res.iterations,
        "seed": res.seed,
        "best_ratio": float_str(res.best_ratio),
        "bound": float_str(res.bound),
        "gap": float_str(res.gap),
        "best_poly": poly_json(res.best_poly),
    }
