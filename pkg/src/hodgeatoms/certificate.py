"""Canonical certificate serialization.

Certificates are plain dicts of JSON-safe values built by the pipeline;
this module owns the conversions from exact objects to those values and
the two output formats. Identical inputs must produce byte-identical
JSON: keys are sorted, rationals are "num/den" strings, polynomial
coefficients are emitted in a fixed order.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List

from .linalg import BiPoly, Matrix
from .poly import LaurentPoly, Poly
from .qde import DiffOperator
from .series import Series


def rat_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def poly_json(p: Poly):
    """q-polynomials become dense coefficient lists, anything else a string."""
    present = p.variables_present()
    if not present or present == ("q",):
        deg = p.degree_in("q") if "q" in p.vars else 0
        coeffs = []
        for k in range(deg + 1):
            c = p.coeff_of("q", k).constant_value() if "q" in p.vars else p.constant_value()
            coeffs.append(rat_str(c if c is not None else Fraction(0)))
        return coeffs
    return p.render()


def series_json(s: Series) -> List[str]:
    return [rat_str(c) for c in s.coeffs]


def operator_json(op: DiffOperator) -> Dict[str, Any]:
    return {
        "order": op.order,
        "coefficients": [poly_json(c) for c in op.coeffs],
        "display": op.render(),
    }


def matrix_json(m: Matrix) -> List[List[Any]]:
    return [[poly_json(p) for p in row] for row in m.rows]


def bipoly_json(chi: BiPoly) -> Dict[str, Any]:
    return {
        "display": chi.render(),
        "coefficients": {str(k): poly_json(chi.coeff(k)) for k in sorted(chi.coeffs)},
    }


def laurent_str(p: LaurentPoly) -> str:
    return p.render()


def dump_json(cert: Dict[str, Any]) -> str:
    return json.dumps(cert, sort_keys=True, indent=2) + "\n"


# -- human-readable rendering --------------------------------------------------

def _fmt_block(title: str, lines: List[str]) -> List[str]:
    return [title, "-" * len(title)] + lines + [""]


def dump_text(cert: Dict[str, Any]) -> str:
    out: List[str] = []
    out += _fmt_block("verdict", [cert["verdict"]])

    lines = []
    for c in cert["checks"]:
        mark = "PASS" if c["passed"] else "FAIL"
        detail = f"  ({c['detail']})" if c.get("detail") else ""
        lines.append(f"[{mark}] {c['name']}{detail}")
    out += _fmt_block("checks", lines)

    lines = []
    for s in cert["stages"]:
        reason = f"  ({s['reason']})" if s.get("reason") else ""
        lines.append(f"{s['name']}: {s['status']}{reason}")
    out += _fmt_block("stages", lines)

    inst = cert["instance"]
    out += _fmt_block("instance", [f"name: {inst['name']}",
                                   f"sha256: {inst['sha256']}",
                                   f"truncation order: {inst['order']}"])

    for section in ("period", "ansatz", "operator", "solve", "spectrum", "atoms"):
        body = cert.get(section)
        if body is None:
            continue
        if body.get("status") == "not run":
            out += _fmt_block(section, [f"not run ({body.get('reason', '')})"])
            continue
        lines = []
        for key in sorted(body):
            if key == "status":
                continue
            val = body[key]
            if isinstance(val, str):
                lines.append(f"{key}: {val}")
            elif isinstance(val, list) and all(isinstance(x, str) for x in val):
                shown = ", ".join(val[:8]) + (", ..." if len(val) > 8 else "")
                lines.append(f"{key}: [{shown}]")
            else:
                lines.append(f"{key}: {json.dumps(val, sort_keys=True)}")
        out += _fmt_block(section, lines)

    if cert.get("notes"):
        out += _fmt_block("notes", [f"- {n}" for n in cert["notes"]])
    out.append(f"engine {cert['engine_version']}")
    return "\n".join(out) + "\n"
