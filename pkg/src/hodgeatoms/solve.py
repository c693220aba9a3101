"""Exact solver for the matched coefficient equations.

The equations are polynomials of total degree at most 2 in the unknown
parameters. Strategy: treat every occurring monomial as an independent
linear unknown, reduce that system exactly, translate the reduced rows
back into polynomial equations, then finish by substitution, branching
only on univariate polynomials of degree at most 2 with rational roots.
Nothing is ever guessed: states the loop cannot reduce are reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import Poly


class SolveError(ValueError):
    pass


@dataclass(frozen=True)
class SolveReport:
    params: Tuple[str, ...]
    equations: Tuple[Tuple[int, Poly], ...]      # raw matched equations by q-order
    monomials: Tuple[Tuple[int, ...], ...]       # linearization monomials
    linear_rows: Tuple[Tuple[Fraction, ...], ...]  # reduced linear system (last col constant)
    reduced: Tuple[Poly, ...]                    # de-linearized equations
    solutions: Tuple[Tuple[Fraction, ...], ...]  # full solution set, param order
    accepted: Tuple[Tuple[Fraction, ...], ...]
    rejected: Tuple[Tuple[Tuple[Fraction, ...], str], ...]

    def solution_dicts(self) -> List[Dict[str, Fraction]]:
        return [dict(zip(self.params, s)) for s in self.solutions]


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def _canonical(e: Poly) -> Poly:
    p = e.primitive()
    if p.leading_coefficient() < 0:
        p = p.scale(-1)
    return p


def _substitute_var(e: Poly, var: int, rule: Poly) -> Poly:
    """Replace variable #var by the rule polynomial, exactly."""
    n = len(e.vars)
    out = Poly.zero(e.vars)
    for ex, c in e.terms.items():
        k = ex[var]
        base = list(ex)
        base[var] = 0
        term = Poly(e.vars, {tuple(base): c})
        for _ in range(k):
            term = term * rule
        out = out + term
    return out


def _classify(e: Poly) -> Tuple[List[int], int]:
    present = sorted({i for ex in e.terms for i, k in enumerate(ex) if k})
    return present, e.total_degree()


def solve_parameters(equations: Sequence[Tuple[int, Poly]],
                     params: Sequence[str],
                     enumerative: Sequence[str]) -> SolveReport:
    params = tuple(params)
    if not equations:
        raise SolveError("underdetermined: empty equation list")
    for name in enumerative:
        if name not in params:
            raise SolveError(f"enumerative parameter {name!r} is not an unknown")

    raw: List[Tuple[int, Poly]] = []
    for order, e in equations:
        p = e.rename_vars(params)
        if p.total_degree() > 2:
            raise SolveError(f"equation at q^{order} has degree {p.total_degree()} > 2")
        raw.append((order, p))

    # linearize over the occurring monomials, constants aside
    canon = [_canonical(e) for _, e in raw]
    zero_ex = (0,) * len(params)
    monos = sorted({ex for e in canon for ex in e.terms if ex != zero_ex},
                   key=lambda ex: (-sum(ex), tuple(-x for x in ex)))
    rows: List[List[Fraction]] = []
    for e in canon:
        rows.append([e.terms.get(ex, Fraction(0)) for ex in monos]
                    + [e.terms.get(zero_ex, Fraction(0))])

    pivots = _rref_rows(rows, len(monos))
    for row in rows[len(pivots):]:
        if row[-1] != 0:
            raise SolveError("inconsistent linearized system")
    rref = rows[: len(pivots)]

    # de-linearize the reduced rows back into polynomial equations
    reduced: List[Poly] = []
    for row in rref:
        terms = {ex: c for ex, c in zip(monos, row[:-1]) if c != 0}
        if row[-1] != 0:
            terms[zero_ex] = row[-1]
        reduced.append(Poly(params, terms))

    solutions = _back_substitute(reduced, params)

    # every candidate must satisfy every raw equation exactly
    for sol in solutions:
        values = dict(zip(params, sol))
        for order, e in raw:
            if e.evaluate(values) != 0:
                raise SolveError(
                    f"candidate {values} fails the q^{order} equation (internal error)")

    accepted, rejected = [], []
    for sol in solutions:
        values = dict(zip(params, sol))
        bad = [n for n in enumerative
               if values[n].denominator != 1 or values[n] < 0]
        if bad:
            detail = ", ".join(f"{n} = {values[n]}" for n in bad)
            rejected.append((sol, f"not a non-negative integer: {detail}"))
        else:
            accepted.append(sol)

    return SolveReport(
        params=params,
        equations=tuple(raw),
        monomials=tuple(monos),
        linear_rows=tuple(tuple(r) for r in rref),
        reduced=tuple(reduced),
        solutions=tuple(solutions),
        accepted=tuple(accepted),
        rejected=tuple(rejected))


def _rref_rows(rows: List[List[Fraction]], ncols: int) -> List[int]:
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def _back_substitute(reduced: List[Poly], params: Tuple[str, ...]):
    nvars = len(params)
    zero_ex = (0,) * nvars
    # state: pending rewrite rules, fixed assignments, remaining equations
    stack = [([], {}, list(reduced))]
    terminal = []
    steps = 0
    while stack:
        steps += 1
        if steps > 10000:
            raise SolveError("unsolved: branching did not terminate")
        rules, assign, eqs = stack.pop()
        eqs = [e for e in eqs if not e.is_zero()]
        if any(set(e.terms) == {zero_ex} for e in eqs):
            continue  # contradictory branch
        if not eqs:
            terminal.append((rules, assign))
            continue

        choice = None
        for e in eqs:  # univariate linear first
            present, deg = _classify(e)
            if len(present) == 1 and deg == 1:
                choice = ("assign", e, present[0])
                break
        if choice is None:
            for e in eqs:  # then a linear relation usable as a rewrite
                present, deg = _classify(e)
                if deg == 1 and len(present) >= 2:
                    choice = ("rewrite", e, present[0])
                    break
        if choice is None:
            for e in eqs:  # finally a univariate quadratic with rational roots
                present, deg = _classify(e)
                if len(present) == 1 and deg == 2:
                    choice = ("branch", e, present[0])
                    break
        if choice is None:
            shown = "; ".join(e.render() for e in eqs)
            raise SolveError(f"unsolved: no degree <= 2 univariate or linear step in [{shown}]")

        kind, e, var = choice
        rest = [x for x in eqs if x is not e]
        unit = tuple(1 if i == var else 0 for i in range(nvars))
        if kind in ("assign", "rewrite"):
            c = e.terms[unit]
            rule = Poly(params, {ex: -v / c for ex, v in e.terms.items() if ex != unit})
            new_eqs = [_substitute_var(x, var, rule) for x in rest]
            if kind == "assign":
                stack.append((rules, {**assign, var: rule.constant_value() or Fraction(0)}, new_eqs))
            else:
                stack.append((rules + [(var, rule)], assign, new_eqs))
        else:
            sq = tuple(2 if i == var else 0 for i in range(nvars))
            a = e.terms.get(sq, Fraction(0))
            b = e.terms.get(unit, Fraction(0))
            c = e.terms.get(zero_ex, Fraction(0))
            root = _rational_sqrt(b * b - 4 * a * c)
            if root is None:
                raise SolveError(f"unsolved: irrational roots of {e.render()} = 0")
            for r in sorted({(-b + root) / (2 * a), (-b - root) / (2 * a)}):
                rule = Poly.const(params, r)
                new_eqs = [_substitute_var(x, var, rule) for x in rest]
                stack.append((rules, {**assign, var: r}, new_eqs))

    solutions = set()
    for rules, assign in terminal:
        known = set(assign) | {var for var, _ in rules}
        if len(known) != nvars:
            missing = [params[i] for i in range(nvars) if i not in known]
            raise SolveError(f"underdetermined: no constraint fixes {missing}")
        values = dict(assign)
        # a rule's right side only mentions variables eliminated later, so
        # newest-first resolution always has what it needs
        for var, rule in reversed(rules):
            values[var] = rule.evaluate(
                {params[i]: v for i, v in values.items()})
        solutions.add(tuple(values[i] for i in range(nvars)))
    return sorted(solutions)
