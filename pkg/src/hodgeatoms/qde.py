"""Quantum differential engine: scalar operators, cyclic-vector elimination,
operator application, and coefficient matching.

Operators are Sum c_k(q, params) D^k with D = q d/dq. The cyclic rows of a
first-order system D y = M y satisfy D^k f = r_k . y for f the chosen
solution component, so a left-kernel vector of the stacked rows gives a
scalar operator annihilating that component for every solution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Mapping, Tuple

from .linalg import Matrix, left_nullspace
from .poly import Poly, exact_div, poly_gcd_many
from .series import Series


@dataclass(frozen=True)
class DiffOperator:
    coeffs: Tuple[Poly, ...]  # c_0 .. c_order

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("operator needs at least one coefficient")
        if self.coeffs[-1].is_zero() and len(self.coeffs) > 1:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def vars(self) -> Tuple[str, ...]:
        return self.coeffs[0].vars

    def q_degree(self, qvar: str = "q") -> int:
        return max(c.degree_in(qvar) for c in self.coeffs)

    def parameters_present(self, qvar: str = "q") -> Tuple[str, ...]:
        out = []
        for c in self.coeffs:
            for v in c.variables_present():
                if v != qvar and v not in out:
                    out.append(v)
        return tuple(out)

    def is_numeric(self, qvar: str = "q") -> bool:
        return not self.parameters_present(qvar)

    def substitute(self, values: Mapping[str, Fraction], qvar: str = "q") -> "DiffOperator":
        subs = {k: Fraction(v) for k, v in values.items()}
        coeffs = [c.substitute(subs).rename_vars((qvar,)) for c in self.coeffs]
        return DiffOperator(tuple(coeffs)).normalize()

    def normalize(self) -> "DiffOperator":
        """Content-free form; monic when the top coefficient is a rational
        constant, otherwise positive leading coefficient."""
        import math
        nonzero = [c for c in self.coeffs if not c.is_zero()]
        if not nonzero:
            return self
        g = poly_gcd_many(nonzero)
        coeffs = list(self.coeffs)
        if g.constant_value() != 1:
            coeffs = [exact_div(c, g) for c in coeffs]
        num, den = 0, 1
        for c in coeffs:
            for v in c.terms.values():
                num = math.gcd(num, abs(v.numerator))
                den = den * v.denominator // math.gcd(den, v.denominator)
        scale = Fraction(den, num)
        coeffs = [c.scale(scale) for c in coeffs]
        top = coeffs[-1].constant_value()
        if top is not None and top != 0:
            coeffs = [c.scale(1 / top) for c in coeffs]
        elif coeffs[-1].leading_coefficient() < 0:
            coeffs = [c.scale(-1) for c in coeffs]
        return DiffOperator(tuple(coeffs))

    def render(self, dvar: str = "D") -> str:
        parts = []
        for k in range(self.order, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            dk = "" if k == 0 else (dvar if k == 1 else f"{dvar}^{k}")
            cv = c.constant_value()
            if not dk:
                parts.append(f"({c.render()})" if len(c.terms) > 1 else c.render())
            elif cv == 1:
                parts.append(dk)
            elif cv == -1:
                parts.append(f"-{dk}")
            elif cv is not None:
                parts.append(f"{cv}*{dk}")
            elif len(c.terms) == 1:
                parts.append(f"{c.render()}*{dk}")
            else:
                parts.append(f"({c.render()})*{dk}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def cyclic_rows(m: Matrix, component: int, count: int) -> Matrix:
    """Rows r_0..r_count with r_0 the unit covector at the component and
    r_{k+1} = D(r_k) + r_k M, so that D^k f = r_k . y along solutions."""
    if m.nrows != m.ncols:
        raise ValueError("system matrix must be square")
    if not (0 <= component < m.ncols):
        raise ValueError(f"component {component} out of range")
    variables = m.vars
    row = [Poly.const(variables, 1 if j == component else 0) for j in range(m.ncols)]
    rows = [row]
    for _ in range(count):
        prev = rows[-1]
        nxt = []
        for j in range(m.ncols):
            acc = prev[j].euler_derivative("q")
            for k in range(m.ncols):
                acc = acc + prev[k] * m.rows[k][j]
            nxt.append(acc)
        rows.append(nxt)
    return Matrix(rows)


def eliminate(m: Matrix, component: int) -> DiffOperator:
    """Least-order scalar operator annihilating the chosen solution component."""
    n = m.ncols
    for k in range(1, n + 1):
        stack = cyclic_rows(m, component, k)
        kernel = left_nullspace(stack)
        if kernel:
            vec = kernel[0]
            if vec[k].is_zero():
                # dependence among r_0..r_{k-1} would have been found earlier
                raise RuntimeError("kernel vector does not involve the top row")
            return DiffOperator(tuple(vec)).normalize()
    raise RuntimeError("no dependence found through order n (cannot happen)")


def cofactor_identity_holds(op: DiffOperator, m: Matrix, component: int) -> bool:
    """Check Sum c_k r_k = 0 exactly, parameters included."""
    rows = cyclic_rows(m, component, op.order)
    n = m.ncols
    for j in range(n):
        acc = Poly.zero(m.vars)
        for k, c in enumerate(op.coeffs):
            acc = acc + c * rows.rows[k][j]
        if not acc.is_zero():
            return False
    return True


def apply(op: DiffOperator, f: Series, qvar: str = "q") -> Series:
    """Apply a parameter-free operator; the result is exact through
    f.order minus the operator's q-degree."""
    extra = op.parameters_present(qvar)
    if extra:
        raise ValueError(f"operator carries unknown parameters {extra}")
    qdeg = op.q_degree(qvar)
    out_order = f.order - qdeg
    if out_order < 0:
        raise ValueError("series too short for this operator")
    table: List[List[Fraction]] = []
    for c in op.coeffs:
        table.append([c.coeff_of(qvar, j).constant_value() or Fraction(0)
                      for j in range(qdeg + 1)])
    out = []
    for mo in range(out_order + 1):
        acc = Fraction(0)
        for k, row in enumerate(table):
            for j, cj in enumerate(row):
                if cj and mo - j >= 0:
                    acc += cj * Fraction(mo - j) ** k * f.coeff(mo - j)
        out.append(acc)
    return Series(out)


def apply_symbolic(op: DiffOperator, f: Series, qvar: str = "q") -> List[Poly]:
    """Coefficients of apply(op, f) when the operator still carries parameters;
    entry m is a polynomial in the parameters."""
    qdeg = op.q_degree(qvar)
    out_order = f.order - qdeg
    out = []
    for mo in range(out_order + 1):
        acc = Poly.zero(op.vars)
        for k, c in enumerate(op.coeffs):
            for j in range(qdeg + 1):
                cj = c.coeff_of(qvar, j)
                if not cj.is_zero() and mo - j >= 0:
                    acc = acc + cj.scale(Fraction(mo - j) ** k * f.coeff(mo - j))
        out.append(acc)
    return out


def match_equations(op: DiffOperator, f: Series, depth: int,
                    qvar: str = "q") -> List[Tuple[int, Poly]]:
    """One polynomial equation in the parameters per q-order of apply(op, f),
    zero equations omitted."""
    residual = apply_symbolic(op, f, qvar)
    depth = min(depth, len(residual) - 1)
    return [(m, residual[m]) for m in range(depth + 1) if not residual[m].is_zero()]


def transform_even_operator(op: DiffOperator, tvar: str = "t",
                            qvar: str = "q") -> Tuple[DiffOperator, Fraction]:
    """Change of variables q = t^2 for an operator with even coefficients:
    D_t becomes 2 D_q on even series, so c_k(t) D_t^k maps to
    c_k(sqrt q) 2^k D^k. Returns the content-divided operator and the
    removed content."""
    import math
    new_coeffs = []
    for k, c in enumerate(op.coeffs):
        out = {}
        for ex, v in c.terms.items():
            e = ex[c.vars.index(tvar)]
            if e % 2:
                raise ValueError(f"coefficient of D^{k} has an odd power t^{e}")
            out[(e // 2,)] = v * Fraction(2) ** k
        new_coeffs.append(Poly((qvar,), out))
    num, den = 0, 1
    for c in new_coeffs:
        for v in c.terms.values():
            num = math.gcd(num, abs(v.numerator))
            den = den * v.denominator // math.gcd(den, v.denominator)
    content = Fraction(num, den) if num else Fraction(1)
    if content not in (0, 1):
        new_coeffs = [c.scale(1 / content) for c in new_coeffs]
    return DiffOperator(tuple(new_coeffs)), content
