"""Exact linear algebra over polynomial rings.

Everything here is fraction-free in spirit: elimination uses
cross-multiplication and explicit rational content removal instead of
rational-function entries, and determinants expand by minors. Matrices
are tiny (at most 9 by 9), so clarity beats asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, List, Mapping

from .poly import Poly, _grlex_key, exact_div, poly_gcd_many


class Matrix:
    __slots__ = ("rows", "nrows", "ncols", "vars")

    def __init__(self, rows: Iterable[Iterable[Poly]]):
        self.rows = [list(r) for r in rows]
        if not self.rows or not self.rows[0]:
            raise ValueError("empty matrix")
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0])
        self.vars = self.rows[0][0].vars
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged rows")
            for p in r:
                if p.vars != self.vars:
                    raise ValueError("mixed variable sets in matrix")

    @classmethod
    def from_scalars(cls, variables, rows) -> "Matrix":
        variables = tuple(variables)
        return cls([[Poly.const(variables, c) for c in r] for r in rows])

    @classmethod
    def identity(cls, variables, n: int) -> "Matrix":
        variables = tuple(variables)
        return cls([[Poly.const(variables, 1 if i == j else 0) for j in range(n)]
                    for i in range(n)])

    def entry(self, i: int, j: int) -> Poly:
        return self.rows[i][j]

    def transpose(self) -> "Matrix":
        return Matrix([[self.rows[i][j] for i in range(self.nrows)]
                       for j in range(self.ncols)])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = Poly.zero(self.vars)
                for k in range(self.ncols):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return Matrix(out)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.map(lambda p: -p)

    def map(self, fn: Callable[[Poly], Poly]) -> "Matrix":
        return Matrix([[fn(p) for p in r] for r in self.rows])

    def substitute(self, values: Mapping) -> "Matrix":
        return self.map(lambda p: p.substitute(values))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and \
            all(a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def is_zero(self) -> bool:
        return all(p.is_zero() for r in self.rows for p in r)

    def __repr__(self):
        body = "; ".join("[" + ", ".join(p.render() for p in r) + "]" for r in self.rows)
        return f"Matrix({body})"


# -- kernel computation ------------------------------------------------------

def _vector_content(vec: List[Poly]) -> Fraction:
    import math
    num, den = 0, 1
    for p in vec:
        for c in p.terms.values():
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
    return Fraction(num, den) if num else Fraction(0)


def _normalize_kernel_vector(vec: List[Poly]) -> List[Poly]:
    # divide by the collective polynomial content, then make the first
    # nonzero cofactor's leading coefficient positive under graded-lex
    g = poly_gcd_many([p for p in vec if not p.is_zero()] or [vec[0]])
    if not g.is_zero() and g.constant_value() != 1:
        vec = [exact_div(p, g) for p in vec]
    c = _vector_content(vec)
    if c not in (0, 1):
        vec = [p.scale(1 / c) for p in vec]
    for p in vec:
        if not p.is_zero():
            if p.leading_coefficient() < 0:
                vec = [x.scale(-1) for x in vec]
            break
    return vec


def left_nullspace(m: Matrix) -> List[List[Poly]]:
    """Basis of {v : v . m = 0}, primitive vectors with a fixed sign convention.

    Fraction-free row elimination on m with an augmented identity tracking
    the row operations. Rows whose matrix part vanishes yield kernel vectors.
    """
    variables = m.vars
    work = []
    for i in range(m.nrows):
        left = list(m.rows[i])
        right = [Poly.const(variables, 1 if j == i else 0) for j in range(m.nrows)]
        work.append((left, right))

    def strip_content(pair):
        left, right = pair
        c = _vector_content(left + right)
        if c not in (0, 1):
            left = [p.scale(1 / c) for p in left]
            right = [p.scale(1 / c) for p in right]
        return (left, right)

    done = 0  # rows 0..done-1 hold pivots
    for col in range(m.ncols):
        # smallest-degree nonzero pivot keeps intermediate growth down
        cands = [i for i in range(done, len(work)) if not work[i][0][col].is_zero()]
        if not cands:
            continue
        piv = min(cands, key=lambda i: (work[i][0][col].total_degree(), i))
        work[done], work[piv] = work[piv], work[done]
        pl, pr = work[done]
        pv = pl[col]
        for i in range(done + 1, len(work)):
            il, ir = work[i]
            e = il[col]
            if e.is_zero():
                continue
            nl = [pv * a - e * b for a, b in zip(il, pl)]
            nr = [pv * a - e * b for a, b in zip(ir, pr)]
            work[i] = strip_content((nl, nr))
        done += 1

    kernel = []
    for left, right in work[done:]:
        if all(p.is_zero() for p in left):
            kernel.append(_normalize_kernel_vector(right))
    kernel.sort(key=lambda v: [p.render() for p in v])
    return kernel


# -- determinants and characteristic polynomials -----------------------------

def det(m: Matrix) -> Poly:
    """Determinant by division-free minor expansion with subset memoization."""
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = m.nrows
    # minors[mask] = det of rows 0..k-1 against the column set mask (k = popcount)
    minors = {0: Poly.const(m.vars, 1)}
    for k in range(1, n + 1):
        nxt = {}
        for mask in _masks_of_size(n, k):
            acc = Poly.zero(m.vars)
            idx = 0
            for j in range(n):
                if not (mask >> j) & 1:
                    continue
                entry = m.rows[k - 1][j]
                if not entry.is_zero():
                    term = entry * minors[mask & ~(1 << j)]
                    acc = acc + (term if (k - 1 + idx) % 2 == 0 else -term)
                idx += 1
            nxt[mask] = acc
        minors = nxt
    return minors[(1 << n) - 1]


def _masks_of_size(n: int, k: int):
    from itertools import combinations
    for cols in combinations(range(n), k):
        mask = 0
        for c in cols:
            mask |= 1 << c
        yield mask


class BiPoly:
    """Polynomial in an outer variable (default lam) with Poly coefficients."""

    __slots__ = ("outer", "coeffs", "vars")

    def __init__(self, coeffs: Mapping[int, Poly], outer: str = "lam", variables=("q",)):
        self.outer = outer
        self.coeffs = {int(k): p for k, p in coeffs.items() if not p.is_zero()}
        self.vars = next((p.vars for p in self.coeffs.values()), tuple(variables))

    def degree(self) -> int:
        return max(self.coeffs, default=0)

    def coeff(self, k: int) -> Poly:
        return self.coeffs.get(k, Poly.zero(self.vars))

    def zero_multiplicity(self) -> int:
        """Largest a with outer^a dividing the polynomial."""
        if not self.coeffs:
            return 0
        return min(self.coeffs)

    def shift_down(self, a: int) -> "BiPoly":
        if any(k < a for k in self.coeffs):
            raise ValueError(f"not divisible by {self.outer}^{a}")
        return BiPoly({k - a: p for k, p in self.coeffs.items()}, self.outer)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        out: dict = {}
        for k1, p1 in self.coeffs.items():
            for k2, p2 in other.coeffs.items():
                k = k1 + k2
                cur = out.get(k)
                out[k] = p1 * p2 if cur is None else cur + p1 * p2
        return BiPoly(out, self.outer)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.outer == other.outer and self.coeffs == other.coeffs

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs, reverse=True):
            p = self.coeffs[k]
            lk = self.outer if k == 1 else f"{self.outer}^{k}"
            if k == 0:
                parts.append(f"({p.render()})")
            elif p.constant_value() == 1:
                parts.append(lk)
            elif p.constant_value() is not None:
                parts.append(f"{p.constant_value()}*{lk}")
            else:
                parts.append(f"({p.render()})*{lk}")
        return " + ".join(parts)

    def __repr__(self):
        return f"BiPoly({self.render()})"


def char_poly(m: Matrix, outer: str = "lam") -> BiPoly:
    """det(lam I - m), exact, grouped by powers of the outer variable."""
    if m.nrows != m.ncols:
        raise ValueError("characteristic polynomial of a non-square matrix")
    if outer in m.vars:
        raise ValueError(f"matrix ring already uses {outer!r}")
    ext = m.vars + (outer,)
    n = m.nrows
    lam = Poly.var(ext, outer)
    big = Matrix([[lam.scale(1 if i == j else 0) - m.rows[i][j].rename_vars(ext)
                   for j in range(n)] for i in range(n)])
    full = det(big)
    out: dict = {}
    for k in range(full.degree_in(outer) + 1):
        ck = full.coeff_of(outer, k)
        if not ck.is_zero():
            # project back onto the original variable tuple
            out[k] = ck.rename_vars(m.vars)
    return BiPoly(out, outer)
