"""Spectrum of the quantum multiplication kappa = 2 m_H on each block.

Everything is kept inside rational arithmetic: the characteristic
polynomial is factored against the template lam^a * prod(lam^2 - c q)
by exact division, so the eigenvalue data is the multiset of squares
{c} and no radical is ever materialized. Reciprocity compares those
squares with the singular squares t^2 of the regularized operator's
leading coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .linalg import BiPoly, Matrix, char_poly
from .poly import Poly
from .qde import DiffOperator


class TemplateError(ValueError):
    pass


@dataclass(frozen=True)
class BlockSpectrum:
    block: str
    chi: BiPoly
    dim: int
    zero_multiplicity: int
    square_factors: Tuple[Fraction, ...]   # multiset {c} with (lam^2 - c q) | chi

    def factored_render(self) -> str:
        lam = self.chi.outer
        parts = []
        if self.zero_multiplicity == 1:
            parts.append(lam)
        elif self.zero_multiplicity > 1:
            parts.append(f"{lam}^{self.zero_multiplicity}")
        for c in self.square_factors:
            if c > 0:
                parts.append(f"({lam}^2 - {c}*q)")
            else:
                parts.append(f"({lam}^2 + {-c}*q)")
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class ReciprocityResult:
    singular_squares: Tuple[Fraction, ...]
    eigen_squares: Tuple[Fraction, ...]
    passed: bool


@dataclass(frozen=True)
class SpectrumReport:
    plus: BlockSpectrum
    minus: BlockSpectrum
    reciprocity: Optional[ReciprocityResult] = None

    def blocks(self) -> Tuple[BlockSpectrum, BlockSpectrum]:
        return (self.plus, self.minus)

    def with_reciprocity(self, r: ReciprocityResult) -> "SpectrumReport":
        return SpectrumReport(self.plus, self.minus, r)


def zero_multiplicity(chi: BiPoly) -> int:
    """Largest a with lam^a dividing chi."""
    return chi.zero_multiplicity()


def _rational_roots(coeffs: List[Fraction]) -> List[Fraction]:
    """All rational roots with multiplicity, via divisor candidates.

    coeffs[k] is the y^k coefficient. The callers demand a full split
    over Q and raise when the returned count falls short of the degree.
    """
    work = list(coeffs)
    while work and work[-1] == 0:
        work.pop()
    if len(work) <= 1:
        raise TemplateError("degenerate polynomial in the square variable")
    roots: List[Fraction] = []
    while len(work) > 1:
        while work[0] == 0:
            roots.append(Fraction(0))
            work = work[1:]
            if len(work) == 1:
                return roots
        found = next((cand for cand in _root_candidates(work)
                      if _eval_poly(work, cand) == 0), None)
        if found is None:
            return roots
        roots.append(found)
        work = _synthetic_div(work, found)
    return roots


def _root_candidates(coeffs: List[Fraction]):
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    for p in _divisors(ints[0]):
        for qd in _divisors(ints[-1]):
            yield Fraction(p, qd)
            yield Fraction(-p, qd)


def _divisors(n: int) -> List[int]:
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def _eval_poly(coeffs: List[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _synthetic_div(coeffs: List[Fraction], root: Fraction) -> List[Fraction]:
    n = len(coeffs) - 1
    out = [Fraction(0)] * n
    carry = coeffs[n]
    for k in range(n - 1, -1, -1):
        out[k] = carry
        carry = coeffs[k] + root * carry
    return out


def factor_template(chi: BiPoly, block: str) -> BlockSpectrum:
    """Match chi against lam^a * prod(lam^2 - c_i q), exactly."""
    dim = chi.degree()
    a = chi.zero_multiplicity()
    body = chi.shift_down(a)
    if any(k % 2 for k in body.coeffs):
        raise TemplateError(f"{block}: odd eigenvalue powers outside the zero factor")
    f = body.degree() // 2
    alphas: List[Fraction] = []
    for k in range(f + 1):
        p = body.coeff(2 * k)
        want = f - k
        if p.is_zero():
            alphas.append(Fraction(0))
            continue
        if len(p.terms) != 1:
            raise TemplateError(f"{block}: lam^{2 * k + a} coefficient is not a monomial in q")
        (ex, c), = p.terms.items()
        if p.degree_in("q") != want or sum(ex) != want:
            raise TemplateError(f"{block}: lam^{2 * k + a} coefficient has q-degree != {want}")
        alphas.append(c)
    roots = _rational_roots(alphas) if f else []
    if len(roots) != f:
        raise TemplateError(f"{block}: square polynomial does not split over Q")

    # rebuild and compare, the template match is verified by multiplication
    rebuilt = BiPoly({a: Poly.const(chi.vars, 1)}, chi.outer, chi.vars)
    for c in roots:
        rebuilt = rebuilt * BiPoly(
            {2: Poly.const(chi.vars, 1), 0: Poly.var(chi.vars, "q", 1, -c)},
            chi.outer, chi.vars)
    if rebuilt != chi:
        raise TemplateError(f"{block}: template product does not reproduce chi")
    if a + 2 * f != dim:
        raise TemplateError(f"{block}: factor count does not add up to the dimension")
    return BlockSpectrum(block=block, chi=chi, dim=dim, zero_multiplicity=a,
                         square_factors=tuple(sorted(roots, reverse=True)))


def kappa_char(mplus: Matrix, mminus: Matrix) -> SpectrumReport:
    """Characteristic polynomials of 2*M_+/2*M_- with template factoring."""
    for m, name in ((mplus, "symmetric"), (mminus, "antisymmetric")):
        bad = [v for r in m.rows for p in r for v in p.variables_present() if v != "q"]
        if bad:
            raise ValueError(f"{name} matrix still has parameters: {sorted(set(bad))}")
    plus = factor_template(char_poly(mplus.map(lambda p: p.scale(2))), "symmetric")
    minus = factor_template(char_poly(mminus.map(lambda p: p.scale(2))), "antisymmetric")
    return SpectrumReport(plus=plus, minus=minus)


def reciprocity_check(regularized: DiffOperator, report: SpectrumReport,
                      tvar: str = "t") -> ReciprocityResult:
    """Singular squares of the regularized operator vs eigenvalue squares.

    The regularized operator's leading coefficient is a polynomial in
    tvar^2; its roots in the square variable must be exactly the
    reciprocals of the symmetric block's nonzero eigenvalue squares.
    """
    lead = regularized.coeffs[-1]
    if any(not lead.coeff_of(tvar, k).is_zero()
           for k in range(1, lead.degree_in(tvar) + 1, 2)):
        raise TemplateError("leading coefficient has odd powers of t")
    ycoeffs = []
    for k in range(0, lead.degree_in(tvar) + 1, 2):
        c = lead.coeff_of(tvar, k).constant_value()
        if c is None:
            raise TemplateError("leading coefficient is not constant in the parameters")
        ycoeffs.append(c)
    roots = _rational_roots(ycoeffs)
    if len(roots) != (len(ycoeffs) - 1):
        raise TemplateError("leading coefficient does not split into linear factors in t^2")
    singular = tuple(sorted(set(roots)))
    eigen = tuple(sorted({c for c in report.plus.square_factors if c != 0}))
    recip = tuple(sorted({Fraction(1, 1) / c for c in eigen}))
    return ReciprocityResult(singular_squares=singular, eigen_squares=eigen,
                             passed=singular == recip)
