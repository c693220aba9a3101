"""Sparse multivariate polynomials over exact rationals.

A Poly is a map from exponent vectors to nonzero Fraction coefficients,
over a variable set fixed at construction. Exponent vectors are tuples
aligned with the variable tuple. Zero coefficients are never stored.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Tuple, Union

Scalar = Union[int, Fraction]


def _as_fraction(c: Scalar) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not an exact scalar: {c!r}")


def _grlex_key(ex: tuple) -> tuple:
    return (sum(ex), ex)


class Poly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple, Scalar] | None = None):
        self.vars = tuple(variables)
        clean = {}
        if terms:
            for ex, c in terms.items():
                ex = tuple(ex)
                if len(ex) != len(self.vars):
                    raise ValueError(f"exponent {ex} does not fit variables {self.vars}")
                c = _as_fraction(c)
                if c != 0:
                    clean[ex] = clean.get(ex, Fraction(0)) + c
                    if clean[ex] == 0:
                        del clean[ex]
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables: Iterable[str]) -> "Poly":
        return cls(variables)

    @classmethod
    def const(cls, variables: Iterable[str], c: Scalar) -> "Poly":
        variables = tuple(variables)
        c = _as_fraction(c)
        if c == 0:
            return cls(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables: Iterable[str], name: str, power: int = 1, c: Scalar = 1) -> "Poly":
        variables = tuple(variables)
        ex = [0] * len(variables)
        ex[variables.index(name)] = power
        return cls(variables, {tuple(ex): c})

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.vars != other.vars:
            raise ValueError(f"variable sets differ: {self.vars} vs {other.vars}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.const(self.vars, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self.terms)
        for ex, c in other.terms.items():
            s = out.get(ex, Fraction(0)) + c
            if s == 0:
                out.pop(ex, None)
            else:
                out[ex] = s
        return Poly(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.vars, {ex: -c for ex, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        out: dict = {}
        for ex1, c1 in self.terms.items():
            for ex2, c2 in other.terms.items():
                ex = tuple(a + b for a, b in zip(ex1, ex2))
                s = out.get(ex, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(ex, None)
                else:
                    out[ex] = s
        return Poly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        out = Poly.const(self.vars, 1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c: Scalar) -> "Poly":
        c = _as_fraction(c)
        return Poly(self.vars, {ex: cc * c for ex, cc in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.vars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.terms.items()))))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- structure queries -------------------------------------------------

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(ex) for ex in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        if not self.terms:
            return 0
        return max(ex[i] for ex in self.terms)

    def coeff_of(self, name: str, power: int) -> "Poly":
        """Coefficient of name**power, as a Poly in the same ring."""
        i = self.vars.index(name)
        out = {}
        for ex, c in self.terms.items():
            if ex[i] == power:
                nex = list(ex)
                nex[i] = 0
                out[tuple(nex)] = c
        return Poly(self.vars, out)

    def constant_value(self) -> Fraction | None:
        """The value if this is a constant, else None."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1:
            (ex, c), = self.terms.items()
            if all(e == 0 for e in ex):
                return c
        return None

    def variables_present(self) -> tuple:
        used = set()
        for ex in self.terms:
            for i, e in enumerate(ex):
                if e:
                    used.add(self.vars[i])
        return tuple(v for v in self.vars if v in used)

    def leading_coefficient(self) -> Fraction:
        """Coefficient of the graded-lex leading monomial; 0 for the zero poly."""
        if not self.terms:
            return Fraction(0)
        lead = max(self.terms, key=_grlex_key)
        return self.terms[lead]

    # -- calculus and substitution ------------------------------------------

    def euler_derivative(self, name: str = "q") -> "Poly":
        """The Euler derivative q d/dq: each monomial c q^k m goes to k c q^k m."""
        i = self.vars.index(name)
        return Poly(self.vars, {ex: c * ex[i] for ex, c in self.terms.items() if ex[i]})

    def substitute(self, values: Mapping[str, Union["Poly", Scalar]]) -> "Poly":
        """Substitute polynomials or scalars for variables, exactly."""
        out = Poly.zero(self.vars)
        for ex, c in self.terms.items():
            term = Poly.const(self.vars, c)
            for i, e in enumerate(ex):
                if e == 0:
                    continue
                name = self.vars[i]
                if name in values:
                    v = values[name]
                    rep = v if isinstance(v, Poly) else Poly.const(self.vars, v)
                    if isinstance(v, Poly):
                        self._check(v)
                    term = term * rep ** e
                else:
                    term = term * Poly.var(self.vars, name, e)
            out = out + term
        return out

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        """Full evaluation; every present variable must have a value."""
        total = Fraction(0)
        for ex, c in self.terms.items():
            t = c
            for i, e in enumerate(ex):
                if e:
                    t *= _as_fraction(values[self.vars[i]]) ** e
            total += t
        return total

    def rename_vars(self, variables: Iterable[str], mapping: Mapping[str, str] | None = None) -> "Poly":
        """Re-embed into another variable tuple (old names mapped by identity or `mapping`)."""
        variables = tuple(variables)
        out = {}
        for ex, c in self.terms.items():
            nex = [0] * len(variables)
            for i, e in enumerate(ex):
                if e:
                    name = self.vars[i]
                    name = mapping.get(name, name) if mapping else name
                    nex[variables.index(name)] += e
            key = tuple(nex)
            out[key] = out.get(key, Fraction(0)) + c
        return Poly(variables, out)

    # -- normal forms --------------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        c = self.content()
        if c in (0, 1):
            return self
        return self.scale(1 / c)

    # -- rendering -----------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def render(self) -> str:
        """Deterministic human-readable form, graded-lex term order."""
        if not self.terms:
            return "0"
        parts = []
        for ex, c in self.sorted_terms():
            names = [f"{v}^{e}" if e > 1 else v for v, e in zip(self.vars, ex) if e]
            mono = "*".join(names)
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append(("- " if c < 0 else "+ ") + body)
        head = parts[0]
        head = "-" + head[2:] if head.startswith("- ") else head[2:]
        return " ".join([head] + parts[1:])

    def __repr__(self):
        return f"Poly({self.render()})"


def exact_div(a: Poly, b: Poly) -> Poly:
    """Quotient a/b when b divides a exactly; ValueError otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    a._check(b)
    if a.is_zero():
        return Poly.zero(a.vars)
    bex = max(b.terms, key=_grlex_key)
    bc = b.terms[bex]
    rem = dict(a.terms)
    quot: dict = {}
    while rem:
        # if the division is exact, the leading term always cancels
        aex = max(rem, key=_grlex_key)
        dif = tuple(x - y for x, y in zip(aex, bex))
        if any(d < 0 for d in dif):
            raise ValueError("not exactly divisible")
        f = rem[aex] / bc
        quot[dif] = quot.get(dif, Fraction(0)) + f
        for ex2, c2 in b.terms.items():
            tgt = tuple(d + e for d, e in zip(dif, ex2))
            v = rem.get(tgt, Fraction(0)) - f * c2
            if v:
                rem[tgt] = v
            else:
                rem.pop(tgt, None)
    return Poly(a.vars, quot)


def _gcd_normal(p: Poly) -> Poly:
    out = p.primitive()
    if out.leading_coefficient() < 0:
        out = out.scale(-1)
    return out


def _univariate_parts(p: Poly, name: str) -> Tuple[Poly, Poly]:
    """(content, primitive part) of p viewed as univariate in name."""
    coeffs = [p.coeff_of(name, k) for k in range(p.degree_in(name) + 1)]
    cont = Poly.zero(p.vars)
    for c in coeffs:
        cont = poly_gcd(cont, c)
    return cont, exact_div(p, cont)


def _pseudo_rem(f: Poly, g: Poly, name: str) -> Poly:
    dg = g.degree_in(name)
    lcg = g.coeff_of(name, dg)
    r = f
    while not r.is_zero() and r.degree_in(name) >= dg:
        dr = r.degree_in(name)
        lcr = r.coeff_of(name, dr)
        r = lcg * r - lcr * Poly.var(r.vars, name, dr - dg) * g
    return r


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Gcd over Q[vars], primitive with positive leading coefficient.

    Primitive pseudo-remainder sequence on the last variable present;
    rationals are units, so the base case is the constant 1.
    """
    if a.is_zero():
        return _gcd_normal(b)
    if b.is_zero():
        return _gcd_normal(a)
    a._check(b)
    present = [v for v in a.vars
               if v in a.variables_present() or v in b.variables_present()]
    if not present:
        return Poly.const(a.vars, 1)
    name = present[-1]
    ca, pa = _univariate_parts(a, name)
    cb, pb = _univariate_parts(b, name)
    cg = poly_gcd(ca, cb)
    f, g = pa, pb
    if f.degree_in(name) < g.degree_in(name):
        f, g = g, f
    while not g.is_zero():
        r = _pseudo_rem(f, g, name)
        f, g = g, (r if r.is_zero() else _univariate_parts(r, name)[1])
    return _gcd_normal(cg * _univariate_parts(f, name)[1])


def poly_gcd_many(polys) -> Poly:
    it = iter(polys)
    out = next(it)
    for p in it:
        out = poly_gcd(out, p)
    return out


class LaurentPoly:
    """Integer Laurent polynomial in one variable, for Hodge polynomials P(t).

    Exponent is the type difference p - q; negative exponents allowed.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.coeffs = {int(k): int(v) for k, v in (coeffs or {}).items() if v != 0}

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(out)

    def scale(self, n: int) -> "LaurentPoly":
        return LaurentPoly({k: n * v for k, v in self.coeffs.items()})

    def coeff(self, k: int) -> int:
        return self.coeffs.get(k, 0)

    def is_symmetric(self) -> bool:
        # Hodge symmetry under t <-> 1/t
        return all(self.coeff(-k) == v for k, v in self.coeffs.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs, reverse=True):
            v = self.coeffs[k]
            if k == 0:
                body = str(abs(v))
            else:
                tk = "t" if k == 1 else f"t^{k}"
                body = tk if abs(v) == 1 else f"{abs(v)}*{tk}"
            parts.append(("- " if v < 0 else "+ ") + body)
        head = parts[0]
        head = "-" + head[2:] if head.startswith("- ") else head[2:]
        return " ".join([head] + parts[1:])

    def __repr__(self):
        return f"LaurentPoly({self.render()})"
