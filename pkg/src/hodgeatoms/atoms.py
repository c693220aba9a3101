"""Atom invariant calculus and the irrationality decision.

Each atom carries (rho, P): the count of rational Hodge classes and the
Laurent polynomial recording Hodge types by p - q. Blowing up along a
centre of local multiplicity r adds r - 1 copies of the centre's
invariants, so a rational fourfold can only contain atoms assembled
from point, curve and surface contributions. An atom with a nonzero
t^2 coefficient and rho < 3 cannot be assembled that way: points and
curves contribute no t^2 and any surface forces rho >= 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import List, Optional, Tuple

from .instance import InstanceSpec
from .poly import LaurentPoly


class AtomError(ValueError):
    pass


@dataclass(frozen=True)
class AtomInvariants:
    rho: int
    hodge: LaurentPoly
    label: str

    def __post_init__(self):
        if self.rho < 0:
            raise AtomError(f"{self.label}: negative rho")
        if any(c < 0 for c in self.hodge.coeffs.values()):
            raise AtomError(f"{self.label}: negative Hodge multiplicity")
        if self.rho > self.hodge.coeff(0):
            raise AtomError(
                f"{self.label}: rho = {self.rho} exceeds the (p,p) dimension"
                f" {self.hodge.coeff(0)}")

    def t2_coefficient(self) -> int:
        return self.hodge.coeff(2)

    def render(self) -> str:
        return f"{self.label}: rho = {self.rho}, P = {self.hodge.render()}"


def atom_sum(a: AtomInvariants, b: AtomInvariants, label: str) -> AtomInvariants:
    return AtomInvariants(a.rho + b.rho, a.hodge + b.hodge, label)


def obstruction_applies(atom: AtomInvariants) -> bool:
    """True when no blowup bookkeeping can produce this atom."""
    return atom.t2_coefficient() != 0 and atom.rho < 3


# -- centre contribution models ----------------------------------------------

def point_centre() -> AtomInvariants:
    return AtomInvariants(1, LaurentPoly({0: 1}), "point")


def curve_centre(genus: int) -> AtomInvariants:
    # classes in degrees 0 and 2 are always rational; the genus part has
    # |p - q| = 1
    if genus < 0:
        raise AtomError("negative genus")
    return AtomInvariants(2, LaurentPoly({1: genus, 0: 2, -1: genus}),
                          f"curve(g={genus})")


def surface_centre(h20: int, h10: int, h11: int) -> AtomInvariants:
    """Conservative surface model: H^0, H^4 and one (1,1) class are rational."""
    if h20 < 0 or h10 < 0:
        raise AtomError("negative Hodge number")
    if h11 < 1:
        raise AtomError("a surface has at least one (1,1) class")
    hodge = LaurentPoly({2: h20, 1: 2 * h10, 0: 2 + h11, -1: 2 * h10, -2: h20})
    return AtomInvariants(3, hodge, f"surface(h20={h20},h10={h10},h11={h11})")


def blowup_combine(base: AtomInvariants, centre: AtomInvariants,
                   r: int) -> AtomInvariants:
    """Invariants after blowing up a centre of local multiplicity r >= 2."""
    if r < 2:
        raise AtomError("blowup centres have codimension >= 2, so r >= 2")
    return AtomInvariants(base.rho + (r - 1) * centre.rho,
                          base.hodge + centre.hodge.scale(r - 1),
                          base.label)


# -- the zero eigenspace of the Verra-type instance ---------------------------

def transcendental_invariants(instance: InstanceSpec) -> AtomInvariants:
    """(rho, P) of the transcendental summand T.

    The Hodge types come from the instance's decomposition of T, listed
    from the top piece down, so the i-th entry sits at p - q = (L-1) - 2i.
    Simplicity forces rho = 0: a rational Hodge class would span a proper
    sub-Hodge structure.
    """
    if instance.dim_t and not instance.simple:
        raise AtomError("transcendental part not flagged simple; rho unknown")
    parts = instance.tdecomp
    span = len(parts) - 1
    hodge = LaurentPoly({span - 2 * i: parts[i] for i in range(len(parts))})
    return AtomInvariants(0, hodge, "T")


@dataclass(frozen=True)
class PlacementCase:
    name: str
    plus: AtomInvariants
    minus: AtomInvariants

    def atoms(self) -> Tuple[AtomInvariants, AtomInvariants]:
        return (self.plus, self.minus)

    def obstructed(self) -> Optional[AtomInvariants]:
        for atom in self.atoms():
            if obstruction_applies(atom):
                return atom
        return None


def assemble_zero_atoms(instance: InstanceSpec, zero_plus: int,
                        zero_minus: int) -> Tuple[PlacementCase, PlacementCase]:
    """Both placements of T against the ambient zero eigenspaces.

    The ambient pieces are algebraic, contributing (dim, dim*t^0); T lands
    entirely in one of the two involution eigenspaces, and which one is
    not known, so both cases are returned.
    """
    trans = transcendental_invariants(instance)
    ambient_plus = AtomInvariants(zero_plus, LaurentPoly({0: zero_plus}), "E_0^+")
    ambient_minus = AtomInvariants(zero_minus, LaurentPoly({0: zero_minus}), "E_0^-")
    case_plus = PlacementCase(
        "T_in_plus",
        plus=atom_sum(ambient_plus, trans, "E_0^+"),
        minus=ambient_minus)
    case_minus = PlacementCase(
        "T_in_minus",
        plus=ambient_plus,
        minus=atom_sum(ambient_minus, trans, "E_0^-"))
    return (case_plus, case_minus)


# -- exhaustive exclusion over centre multisets --------------------------------

def exclusion_search(target: AtomInvariants, max_centres: int = 3,
                     max_genus: int = 3) -> List[Tuple[Tuple[str, int], ...]]:
    """Centre multisets that could assemble the target atom.

    Enumerates every multiset of at most max_centres weighted centre
    contributions (weight = multiplicity r - 1 >= 1) whose total t^2
    coefficient matches the target's without the total rho exceeding the
    target's. An empty result excludes the target from every blowup of
    the bounded shape; when obstruction_applies(target) the result is
    empty for all bounds.
    """
    if max_centres < 0 or max_genus < 0:
        raise AtomError("bounds must be non-negative")
    t2 = target.t2_coefficient()
    kinds = [point_centre()]
    kinds += [curve_centre(g) for g in range(max_genus + 1)]
    kinds += [surface_centre(h20, 0, 1) for h20 in range(t2 + 1)]
    hits = []
    for count in range(1, max_centres + 1):
        for combo in combinations_with_replacement(kinds, count):
            rho = sum(c.rho for c in combo)
            tt = sum(c.t2_coefficient() for c in combo)
            if tt == t2 and rho <= target.rho:
                weighted: dict = {}
                for c in combo:
                    weighted[c.label] = weighted.get(c.label, 0) + 1
                hit = tuple(sorted(weighted.items()))
                if hit not in hits:
                    hits.append(hit)
    return sorted(hits)
