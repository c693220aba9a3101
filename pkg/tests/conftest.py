"""Shared fixtures: everything expensive is built once per session."""

from fractions import Fraction

import pytest

from hodgeatoms.ansatz import (DegreeRule, apply_param_names, build_ansatz,
                               substitute_params)
from hodgeatoms.cohomology import AmbientRing
from hodgeatoms.instance import load_instance
from hodgeatoms.periods import PeriodSpec, period_coefficients
from hodgeatoms.pipeline import run_pipeline
from hodgeatoms.qde import eliminate

SOLUTION = {"s": Fraction(2), "t": Fraction(6), "u": Fraction(2), "v": Fraction(16)}


@pytest.fixture(scope="session")
def verra():
    return load_instance("verra")


@pytest.fixture(scope="session")
def ring():
    return AmbientRing()


@pytest.fixture(scope="session")
def basis(ring):
    return ring.eigenbasis()


@pytest.fixture(scope="session")
def sym_ansatz(verra, ring, basis):
    raw = build_ansatz(basis.symmetric, ring,
                       DegreeRule(basis.degrees("symmetric")), "symmetric")
    return apply_param_names(raw, verra.param_names)


@pytest.fixture(scope="session")
def anti_ansatz(ring, basis):
    return build_ansatz(basis.antisymmetric, ring,
                        DegreeRule(basis.degrees("antisymmetric")), "antisymmetric")


@pytest.fixture(scope="session")
def parametric_op(sym_ansatz, verra):
    return eliminate(sym_ansatz.matrix, verra.component)


@pytest.fixture(scope="session")
def period16(verra):
    return period_coefficients(PeriodSpec(verra.period_source, verra.order))


@pytest.fixture(scope="session")
def solution():
    return dict(SOLUTION)


@pytest.fixture(scope="session")
def solved_op(parametric_op, solution):
    return parametric_op.substitute(solution)


@pytest.fixture(scope="session")
def mplus(sym_ansatz, solution):
    return substitute_params(sym_ansatz, solution)


@pytest.fixture(scope="session")
def mminus(anti_ansatz):
    return substitute_params(anti_ansatz, {anti_ansatz.params[0]: Fraction(2)})


@pytest.fixture(scope="session")
def full_run(verra):
    return run_pipeline(verra)
