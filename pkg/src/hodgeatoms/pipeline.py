"""Staged pipeline: instance file in, certificate out.

Stages run in a fixed order (period, ansatz, eliminate, solve, spectrum,
atoms, verdict). Every named check lands in the certificate with a
pass/fail flag; a stage that throws marks itself failed and everything
downstream "not run". The verdict is IRRATIONAL_CERTIFIED only when all
stages ran and every check passed; the engine never claims rationality,
so everything else is INCONCLUSIVE.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from . import __version__
from .ansatz import DegreeRule, admissible_powers, apply_param_names, build_ansatz, substitute_params
from .atoms import AtomError, assemble_zero_atoms, exclusion_search, transcendental_invariants
from .certificate import (bipoly_json, dump_json, dump_text, matrix_json,
                          operator_json, poly_json, rat_str, series_json)
from .cohomology import AmbientRing, gram_matrix
from .instance import InstanceSpec
from .linalg import char_poly
from .periods import PeriodSpec, get_source, period_coefficients, regularized_coefficients
from .qde import (apply, cofactor_identity_holds, eliminate, match_equations,
                  transform_even_operator)
from .solve import SolveError, solve_parameters
from .spectrum import (ReciprocityResult, SpectrumReport, TemplateError,
                       factor_template, reciprocity_check)

STAGES = ("period", "ansatz", "eliminate", "solve", "spectrum", "atoms", "verdict")

# certificate section fed by each stage
_SECTION_OF = {"eliminate": "operator"}

EXCLUSION_CENTRES = 4
EXCLUSION_GENUS = 4


class StageFailure(RuntimeError):
    """Raised inside a stage to abort it after recording a failed check."""


@dataclass
class PipelineRun:
    instance: InstanceSpec
    through: str = "verdict"
    order: Optional[int] = None
    checks: List[Dict[str, Any]] = field(default_factory=list)
    stages: List[Dict[str, str]] = field(default_factory=list)
    sections: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    verdict: str = "INCONCLUSIVE"

    def effective_order(self) -> int:
        return self.order if self.order is not None else self.instance.order

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append({"name": name, "passed": bool(passed), "detail": detail})
        return passed

    def note(self, text: str) -> None:
        if text not in self.notes:
            self.notes.append(text)


def run_pipeline(instance: InstanceSpec, through: str = "verdict",
                 order: Optional[int] = None) -> PipelineRun:
    if through not in STAGES:
        raise ValueError(f"unknown stage {through!r}; stages are {', '.join(STAGES)}")
    run = PipelineRun(instance=instance, through=through, order=order)
    limit = STAGES.index(through)
    state: Dict[str, Any] = {}
    failed_at: Optional[str] = None
    for idx, stage in enumerate(STAGES):
        section = _SECTION_OF.get(stage, stage)
        if idx > limit:
            run.stages.append({"name": stage, "status": "not run",
                               "reason": f"run limited through {through}"})
            run.sections.setdefault(section, {"status": "not run",
                                              "reason": f"run limited through {through}"})
            continue
        if failed_at is not None:
            run.stages.append({"name": stage, "status": "not run",
                               "reason": f"upstream failure in {failed_at}"})
            run.sections.setdefault(section, {"status": "not run",
                                              "reason": f"upstream failure in {failed_at}"})
            continue
        runner = _STAGE_RUNNERS[stage]
        try:
            runner(run, state)
            run.stages.append({"name": stage, "status": "ok"})
        except StageFailure as e:
            run.stages.append({"name": stage, "status": "failed", "reason": str(e)})
            run.sections.setdefault(section, {"status": "failed", "reason": str(e)})
            failed_at = stage
    if through != "verdict":
        run.note(f"partial run through {through}; the verdict reflects only the "
                 f"executed stages")
    return run


# -- stages --------------------------------------------------------------------

def _stage_period(run: PipelineRun, state: Dict[str, Any]) -> None:
    inst = run.instance
    order = run.effective_order()
    spec = PeriodSpec(source=inst.period_source, order=order)
    try:
        src = get_source(inst.period_source)
    except KeyError as e:
        run.check("period.source_known", False, str(e.args[0]))
        raise StageFailure(f"unknown period source {inst.period_source!r}") from e
    run.check("period.source_known", True, f"{src.name}: {src.description}")

    g = period_coefficients(spec)
    run.check("period.initial_coefficient", g.coeff(0) == 1, "a_0 = 1")

    reg_q, content = transform_even_operator(src.regularized)
    qdeg = reg_q.q_degree()
    rescaled = regularized_coefficients(spec, order + qdeg)
    resid = apply(reg_q, rescaled)
    ok = all(c == 0 for c in resid.coeffs)
    run.check("period.regularized_annihilation", ok,
              f"transformed operator (content {rat_str(content)} divided) kills the "
              f"factorially rescaled series through q^{order}")
    if not ok:
        raise StageFailure("regularized operator does not annihilate the rescaled series")

    plain = period_coefficients(spec, order + qdeg)
    plain_resid = apply(reg_q, plain)
    first = [f"{rat_str(c)}*q^{m}" for m, c in enumerate(plain_resid.coeffs) if c != 0][:3]
    if first:
        run.note("the transformed regularized operator annihilates the factorially "
                 "rescaled series, not the plain period series; residual on the "
                 "plain series starts " + " + ".join(first))

    state.update(period=g, spec=spec, source=src, reg_q=reg_q, content=content)
    run.sections["period"] = {
        "status": "ok",
        "source": src.name,
        "description": src.description,
        "order": order,
        "coefficients": series_json(g),
        "regularized_operator_t": operator_json(src.regularized),
        "transformed_operator_q": operator_json(reg_q),
        "transform_content": rat_str(content),
    }


def _stage_ansatz(run: PipelineRun, state: Dict[str, Any]) -> None:
    inst = run.instance
    ring = AmbientRing(nilpotency=inst.nilpotency, pairing=inst.pairing)
    basis = ring.eigenbasis()

    sym_rule = DegreeRule(basis.degrees("symmetric"))
    anti_rule = DegreeRule(basis.degrees("antisymmetric"))
    sym_raw = build_ansatz(basis.symmetric, ring, sym_rule, "symmetric")
    anti = build_ansatz(basis.antisymmetric, ring, anti_rule, "antisymmetric")

    try:
        sym = apply_param_names(sym_raw, inst.param_names)
    except ValueError as e:
        run.check("ansatz.param_mapping", False, str(e))
        raise StageFailure("parameter name mapping failed") from e
    mapping = ", ".join(f"{n}@{pos}" for n, pos in inst.param_names)
    run.check("ansatz.param_mapping",
              sym.params == inst.parameter_order(), mapping)

    ok = True
    for am, bas in ((sym, basis.symmetric), (anti, basis.antisymmetric)):
        gram = gram_matrix(bas, am.matrix.entry(0, 0).vars)
        if not (am.matrix.transpose() * gram - gram * am.matrix).is_zero():
            ok = False
    run.check("ansatz.self_adjointness", ok,
              "M^T G = G M identically in the parameters, both blocks")
    if not ok:
        raise StageFailure("ansatz is not self-adjoint")

    support_ok = True
    for am, rule in ((sym, sym_rule), (anti, anti_rule)):
        n = len(rule.degrees)
        for j in range(n):
            for i in range(n):
                entry = am.matrix.entry(j, i)
                allowed = set(admissible_powers(j, i, rule))
                got = {k for k in range(entry.degree_in("q") + 1)
                       if not entry.coeff_of("q", k).is_zero()}
                if not got <= allowed:
                    support_ok = False
                if not {d for d in allowed if d >= 1} <= got:
                    support_ok = False
    run.check("ansatz.support", support_ok,
              "entries live exactly on the admissible q-powers")

    classical_ok = all(
        am.matrix.map(lambda p: p.coeff_of("q", 0)) ==
        am.classical.map(lambda p: p.rename_vars(am.matrix.entry(0, 0).vars))
        for am in (sym, anti))
    run.check("ansatz.classical_limit", classical_ok,
              "q = 0 recovers the cup product matrix")

    nval = -inst.n_invariant / 2
    run.check("ansatz.antisymmetric_reduction", len(anti.params) == 1,
              f"one free parameter {anti.params[0] if anti.params else '?'}; "
              f"set to -N/2 = {rat_str(nval)} from instance data")
    if len(anti.params) != 1:
        raise StageFailure("antisymmetric reduction did not leave one parameter")
    mminus = substitute_params(anti, {anti.params[0]: nval})

    state.update(ring=ring, basis=basis, sym=sym, anti=anti, mminus=mminus)
    run.sections["ansatz"] = {
        "status": "ok",
        "symmetric_parameters": list(sym.params),
        "canonical_parameters": list(sym_raw.params),
        "parameter_positions": {
            p: [[r, c, rat_str(m), d] for (r, c, m, d) in sym.positions[p]]
            for p in sym.params},
        "symmetric_matrix": matrix_json(sym.matrix),
        "symmetric_display": [[p.render() for p in r] for r in sym.matrix.rows],
        "antisymmetric_parameter": anti.params[0],
        "antisymmetric_value": rat_str(nval),
        "antisymmetric_matrix": matrix_json(mminus),
        "antisymmetric_display": [[p.render() for p in r] for r in mminus.rows],
        "annotation": f"the antisymmetric parameter is -N/2 with N = "
                      f"{rat_str(inst.n_invariant)} taken from the instance, "
                      f"not computed",
    }


def _stage_eliminate(run: PipelineRun, state: Dict[str, Any]) -> None:
    inst = run.instance
    sym = state["sym"]
    op = eliminate(sym.matrix, inst.component)
    ok = cofactor_identity_holds(op, sym.matrix, inst.component)
    run.check("eliminate.cofactor_identity", ok,
              "sum c_k r_k = 0 symbolically, parameters included")
    if not ok:
        raise StageFailure("cofactor identity violated")
    state["operator"] = op
    run.sections["operator"] = {
        "status": "ok",
        "component": inst.component,
        "order": op.order,
        "parametric": operator_json(op),
    }


def _stage_solve(run: PipelineRun, state: Dict[str, Any]) -> None:
    inst = run.instance
    order = run.effective_order()
    op = state["operator"]
    g = state["period"]

    sat = order >= 10
    run.check("solve.saturation", sat,
              f"truncation order {order} supports matching depth {order - 6}")
    if not sat:
        raise StageFailure(f"truncation order {order} < 10 cannot saturate the system")

    eqs = match_equations(op, g, depth=order - 6)
    try:
        report = solve_parameters(eqs, inst.parameter_order(), inst.enumerative)
    except SolveError as e:
        run.check("solve.consistent", False, str(e))
        raise StageFailure(f"solve failed: {e}") from e
    run.check("solve.consistent", True,
              f"{len(report.equations)} matched equations reduce to "
              f"{len(report.reduced)} independent ones")
    run.check("solve.verified", True,
              f"all {len(report.solutions)} solutions satisfy every matched equation")

    unique = len(report.accepted) == 1
    detail = "; ".join(
        "(" + ", ".join(f"{n}={rat_str(x)}" for n, x in zip(report.params, sol)) + ")"
        for sol in report.accepted) or "none accepted"
    run.check("solve.enumerative_unique", unique, detail)
    if not unique:
        raise StageFailure("enumerativity filter did not leave a unique solution")

    values = dict(zip(report.params, report.accepted[0]))
    numeric = op.substitute(values)
    padded = period_coefficients(state["spec"], order + numeric.q_degree())
    resid = apply(numeric, padded)
    ann = all(c == 0 for c in resid.coeffs)
    run.check("solve.annihilation", ann,
              f"solved operator annihilates the period through q^{order}")
    if not ann:
        raise StageFailure("solved operator does not annihilate the period")

    state.update(solution=values, numeric_op=numeric,
                 mplus=substitute_params(state["sym"], values))
    run.sections["solve"] = {
        "status": "ok",
        "equations": {f"q^{m}": poly_json(e) for m, e in report.equations},
        "reduced_system": [e.render() for e in report.reduced],
        "solutions": [{n: rat_str(x) for n, x in zip(report.params, sol)}
                      for sol in report.solutions],
        "accepted": [{n: rat_str(x) for n, x in zip(report.params, sol)}
                     for sol in report.accepted],
        "rejected": [{"solution": {n: rat_str(x) for n, x in zip(report.params, sol)},
                      "reason": why} for sol, why in report.rejected],
        "solved_operator": operator_json(numeric),
        "solved_matrix": matrix_json(state["mplus"]),
    }


def _stage_spectrum(run: PipelineRun, state: Dict[str, Any]) -> None:
    mplus, mminus = state["mplus"], state["mminus"]
    basis = state["basis"]

    blocks = {}
    for name, m, key in (("symmetric", mplus, "plus"),
                         ("antisymmetric", mminus, "minus")):
        chi = char_poly(m.map(lambda p: p.scale(2)))
        try:
            blocks[key] = factor_template(chi, name)
        except TemplateError as e:
            run.check(f"spectrum.template_{key}", False, str(e))
            raise StageFailure(f"spectrum template failed: {e}") from e
        run.check(f"spectrum.template_{key}", True, blocks[key].factored_render())

    report = SpectrumReport(plus=blocks["plus"], minus=blocks["minus"])
    dims_ok = (report.plus.dim == len(basis.symmetric)
               and report.minus.dim == len(basis.antisymmetric))
    run.check("spectrum.block_dims", dims_ok,
              f"dims {report.plus.dim}+{report.minus.dim}, zero multiplicities "
              f"{report.plus.zero_multiplicity} and {report.minus.zero_multiplicity}")
    if not dims_ok:
        raise StageFailure("characteristic polynomial degree mismatch")

    try:
        rec = reciprocity_check(state["source"].regularized, report)
    except TemplateError as e:
        run.check("spectrum.reciprocity", False, str(e))
        raise StageFailure(f"reciprocity check failed: {e}") from e
    report = report.with_reciprocity(rec)
    run.check("spectrum.reciprocity", rec.passed,
              f"singular squares {{{', '.join(rat_str(x) for x in rec.singular_squares)}}} "
              f"vs eigenvalue squares {{{', '.join(rat_str(x) for x in rec.eigen_squares)}}}")
    if not rec.passed:
        raise StageFailure("singular squares are not the reciprocal eigenvalue squares")

    state["spectrum"] = report
    run.sections["spectrum"] = {
        "status": "ok",
        "symmetric": _block_json(report.plus),
        "antisymmetric": _block_json(report.minus),
        "reciprocity": {
            "singular_squares": [rat_str(x) for x in rec.singular_squares],
            "eigen_squares": [rat_str(x) for x in rec.eigen_squares],
            "passed": rec.passed,
        },
    }


def _block_json(b) -> Dict[str, Any]:
    return {
        "chi": bipoly_json(b.chi),
        "factored": b.factored_render(),
        "dim": b.dim,
        "zero_multiplicity": b.zero_multiplicity,
        "eigenvalue_squares": [rat_str(c) for c in b.square_factors],
    }


def _stage_atoms(run: PipelineRun, state: Dict[str, Any]) -> None:
    inst = run.instance
    report = state["spectrum"]

    simple_ok = inst.simple or inst.dim_t == 0
    run.check("atoms.transcendental_simple", simple_ok,
              "simplicity pins rho(T) = 0" if simple_ok
              else "T not flagged simple; rho(T) unknown")
    if not simple_ok:
        raise StageFailure("transcendental part not known simple")

    zero_plus = report.plus.zero_multiplicity
    if inst.a0plus_override is not None:
        zero_plus = inst.a0plus_override
        run.note(f"dim E_0^+ overridden to {zero_plus} by the instance file "
                 f"(computed value {report.plus.zero_multiplicity})")
    zero_minus = report.minus.zero_multiplicity

    try:
        trans = transcendental_invariants(inst)
        cases = assemble_zero_atoms(inst, zero_plus, zero_minus)
    except AtomError as e:
        run.check("atoms.invariants_valid", False, str(e))
        raise StageFailure(f"atom assembly failed: {e}") from e
    run.check("atoms.invariants_valid", True,
              "rho within the (p,p) dimension and non-negative Hodge multiplicities")

    case_json = {}
    targets = []
    for case, check_name in ((cases[0], "atoms.case_T_plus_obstructed"),
                             (cases[1], "atoms.case_T_minus_obstructed")):
        ob = case.obstructed()
        detail_parts = []
        for atom in case.atoms():
            detail_parts.append(
                f"{atom.label}: t^2 coeff {atom.t2_coefficient()}, rho {atom.rho}")
        run.check(check_name, ob is not None,
                  ("obstructed by " + ob.label + "; " if ob else "no obstructed atom; ")
                  + "; ".join(detail_parts))
        if ob is not None:
            targets.append(ob)
        case_json[case.name] = {
            "E_0^+": {"rho": case.plus.rho, "hodge": case.plus.hodge.render()},
            "E_0^-": {"rho": case.minus.rho, "hodge": case.minus.hodge.render()},
            "obstructed_by": ob.label if ob else None,
        }

    if targets:
        hits = {t.label: exclusion_search(t, EXCLUSION_CENTRES, EXCLUSION_GENUS)
                for t in targets}
        empty = all(not h for h in hits.values())
        run.check("atoms.exclusion_empty", empty,
                  f"no point/curve/surface multiset matches the obstructed atoms "
                  f"(bounds: {EXCLUSION_CENTRES} centres, genus {EXCLUSION_GENUS})")
    else:
        run.check("atoms.exclusion_empty", False, "no obstructed atom to exclude")

    state["cases"] = cases
    run.sections["atoms"] = {
        "status": "ok",
        "transcendental": {"rho": trans.rho, "hodge": trans.hodge.render(),
                           "decomposition": list(inst.tdecomp)},
        "zero_dimensions": {"E_0^+": zero_plus, "E_0^-": zero_minus},
        "cases": case_json,
        "exclusion_bounds": {"max_centres": EXCLUSION_CENTRES,
                             "max_genus": EXCLUSION_GENUS},
    }


def _stage_verdict(run: PipelineRun, state: Dict[str, Any]) -> None:
    all_checks = all(c["passed"] for c in run.checks)
    stages_ok = all(s["status"] == "ok" for s in run.stages)
    cases = state.get("cases")
    both = bool(cases) and all(c.obstructed() is not None for c in cases)
    run.verdict = "IRRATIONAL_CERTIFIED" if (all_checks and stages_ok and both) \
        else "INCONCLUSIVE"


_STAGE_RUNNERS = {
    "period": _stage_period,
    "ansatz": _stage_ansatz,
    "eliminate": _stage_eliminate,
    "solve": _stage_solve,
    "spectrum": _stage_spectrum,
    "atoms": _stage_atoms,
    "verdict": _stage_verdict,
}


# -- certificate assembly -------------------------------------------------------

def build_certificate(run: PipelineRun) -> Dict[str, Any]:
    inst = run.instance
    cert: Dict[str, Any] = {
        "engine_version": __version__,
        "verdict": run.verdict,
        "checks": run.checks,
        "stages": run.stages,
        "instance": {
            "name": inst.name,
            "sha256": inst.source_sha256,
            "order": run.effective_order(),
            "component": inst.component,
            "period_source": inst.period_source,
            "parameters": list(inst.parameter_order()),
            "enumerative": list(inst.enumerative),
            "N": rat_str(inst.n_invariant),
            "hodge": {"h31": inst.h31, "middle": inst.middle, "dimT": inst.dim_t,
                      "tdecomp": list(inst.tdecomp), "simple": inst.simple},
            "metadata": inst.metadata,
        },
        "notes": run.notes,
    }
    for section in ("period", "ansatz", "operator", "solve", "spectrum", "atoms"):
        cert[section] = run.sections.get(
            section, {"status": "not run", "reason": "no result recorded"})
    return cert


def certificate_json(run: PipelineRun) -> str:
    return dump_json(build_certificate(run))


def certificate_text(run: PipelineRun) -> str:
    return dump_text(build_certificate(run))


def exit_code(run: PipelineRun) -> int:
    return 0 if run.verdict == "IRRATIONAL_CERTIFIED" else 2
