"""
potential: derivatives, Jacobi relations, substitutions and the symbolic checks
"""

from commands.common import CommandResult, mu_or_zero, require_quiver
from core.exceptions import CheckFailed, PotentialError
from models.paths import Potential
from schemas.job import JobSpec
from schemas.quiver import QuiverFile
from services.formats import (
    ncpoly_json,
    parse_potential,
    parse_substitution,
    potential_json,
    render_ncpoly,
    render_potential,
    resolve_arrow,
)
from services.potential import (
    check_conifold,
    check_gkw,
    cyclic_derivative,
    jacobi_relations,
    mu_potential,
    substitute,
)
from services.quiver import triple


def _working_potential(job: JobSpec) -> Potential:
    """--potential parsed on the given quiver, else W~^mu_n on its triple"""
    Q = require_quiver(job)
    if job.potential is not None:
        return parse_potential(Q, job.potential)
    return mu_potential(Q, mu_or_zero(job, Q), job.power)


def _tripled(job: JobSpec) -> CommandResult:
    Q = require_quiver(job)
    W = mu_potential(Q, mu_or_zero(job, Q), job.power)
    return CommandResult(
        result={"quiver": QuiverFile.from_quiver(triple(Q)).dump(), "potential": potential_json(W)},
        lines=[render_potential(W)],
    )


def _derive(job: JobSpec) -> CommandResult:
    if job.arrow is None:
        raise PotentialError("derive needs --arrow")
    W = _working_potential(job)
    arrow = resolve_arrow(W.quiver, job.arrow)
    derivative = cyclic_derivative(W, arrow)
    return CommandResult(
        result={"arrow": arrow, "potential": potential_json(W), "derivative": ncpoly_json(derivative)},
        lines=[render_ncpoly(derivative)],
    )


def _jacobi(job: JobSpec) -> CommandResult:
    W = _working_potential(job)
    relations = jacobi_relations(W.quiver, W)
    return CommandResult(
        result={"potential": potential_json(W), "relations": {a: ncpoly_json(r) for a, r in relations.items()}},
        lines=[f"d/d{a}: {render_ncpoly(r)}" for a, r in relations.items()],
    )


def _substitute(job: JobSpec) -> CommandResult:
    if not job.subst:
        raise PotentialError("substitute needs at least one --subst ARROW=NCPOLY")
    W = _working_potential(job)
    sigma = parse_substitution(W.quiver, job.subst)
    result = substitute(W, sigma)
    return CommandResult(
        result={"potential": potential_json(W), "substituted": potential_json(result)},
        lines=[render_potential(result)],
    )


def _check_gkw(job: JobSpec) -> CommandResult:
    Q = require_quiver(job)
    mu = mu_or_zero(job, Q)
    report = check_gkw(Q, mu, job.power)
    if not report.passed:
        raise CheckFailed(
            "Jacobi relations differ from the deformed preprojective relations",
            mismatches=[
                {"arrow": m.arrow, "got": render_ncpoly(m.got), "expected": render_ncpoly(m.expected)}
                for m in report.mismatches
            ],
        )
    return CommandResult(result={"passed": True, "checked": report.checked}, lines=["PASS"])


def _check_conifold(job: JobSpec) -> CommandResult:
    report = check_conifold()
    if not report.passed:
        raise CheckFailed("conifold substitution left a residual", residual=render_potential(report.residual))
    return CommandResult(
        result={
            "passed": True,
            "substituted": potential_json(report.substituted),
            "expected": potential_json(report.expected),
        },
        lines=["PASS"],
    )


ACTIONS = {
    "tripled": _tripled,
    "derive": _derive,
    "jacobi": _jacobi,
    "substitute": _substitute,
    "check-gkw": _check_gkw,
    "check-conifold": _check_conifold,
}


def run(job: JobSpec) -> CommandResult:
    return ACTIONS[job.action](job)
