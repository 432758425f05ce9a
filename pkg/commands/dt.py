"""
dt: refined and Hodge BPS invariants of the deformed tripled quiver
"""

from commands.common import CommandResult, kac_service, require_quiver
from models.hodge import HodgeMultiset
from schemas.job import JobSpec
from services.bps import dt_refined_n, moduli_cohomology_report
from services.formats import fraction_str, hodge_json, render_hodge, render_tate_poly, tate_poly_json
from services.quiver import dot


def run(job: JobSpec) -> CommandResult:
    Q = require_quiver(job)
    source = kac_service(job)
    refined = dt_refined_n(Q, job.mu, job.dim, job.power, source)
    hodge = HodgeMultiset({e: int(c) for e, c in refined.items()})
    result = {
        "d": list(job.dim),
        "mu": [fraction_str(m) for m in job.mu],
        "n": job.power,
        "pairing": fraction_str(dot(job.mu, job.dim)),
        "refined": tate_poly_json(refined),
        "refined_text": render_tate_poly(refined),
        "hodge": hodge_json(hodge),
        "hodge_text": render_hodge(hodge),
    }
    lines = [render_tate_poly(refined), render_hodge(hodge)]
    if job.moduli:
        report = moduli_cohomology_report(Q, job.mu, job.dim, source=source)
        result["moduli"] = {"hodge": hodge_json(report.hodge), "horizon": report.horizon}
        lines.append(f"H_c(M_d) = {render_hodge(report.hodge)} (genericity horizon {report.horizon})")
    return CommandResult(result=result, lines=lines)
