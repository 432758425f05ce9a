"""
count: GL_d(F_p) orbit report from the finite-field oracle
"""

from commands.common import CommandResult, require_quiver
from schemas.job import JobSpec
from schemas.results import OrbitReportOut
from services.fqrep import mass_report, orbit_report


def run(job: JobSpec) -> CommandResult:
    Q = require_quiver(job)
    # the canonical sweep is the default here since it lists every orbit
    if job.method == "mass":
        report = mass_report(Q, job.dim, job.prime, job.workers)
    else:
        report = orbit_report(Q, job.dim, job.prime, job.workers)
    out = OrbitReportOut.from_report(report, with_orbits=True)
    lines = [
        f"abs_indec_orbit_count: {out.abs_indec_orbit_count}",
        f"total_reps: {out.total_reps}",
        f"group_order: {out.group_order}",
    ]
    if out.orbit_count_all is not None:
        lines.append(f"orbit_count_all: {out.orbit_count_all}")
    return CommandResult(result=out.model_dump(exclude_none=True), lines=lines)
