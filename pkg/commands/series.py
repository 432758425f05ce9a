"""
series: truncated generating series of BPS, CoHA and stack characters
"""

from commands.common import CommandResult, kac_service, mu_or_zero, require_quiver
from schemas.job import JobSpec
from services.bps import coha_pbw_series, dt_series, free_coha_series, stack_series_deformed
from services.formats import fraction_str, render_series, series_json

# expansion direction per kind: cohomology grows in t, compact supports in t^-1
DIRECTIONS = {"free": "ascending", "coha": "ascending", "dt": "ascending", "stack": "descending"}


def run(job: JobSpec) -> CommandResult:
    Q = require_quiver(job)
    mu = mu_or_zero(job, Q)
    if job.kind == "free":
        series = free_coha_series(Q, job.cutoff)
    elif job.kind == "coha":
        series = coha_pbw_series(Q, mu, job.cutoff, kac_service(job))
    elif job.kind == "stack":
        series = stack_series_deformed(Q, mu, job.cutoff, kac_service(job))
    else:
        series = dt_series(Q, mu, job.cutoff, kac_service(job))
    direction = DIRECTIONS[job.kind]
    return CommandResult(
        result={
            "kind": job.kind,
            "cutoff": series.cutoff,
            "mu": [fraction_str(m) for m in mu],
            "direction": direction,
            "terms": series_json(series, job.window, direction),
        },
        lines=render_series(series, job.window, direction),
    )
