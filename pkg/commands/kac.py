"""
kac: Kac polynomial of a dimension vector
"""

from commands.common import CommandResult, kac_service, require_quiver
from schemas.job import JobSpec
from services.formats import int_poly_json, render_int_poly


def run(job: JobSpec) -> CommandResult:
    Q = require_quiver(job)
    result = kac_service(job).result(Q, job.dim)
    text = render_int_poly(result.poly)
    return CommandResult(
        result={
            "d": list(job.dim),
            "poly": int_poly_json(result.poly),
            "text": text,
            "primes": result.primes,
            "cached": result.cached,
        },
        lines=[text],
    )
