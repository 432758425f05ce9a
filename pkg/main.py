"""
quiverdt command-line entry point
"""

import argparse
import json
import sys
from typing import List, Optional

import structlog
from pydantic import ValidationError

from commands import HANDLERS
from core.config import settings
from core.exceptions import EXIT_OK, InputError, handle_exception
from core.logging import setup_logging
from schemas.job import ACTIONS, SERIES_KINDS, JobSpec

logger = structlog.get_logger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so usage errors get the JSON error form"""

    def error(self, message: str):
        raise InputError(message)


def _shared_flags() -> argparse.ArgumentParser:
    shared = ArgumentParser(add_help=False)
    shared.add_argument("--quiver", help="quiver JSON file or one of point, jordan, affA1")
    shared.add_argument("--mu", help="deformation parameter, e.g. 1,-1 or 1/2,0")
    shared.add_argument("--dim", help="dimension vector, e.g. 1,1")
    shared.add_argument("--cutoff", type=int, help="total-degree truncation of series")
    shared.add_argument("--prime", type=int, help="field size for the oracle")
    shared.add_argument("--format", default="json", choices=["json", "text"])
    shared.add_argument("--cache", help="Kac cache directory")
    shared.add_argument("--no-cache", dest="no_cache", action="store_true", help="bypass the Kac cache")
    shared.add_argument(
        "--method",
        choices=["canonical", "mass"],
        help=f"orbit counting method (count: canonical by default; kac, dt, series: {settings.ORBIT_METHOD} by default)",
    )
    shared.add_argument("--workers", type=int, help="oracle worker processes")
    shared.add_argument("--power", type=int, default=2, help="power n of the deformation term")
    return shared


def build_parser() -> ArgumentParser:
    shared = _shared_flags()
    parser = ArgumentParser(prog=settings.APP_NAME, description="Kac polynomials and BPS invariants of quivers")
    parser.add_argument("--version", action="version", version=f"{settings.APP_NAME} {settings.VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("kac", parents=[shared], help="Kac polynomial a_{Q,d}(q)")

    dt = sub.add_parser("dt", parents=[shared], help="refined and Hodge BPS invariants")
    dt.add_argument("--moduli", action="store_true", help="also report H_c of the moduli space for indivisible d")

    series = sub.add_parser("series", parents=[shared], help="generating series")
    series.add_argument("--kind", required=True, choices=list(SERIES_KINDS))
    series.add_argument("--expand", help="expansion window LO:HI for each coefficient")

    potential = sub.add_parser("potential", parents=[shared], help="potential calculus and symbolic checks")
    potential.add_argument("--action", required=True, choices=list(ACTIONS))
    potential.add_argument("--potential", help="potential text, e.g. '1/2 * w0.w0 - 1 * a.b'")
    potential.add_argument("--subst", action="append", default=[], help="ARROW=NCPOLY, repeatable")
    potential.add_argument("--arrow", help="arrow to differentiate by")

    sub.add_parser("count", parents=[shared], help="orbit report from the finite-field oracle")
    return parser


def parse_job(argv: Optional[List[str]] = None) -> JobSpec:
    args = vars(build_parser().parse_args(argv))
    try:
        return JobSpec(**{k: v for k, v in args.items() if v is not None})
    except ValidationError as e:
        raise InputError("; ".join(err["msg"] for err in e.errors())) from None


def _emit(document) -> None:
    sys.stdout.write(json.dumps(document, sort_keys=True, ensure_ascii=False, indent=2) + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    setup_logging()
    fmt = "json"
    try:
        job = parse_job(argv)
        fmt = job.format
        logger.info("command_start", command=job.command)
        outcome = HANDLERS[job.command](job)
    except Exception as exc:
        payload, code = handle_exception(exc)
        if fmt == "text":
            sys.stdout.write(f"error ({payload['error']['kind']}): {payload['error']['detail']}\n")
        else:
            _emit(payload)
        return code
    if job.format == "text":
        for line in outcome.lines:
            sys.stdout.write(line + "\n")
    else:
        _emit({"version": settings.VERSION, "command": job.command, "result": outcome.result})
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
