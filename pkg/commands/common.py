"""
Shared helpers for command handlers
"""

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, List, Tuple

import structlog
from pydantic import ValidationError

from cache import KacCache
from core.exceptions import InputError, QuiverError
from models.quiver import Quiver
from schemas.job import JobSpec
from schemas.quiver import QuiverFile
from services.kac import KacService

logger = structlog.get_logger(__name__)

DATA_DIR = Path(__file__).resolve().parent.parent / "data" / "quivers"
BUILTIN_QUIVERS = ("point", "jordan", "affA1")


@dataclass
class CommandResult:
    """JSON-ready result plus its text rendering"""
    result: Any
    lines: List[str] = field(default_factory=list)


def load_quiver(ref: str) -> Quiver:
    """A built-in name or a path to a quiver JSON file"""
    path = DATA_DIR / f"{ref}.json" if ref in BUILTIN_QUIVERS else Path(ref)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read quiver file {str(path)!r}: {e.strerror}") from None
    except UnicodeDecodeError as e:
        raise InputError(f"quiver file {str(path)!r} is not UTF-8: {e.reason}") from None
    try:
        document = QuiverFile.model_validate_json(text)
    except ValidationError as e:
        raise QuiverError(f"bad quiver file {str(path)!r}", errors=[err["msg"] for err in e.errors()]) from None
    Q = document.to_quiver()
    logger.debug("quiver_loaded", path=str(path), vertices=Q.num_vertices, arrows=len(Q.arrows))
    return Q


def require_quiver(job: JobSpec) -> Quiver:
    if job.quiver is None:
        raise InputError(f"{job.command} needs --quiver")
    return load_quiver(job.quiver)


def mu_or_zero(job: JobSpec, Q: Quiver) -> Tuple[Fraction, ...]:
    if job.mu is None:
        return (Fraction(0),) * Q.num_vertices
    return tuple(job.mu)


def kac_service(job: JobSpec) -> KacService:
    use_cache = False if job.no_cache else None
    cache = KacCache(job.cache) if job.cache and not job.no_cache else None
    return KacService(cache=cache, use_cache=use_cache, method=job.method, workers=job.workers)
