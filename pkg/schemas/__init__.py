"""
Pydantic schemas package initialization
"""

from schemas.quiver import ArrowSpec, QuiverFile
from schemas.job import JobSpec
from schemas.cache import KacCacheEntry, KacCacheFile
from schemas.results import HodgeEntry, OrbitOut, OrbitReportOut

__all__ = [
    # Quiver file
    "ArrowSpec",
    "QuiverFile",

    # CLI job
    "JobSpec",

    # Kac cache
    "KacCacheEntry",
    "KacCacheFile",

    # Results
    "HodgeEntry",
    "OrbitOut",
    "OrbitReportOut",
]
