"""
Pydantic schemas for command results
"""

from typing import List, Optional

from pydantic import BaseModel

from models.hodge import HodgeMultiset
from models.representation import OrbitReport


class HodgeEntry(BaseModel):
    """One L^(L_exp_times_2 / 2) with its multiplicity"""
    L_exp_times_2: int
    mult: int

    @classmethod
    def from_multiset(cls, h: HodgeMultiset) -> List["HodgeEntry"]:
        return [cls(L_exp_times_2=e2, mult=m) for e2, m in h.items()]


class OrbitOut(BaseModel):
    code: int
    size: int
    stabilizer: int
    abs_indec: bool


class OrbitReportOut(BaseModel):
    """OrbitReport as printed by the count command"""
    prime: int
    dim: List[int]
    total_reps: int
    abs_indec_orbit_count: int
    orbit_count_all: Optional[int] = None
    group_order: int
    method: str
    orbits: Optional[List[OrbitOut]] = None

    @classmethod
    def from_report(cls, report: OrbitReport, with_orbits: bool = False) -> "OrbitReportOut":
        orbits = None
        if with_orbits and report.orbits:
            orbits = [OrbitOut(code=o.code, size=o.size, stabilizer=o.stabilizer, abs_indec=o.abs_indec) for o in report.orbits]
        return cls(
            prime=report.prime,
            dim=list(report.dim),
            total_reps=report.total_reps,
            abs_indec_orbit_count=report.abs_indec_orbit_count,
            orbit_count_all=report.orbit_count_all,
            group_order=report.group_order,
            method=report.method,
            orbits=orbits,
        )
