"""
Value types package initialization
"""

from models.quiver import Arrow, DimVector, Quiver
from models.paths import NCPoly, Path, Potential
from models.tate import TatePoly, TateRational
from models.series import GradedSeries
from models.representation import FpMatrix, FqRep, OrbitRecord, OrbitReport
from models.kac import IntPoly
from models.hodge import DeformationData, HodgeMultiset

__all__ = [
    "Arrow",
    "DimVector",
    "Quiver",
    "NCPoly",
    "Path",
    "Potential",
    "TatePoly",
    "TateRational",
    "GradedSeries",
    "FpMatrix",
    "FqRep",
    "OrbitRecord",
    "OrbitReport",
    "IntPoly",
    "DeformationData",
    "HodgeMultiset",
]
