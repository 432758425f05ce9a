"""
Representations over prime fields
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.exceptions import DimensionError
from models.quiver import DimVector, Quiver

# residues mod p in an int64 array
FpMatrix = np.ndarray


def fp_matrix(entries, p: int) -> FpMatrix:
    return np.asarray(entries, dtype=np.int64) % p


@dataclass(frozen=True, eq=False)
class FqRep:
    """Matrices over F_p on the arrows of a quiver, in arrow order"""
    quiver: Quiver
    dim: DimVector
    prime: int
    mats: Tuple[FpMatrix, ...]

    def __post_init__(self):
        if len(self.mats) != len(self.quiver.arrows):
            raise DimensionError("one matrix per arrow required")
        mats = []
        for arrow, m in zip(self.quiver.arrows, self.mats):
            m = fp_matrix(m, self.prime)
            shape = (self.dim[self.quiver.vertex_index(arrow.target)], self.dim[self.quiver.vertex_index(arrow.source)])
            if m.size == 0:
                m = m.reshape(shape)
            if m.shape != shape:
                raise DimensionError(f"matrix for {arrow.id!r} has shape {m.shape}, expected {shape}")
            mats.append(m)
        object.__setattr__(self, "mats", tuple(mats))

    @classmethod
    def from_dict(cls, quiver: Quiver, dim: Sequence[int], prime: int, mats: Dict[str, object]) -> "FqRep":
        dim = quiver.check_dim(dim)
        return cls(quiver, dim, prime, tuple(np.asarray(mats[a.id], dtype=np.int64) for a in quiver.arrows))

    def matrix(self, arrow_id: str) -> FpMatrix:
        return self.mats[self.quiver.arrow_ids.index(arrow_id)]

    def digits(self) -> np.ndarray:
        """Entries in enumeration order: arrow order, row-major"""
        if not self.mats:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([m.reshape(-1) for m in self.mats])

    def code(self) -> int:
        """Position in enumeration order"""
        value = 0
        for digit in self.digits().tolist():
            value = value * self.prime + int(digit)
        return value

    def __eq__(self, other) -> bool:
        if not isinstance(other, FqRep):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and self.dim == other.dim
            and self.prime == other.prime
            and all(np.array_equal(a, b) for a, b in zip(self.mats, other.mats))
        )

    def __hash__(self):
        return hash((self.quiver, self.dim, self.prime, self.code()))


@dataclass(frozen=True)
class OrbitRecord:
    code: int
    size: int
    stabilizer: int
    abs_indec: bool


@dataclass(frozen=True)
class OrbitReport:
    """Summary of a GL_d(F_p) orbit count"""
    prime: int
    dim: DimVector
    total_reps: int
    abs_indec_orbit_count: int
    orbit_count_all: Optional[int]
    group_order: int
    method: str
    orbits: List[OrbitRecord] = field(default_factory=list, compare=False)
