"""
Hodge multisets and deformation data
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple

from core.exceptions import DimensionError, InputError
from models.quiver import Quiver
from models.tate import TatePoly


class HodgeMultiset:
    """Multiset of half-integer L-exponents, keyed by twice the exponent"""

    __slots__ = ("_m",)

    def __init__(self, mults: Optional[Mapping[int, int]] = None):
        clean: Dict[int, int] = {}
        for e2, m in (mults or {}).items():
            if m < 0:
                raise InputError("multiplicities must be non-negative")
            if m:
                clean[int(e2)] = int(m)
        self._m = clean

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(sorted(self._m.items()))

    def multiplicity(self, exp_times_2: int) -> int:
        return self._m.get(exp_times_2, 0)

    def total(self) -> int:
        return sum(self._m.values())

    def character(self) -> TatePoly:
        """Sum of t^(2e) over the multiset"""
        return TatePoly({e2: m for e2, m in self._m.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, HodgeMultiset):
            return NotImplemented
        return self._m == other._m

    def __hash__(self):
        return hash(frozenset(self._m.items()))

    def __repr__(self) -> str:
        parts = []
        for e2, m in self.items():
            exp = f"{e2 // 2}" if e2 % 2 == 0 else f"{e2}/2"
            parts.append(f"L^{exp}" + (f" x{m}" if m > 1 else ""))
        return "{" + ", ".join(parts) + "}"


@dataclass(frozen=True)
class DeformationData:
    """Base quiver, per-vertex deformation parameter and potential power"""
    quiver: Quiver
    mu: Tuple[Fraction, ...]
    n: int = 2

    def __post_init__(self):
        mu = tuple(Fraction(x) for x in self.mu)
        if len(mu) != self.quiver.num_vertices:
            raise DimensionError(
                f"mu has {len(mu)} entries, quiver has {self.quiver.num_vertices} vertices"
            )
        if self.n < 1:
            raise InputError("potential power n must be at least 1")
        object.__setattr__(self, "mu", mu)

    def pairing(self, d: Sequence[int]) -> Fraction:
        """mu . d"""
        d = self.quiver.check_dim(d)
        return sum((m * x for m, x in zip(self.mu, d)), Fraction(0))
