"""
Truncated N^{Q_0}-graded series with TateRational coefficients
"""

from typing import Callable, Dict, Iterator, List, Mapping, Optional, Tuple

from core.exceptions import SeriesError
from models.quiver import DimVector
from models.tate import TateRational, as_tate_rational


def dim_vectors_up_to(nverts: int, cutoff: int, include_zero: bool = False) -> List[DimVector]:
    """All d with sum(d) <= cutoff, ordered by total degree then lexicographically"""
    out: List[DimVector] = []

    def rec(prefix: Tuple[int, ...], remaining: int):
        if len(prefix) == nverts:
            out.append(prefix)
            return
        for k in range(remaining + 1):
            rec(prefix + (k,), remaining - k)

    rec((), cutoff)
    if not include_zero:
        out = [d for d in out if any(d)]
    return sorted(out, key=lambda d: (sum(d), tuple(-x for x in d)))


class GradedSeries:
    """Sum of x^d * coeff over d with sum(d) <= cutoff, constant term tracked separately"""

    __slots__ = ("nverts", "cutoff", "constant", "_c")

    def __init__(
        self,
        nverts: int,
        cutoff: int,
        coeffs: Optional[Mapping[DimVector, object]] = None,
        constant=0,
    ):
        if nverts < 0 or cutoff < 0:
            raise SeriesError("vertex count and cutoff must be non-negative")
        self.nverts = nverts
        self.cutoff = cutoff
        self.constant = as_tate_rational(constant)
        clean: Dict[DimVector, TateRational] = {}
        for d, c in (coeffs or {}).items():
            d = tuple(int(x) for x in d)
            if len(d) != nverts or any(x < 0 for x in d):
                raise SeriesError(f"bad degree {d} for {nverts} vertices")
            if not any(d):
                self.constant = self.constant + as_tate_rational(c)
                continue
            if sum(d) > cutoff:
                continue
            c = as_tate_rational(c)
            if d in clean:
                c = clean[d] + c
            if c.is_zero():
                clean.pop(d, None)
            else:
                clean[d] = c
        self._c = clean

    @classmethod
    def one(cls, nverts: int, cutoff: int) -> "GradedSeries":
        return cls(nverts, cutoff, constant=1)

    def coefficient(self, d) -> TateRational:
        d = tuple(d)
        if not any(d):
            return self.constant
        return self._c.get(d, TateRational.zero())

    def items(self) -> Iterator[Tuple[DimVector, TateRational]]:
        return iter(sorted(self._c.items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0]))))

    def support(self) -> List[DimVector]:
        return [d for d, _ in self.items()]

    def is_zero(self) -> bool:
        return self.constant.is_zero() and not self._c

    def _check(self, other: "GradedSeries") -> None:
        if self.nverts != other.nverts:
            raise SeriesError("series over different vertex sets")

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSeries):
            return NotImplemented
        if self.nverts != other.nverts:
            return False
        cutoff = min(self.cutoff, other.cutoff)
        if self.constant != other.constant:
            return False
        keys = {d for d in self._c if sum(d) <= cutoff} | {d for d in other._c if sum(d) <= cutoff}
        return all(self.coefficient(d) == other.coefficient(d) for d in keys)

    __hash__ = None

    def __add__(self, other: "GradedSeries") -> "GradedSeries":
        self._check(other)
        cutoff = min(self.cutoff, other.cutoff)
        out: Dict[DimVector, TateRational] = {}
        for d in set(self._c) | set(other._c):
            if sum(d) <= cutoff:
                out[d] = self.coefficient(d) + other.coefficient(d)
        return GradedSeries(self.nverts, cutoff, out, self.constant + other.constant)

    def __neg__(self) -> "GradedSeries":
        return self.map_coefficients(lambda c: -c)

    def __sub__(self, other: "GradedSeries") -> "GradedSeries":
        return self + (-other)

    def __mul__(self, other) -> "GradedSeries":
        if not isinstance(other, GradedSeries):
            factor = as_tate_rational(other)
            return self.map_coefficients(lambda c: c * factor)
        self._check(other)
        cutoff = min(self.cutoff, other.cutoff)
        left = dict(self._c)
        right = dict(other._c)
        left[(0,) * self.nverts] = self.constant
        right[(0,) * self.nverts] = other.constant
        out: Dict[DimVector, TateRational] = {}
        for d1, c1 in left.items():
            if c1.is_zero():
                continue
            for d2, c2 in right.items():
                if c2.is_zero():
                    continue
                d = tuple(a + b for a, b in zip(d1, d2))
                if sum(d) > cutoff:
                    continue
                term = c1 * c2
                out[d] = out[d] + term if d in out else term
        return GradedSeries(self.nverts, cutoff, out)

    __rmul__ = __mul__

    def map_coefficients(
        self, fn: Callable[[TateRational], TateRational], include_constant: bool = True
    ) -> "GradedSeries":
        constant = fn(self.constant) if include_constant else self.constant
        return GradedSeries(self.nverts, self.cutoff, {d: fn(c) for d, c in self._c.items()}, constant)

    def is_integral(self) -> bool:
        """Every coefficient has integral reduced numerator and denominator"""
        coeffs = [self.constant, *self._c.values()]
        return all(c.num.is_integral() and c.den.is_integral() for c in coeffs)

    def __repr__(self) -> str:
        terms = [f"x^{list(d)}: {c!r}" for d, c in self.items()]
        return f"GradedSeries(cutoff={self.cutoff}, const={self.constant!r}, {terms})"
