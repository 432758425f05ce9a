"""
Integer polynomials in q
"""

from typing import Dict, Iterator, Mapping, Optional, Tuple

from core.exceptions import IntegralityError


class IntPoly:
    """Polynomial in q with integer coefficients, stored sparsely"""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Optional[Mapping[int, int]] = None):
        clean: Dict[int, int] = {}
        for e, c in (coeffs or {}).items():
            e = int(e)
            if e < 0:
                raise IntegralityError(f"negative exponent {e} in IntPoly")
            if int(c) != c:
                raise IntegralityError(f"non-integer coefficient {c} in IntPoly")
            if c:
                clean[e] = int(c)
        self._c = clean

    @property
    def coeffs(self) -> Dict[int, int]:
        return dict(self._c)

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(sorted(self._c.items()))

    def coefficient(self, i: int) -> int:
        return self._c.get(i, 0)

    def degree(self) -> int:
        return max(self._c) if self._c else -1

    def is_zero(self) -> bool:
        return not self._c

    def evaluate(self, q: int) -> int:
        return sum(c * q**e for e, c in self._c.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPoly):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == IntPoly({0: other})._c
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __repr__(self) -> str:
        return f"IntPoly({dict(self.items())})"
