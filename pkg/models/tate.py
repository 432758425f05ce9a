"""
Tate characters: Laurent polynomials and rational functions in t = q^(1/2)
"""

from fractions import Fraction
from typing import Callable, Dict, Iterator, Mapping, Optional, Tuple, Union

from sympy import QQ, Poly, Rational, Symbol

from core.exceptions import SeriesError

T = Symbol("t")

Scalar = Union[int, Fraction]


class TatePoly:
    """Finitely supported map t-exponent -> rational coefficient"""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Optional[Mapping[int, Scalar]] = None):
        clean: Dict[int, Fraction] = {}
        for e, c in (coeffs or {}).items():
            c = Fraction(c)
            if c:
                clean[int(e)] = c
        self._c = clean

    @classmethod
    def monomial(cls, exp: int, coeff: Scalar = 1) -> "TatePoly":
        return cls({exp: coeff})

    @classmethod
    def constant(cls, c: Scalar) -> "TatePoly":
        return cls({0: c})

    @property
    def coeffs(self) -> Dict[int, Fraction]:
        return dict(self._c)

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(sorted(self._c.items()))

    def __getitem__(self, exp: int) -> Fraction:
        return self._c.get(exp, Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def min_exp(self) -> int:
        return min(self._c) if self._c else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, TatePoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == TatePoly.constant(other)._c
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other) -> "TatePoly":
        other = as_tate_poly(other)
        out = dict(self._c)
        for e, c in other._c.items():
            out[e] = out.get(e, Fraction(0)) + c
        return TatePoly(out)

    __radd__ = __add__

    def __neg__(self) -> "TatePoly":
        return TatePoly({e: -c for e, c in self._c.items()})

    def __sub__(self, other) -> "TatePoly":
        return self + (-as_tate_poly(other))

    def __rsub__(self, other) -> "TatePoly":
        return as_tate_poly(other) - self

    def __mul__(self, other) -> "TatePoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = as_tate_poly(other)
        out: Dict[int, Fraction] = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, Fraction(0)) + c1 * c2
        return TatePoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TatePoly":
        if k < 0:
            raise SeriesError("negative power of a TatePoly")
        out = TatePoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c: Scalar) -> "TatePoly":
        return TatePoly({e: v * c for e, v in self._c.items()})

    def shift(self, k: int) -> "TatePoly":
        """Multiply by t^k"""
        return TatePoly({e + k: c for e, c in self._c.items()})

    def map_exponents(self, fn: Callable[[int], Tuple[int, int]]) -> "TatePoly":
        """Apply t^e -> sign * t^e' where fn(e) = (e', sign)"""
        out: Dict[int, Fraction] = {}
        for e, c in self._c.items():
            e2, sign = fn(e)
            out[e2] = out.get(e2, Fraction(0)) + sign * c
        return TatePoly(out)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._c.values())

    def to_sympy(self) -> Poly:
        """Poly in t; requires no negative exponents"""
        if self._c and self.min_exp() < 0:
            raise SeriesError("negative exponent in polynomial conversion")
        rep = {(e,): Rational(c.numerator, c.denominator) for e, c in self._c.items()}
        if not rep:
            return Poly(0, T, domain=QQ)
        return Poly.from_dict(rep, T, domain=QQ)

    @classmethod
    def from_sympy(cls, poly: Poly) -> "TatePoly":
        return cls({m[0]: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})

    def __repr__(self) -> str:
        return "TatePoly({" + ", ".join(f"{e}: {c}" for e, c in self.items()) + "})"


def as_tate_poly(x) -> TatePoly:
    if isinstance(x, TatePoly):
        return x
    if isinstance(x, (int, Fraction)):
        return TatePoly.constant(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as TatePoly")


class TateRational:
    """Reduced quotient of TatePolys; denominator has lowest exponent 0 and constant term 1"""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = as_tate_poly(num)
        den = TatePoly.constant(1) if den is None else as_tate_poly(den)
        if den.is_zero():
            raise SeriesError("division by zero")
        self.num, self.den = _reduce(num, den)

    @classmethod
    def zero(cls) -> "TateRational":
        return cls(TatePoly())

    @classmethod
    def one(cls) -> "TateRational":
        return cls(TatePoly.constant(1))

    @classmethod
    def geometric(cls, exp: int, lead: Optional[TatePoly] = None) -> "TateRational":
        """lead / (1 - t^exp)"""
        lead = TatePoly.constant(1) if lead is None else lead
        return cls(lead, TatePoly({0: 1, exp: -1}))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == TatePoly.constant(1)

    def as_poly(self) -> TatePoly:
        if not self.is_polynomial():
            raise SeriesError("not a Laurent polynomial")
        return self.num

    def __eq__(self, other) -> bool:
        if isinstance(other, (TatePoly, int, Fraction)):
            other = TateRational(other)
        if not isinstance(other, TateRational):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other) -> "TateRational":
        other = as_tate_rational(other)
        if self.den == other.den:
            return TateRational(self.num + other.num, self.den)
        return TateRational(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "TateRational":
        return TateRational(-self.num, self.den)

    def __sub__(self, other) -> "TateRational":
        return self + (-as_tate_rational(other))

    def __rsub__(self, other) -> "TateRational":
        return as_tate_rational(other) - self

    def __mul__(self, other) -> "TateRational":
        if isinstance(other, (int, Fraction)):
            return TateRational(self.num.scale(other), self.den)
        other = as_tate_rational(other)
        return TateRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "TateRational":
        if isinstance(other, (int, Fraction)):
            if not other:
                raise SeriesError("division by zero")
            return TateRational(self.num.scale(Fraction(1) / Fraction(other)), self.den)
        other = as_tate_rational(other)
        if other.is_zero():
            raise SeriesError("division by zero")
        return TateRational(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "TateRational":
        return as_tate_rational(other) / self

    def __pow__(self, k: int) -> "TateRational":
        if k < 0:
            return TateRational.one() / (self ** (-k))
        return TateRational(self.num ** k, self.den ** k)

    def map_exponents(self, fn: Callable[[int], Tuple[int, int]]) -> "TateRational":
        return TateRational(self.num.map_exponents(fn), self.den.map_exponents(fn))

    def dual(self) -> "TateRational":
        """t -> t^-1"""
        return self.map_exponents(lambda e: (-e, 1))

    def expand(self, lo: int, hi: int, direction: str = "ascending") -> Dict[int, Fraction]:
        """Laurent expansion coefficients with exponents in [lo, hi]"""
        if direction == "descending":
            mirrored = self.dual().expand(-hi, -lo, "ascending")
            return {-e: c for e, c in mirrored.items()}
        if direction != "ascending":
            raise SeriesError(f"unknown expansion direction {direction!r}")
        if self.num.is_zero():
            return {}
        start = self.num.min_exp()
        den = self.den.coeffs
        series: Dict[int, Fraction] = {}
        for k in range(start, hi + 1):
            c = self.num[k] - sum(dj * series.get(k - j, Fraction(0)) for j, dj in den.items() if j > 0)
            series[k] = c
        return {e: c for e, c in series.items() if lo <= e <= hi and c}

    def __repr__(self) -> str:
        return f"TateRational({self.num!r} / {self.den!r})"


def as_tate_rational(x) -> TateRational:
    if isinstance(x, TateRational):
        return x
    return TateRational(as_tate_poly(x))


def _reduce(num: TatePoly, den: TatePoly) -> Tuple[TatePoly, TatePoly]:
    """Cancel common factors and normalize the denominator"""
    if num.is_zero():
        return TatePoly(), TatePoly.constant(1)
    k = den.min_exp()
    num, den = num.shift(-k), den.shift(-k)
    if not (num.is_monomial() or den.is_monomial()):
        m = num.min_exp()
        n0 = num.shift(-m).to_sympy()
        g = n0.gcd(den.to_sympy())
        if g.degree() > 0:
            num = TatePoly.from_sympy(n0.exquo(g)).shift(m)
            den = TatePoly.from_sympy(den.to_sympy().exquo(g))
    lead = den[0]
    if lead != 1:
        inv = Fraction(1) / lead
        num, den = num.scale(inv), den.scale(inv)
    return num, den
