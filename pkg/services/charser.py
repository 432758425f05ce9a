"""
Super plethystic exponential and logarithm on truncated graded series
"""

from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

import structlog
from sympy.ntheory import mobius

from core.exceptions import SeriesError
from models.quiver import DimVector
from models.series import GradedSeries, dim_vectors_up_to
from models.tate import TatePoly, TateRational

logger = structlog.get_logger(__name__)


def _psi_exponent(k: int):
    # t -> -(-t)^k
    return lambda e: (e * k, -1 if (e * (k + 1)) % 2 else 1)


def psi(f: Union[GradedSeries, TateRational, TatePoly], k: int):
    """Signed Adams operation: t^j -> (-1)^{j(k+1)} t^{jk}, x^d -> x^{kd}"""
    if k < 1:
        raise SeriesError("Adams operations are indexed by k >= 1")
    if k == 1:
        return f
    if isinstance(f, (TateRational, TatePoly)):
        return f.map_exponents(_psi_exponent(k))
    coeffs = {}
    for d, c in f.items():
        if sum(d) * k <= f.cutoff:
            coeffs[tuple(k * x for x in d)] = c.map_exponents(_psi_exponent(k))
    return GradedSeries(f.nverts, f.cutoff, coeffs, f.constant.map_exponents(_psi_exponent(k)))


def _leq(e: DimVector, d: DimVector) -> bool:
    return all(a <= b for a, b in zip(e, d))


def _sub(d: DimVector, e: DimVector) -> DimVector:
    return tuple(a - b for a, b in zip(d, e))


def _exp(G: GradedSeries) -> GradedSeries:
    """Ordinary exponential via |d| F_d = sum_e |e| G_e F_{d-e}"""
    zero = (0,) * G.nverts
    F: Dict[DimVector, TateRational] = {zero: TateRational.one()}
    gens = list(G.items())
    for d in dim_vectors_up_to(G.nverts, G.cutoff):
        total = TateRational.zero()
        for e, g in gens:
            if _leq(e, d):
                rest = F.get(_sub(d, e))
                if rest is not None and not rest.is_zero():
                    total = total + g * rest * sum(e)
        if not total.is_zero():
            F[d] = total / sum(d)
    F.pop(zero)
    return GradedSeries(G.nverts, G.cutoff, F, constant=1)


def _log(F: GradedSeries) -> GradedSeries:
    """Ordinary logarithm of a series with constant term 1"""
    G: Dict[DimVector, TateRational] = {}
    for d in dim_vectors_up_to(F.nverts, F.cutoff):
        total = TateRational.zero()
        for e, g in G.items():
            if _leq(e, d) and e != d:
                rest = F.coefficient(_sub(d, e))
                if not rest.is_zero():
                    total = total + g * rest * sum(e)
        value = F.coefficient(d) - total / sum(d)
        if not value.is_zero():
            G[d] = value
    return GradedSeries(F.nverts, F.cutoff, G)


def super_exp(f: GradedSeries) -> GradedSeries:
    """exp(sum_k psi(f, k) / k), truncated at the cutoff"""
    if not f.constant.is_zero():
        raise SeriesError("super_exp needs a series without constant term")
    G = GradedSeries(f.nverts, f.cutoff)
    for k in range(1, f.cutoff + 1):
        G = G + psi(f, k) * TateRational(Fraction(1, k))
    return _exp(G)


def super_log(F: GradedSeries) -> GradedSeries:
    """Inverse of super_exp: sum_k mu(k)/k psi(log F, k)"""
    if F.constant != TateRational.one():
        raise SeriesError("super_log needs constant term 1")
    L = _log(F)
    out = GradedSeries(F.nverts, F.cutoff)
    for k in range(1, F.cutoff + 1):
        m = int(mobius(k))
        if m:
            out = out + psi(L, k) * TateRational(Fraction(m, k))
    logger.debug("super_log", nverts=F.nverts, cutoff=F.cutoff, support=len(out.support()))
    return out


def sym_generators_product(
    gens: Iterable[Tuple[int, Sequence[int], int]],
    cutoff: int,
    nverts: Optional[int] = None,
) -> GradedSeries:
    """prod (1 - t^j x^d)^{-c} over even j times prod (1 + t^j x^d)^c over odd j"""
    gens = [(int(j), tuple(int(x) for x in d), int(c)) for j, d, c in gens]
    if nverts is None:
        if not gens:
            raise SeriesError("vertex count needed for an empty generator list")
        nverts = len(gens[0][1])
    result = GradedSeries.one(nverts, cutoff)
    for j, d, c in gens:
        if c < 0:
            raise SeriesError("generator multiplicities must be non-negative", multiplicity=c)
        if len(d) != nverts or not any(d) or any(x < 0 for x in d):
            raise SeriesError(f"bad generator degree {list(d)}")
        factor: Dict[DimVector, TatePoly] = {}
        n = 1
        while n * sum(d) <= cutoff:
            coeff = comb(n + c - 1, n) if j % 2 == 0 else comb(c, n)
            if coeff:
                factor[tuple(n * x for x in d)] = TatePoly.monomial(j * n, coeff)
            n += 1
        result = result * GradedSeries(nverts, cutoff, factor, constant=1)
    return result


def generators_from_series(f: GradedSeries) -> list:
    """(j, d, c) triples of a series with Laurent polynomial coefficients"""
    gens = []
    for d, c in f.items():
        for j, value in c.as_poly().items():
            if value.denominator != 1 or value < 0:
                raise SeriesError("generator multiplicities must be non-negative integers")
            gens.append((j, d, int(value)))
    return gens
