"""
BPS invariants, Hodge multisets and the generating series built from them
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence

import structlog

from core.config import settings
from core.exceptions import DimensionError, GenericityError, InputError, NotTateError, SeriesError
from models.hodge import DeformationData, HodgeMultiset
from models.quiver import DimVector, Quiver
from models.series import GradedSeries, dim_vectors_up_to
from models.tate import TatePoly, TateRational
from services.charser import super_exp, super_log
from services.kac import KacSource, kac_polynomial
from services.quiver import euler_form, is_indivisible, is_symmetric

logger = structlog.get_logger(__name__)


class Conventions:
    """Character bookkeeping: V[k] -> t^-k, L^(k2/2) -> t^k2, duality t -> t^-1"""

    @staticmethod
    def shift(k: int) -> TatePoly:
        return TatePoly.monomial(-k)

    @staticmethod
    def tate_twist(k2: int) -> TatePoly:
        return TatePoly.monomial(k2)

    @staticmethod
    def dual(f):
        if isinstance(f, TatePoly):
            return f.map_exponents(lambda e: (-e, 1))
        return f.dual()


conventions = Conventions()

# H(pt/C^*)_vir = sum_{i>=0} L^{1/2 + i}, cohomological side
COHA_VIR = TateRational.geometric(2, TatePoly.monomial(1))
# H_c(pt/C^*)_vir = sum_{i>=0} L^{-1/2 - i}
STACK_VIR = TateRational.geometric(-2, TatePoly.monomial(-1))


def _deformation(Q: Quiver, mu: Sequence, n: int = 2) -> DeformationData:
    return DeformationData(Q, tuple(Fraction(x) for x in mu), n)


def _check_cutoff(cutoff: Optional[int]) -> int:
    cutoff = settings.DEFAULT_CUTOFF if cutoff is None else int(cutoff)
    if cutoff < 0:
        raise SeriesError("cutoff must be non-negative", cutoff=cutoff)
    return cutoff


def _nonzero_dim(Q: Quiver, d: Sequence[int]) -> DimVector:
    d = Q.check_dim(d)
    if not any(d):
        raise DimensionError("BPS invariants are defined for d != 0")
    return d


# ========== DEFORMED BPS INVARIANTS ==========

def dt_refined(Q: Quiver, mu: Sequence, d: Sequence[int], source: Optional[KacSource] = None) -> TatePoly:
    """a_{Q,d}(q^-1) in t, shifted by t^-1 when mu . d = 0"""
    data = _deformation(Q, mu)
    d = _nonzero_dim(Q, d)
    a = kac_polynomial(Q, d, source)
    poly = TatePoly({-2 * i: c for i, c in a.items()})
    if data.pairing(d) == 0:
        poly = poly.shift(-1)
    return poly


def dt_hodge(Q: Quiver, mu: Sequence, d: Sequence[int], source: Optional[KacSource] = None) -> HodgeMultiset:
    """L^-i (mu . d != 0) or L^(-i - 1/2) (mu . d = 0) with multiplicity a_i"""
    poly = dt_refined(Q, mu, d, source)
    return HodgeMultiset({e: int(c) for e, c in poly.items()})


def dt_refined_n(
    Q: Quiver, mu: Sequence, d: Sequence[int], n: int, source: Optional[KacSource] = None
) -> TatePoly:
    """Invariant of the degree-n deformed potential; only n = 1, 2 are Tate"""
    if n < 1:
        raise InputError("potential power n must be at least 1", n=n)
    if n >= 3:
        raise NotTateError("vanishing cycles of x^n are not of Tate type for n >= 3", n=n)
    data = _deformation(Q, mu, n)
    d = _nonzero_dim(Q, d)
    if data.pairing(d) == 0 or n == 2:
        return dt_refined(Q, mu, d, source)
    return TatePoly()


def dt_series(Q: Quiver, mu: Sequence, cutoff: Optional[int] = None, source: Optional[KacSource] = None) -> GradedSeries:
    """sum_d dt_refined(Q, mu, d) x^d"""
    cutoff = _check_cutoff(cutoff)
    _deformation(Q, mu)
    coeffs = {d: dt_refined(Q, mu, d, source) for d in dim_vectors_up_to(Q.num_vertices, cutoff)}
    return GradedSeries(Q.num_vertices, cutoff, coeffs)


# ========== GENERATING SERIES ==========

def free_coha_series(Q: Quiver, cutoff: Optional[int] = None) -> GradedSeries:
    """sum_d x^d t^chi(d,d) prod_i prod_{k<=d_i} (1 - t^2k)^-1"""
    cutoff = _check_cutoff(cutoff)
    coeffs: Dict[DimVector, TateRational] = {}
    for d in dim_vectors_up_to(Q.num_vertices, cutoff):
        den = TatePoly.constant(1)
        for di in d:
            for k in range(1, di + 1):
                den = den * TatePoly({0: 1, 2 * k: -1})
        coeffs[d] = TateRational(TatePoly.monomial(euler_form(Q, d, d)), den)
    return GradedSeries(Q.num_vertices, cutoff, coeffs, constant=1)


def coha_pbw_series(
    Q: Quiver, mu: Sequence, cutoff: Optional[int] = None, source: Optional[KacSource] = None
) -> GradedSeries:
    """Sym of the BPS characters tensored with H(pt/C^*)_vir"""
    return super_exp(dt_series(Q, mu, cutoff, source) * COHA_VIR)


def stack_series_deformed(
    Q: Quiver, mu: Sequence, cutoff: Optional[int] = None, source: Optional[KacSource] = None
) -> GradedSeries:
    """Character of sum_d H_c(stack of Pi_{Q,mu}-modules of dimension d) L^chi(d,d) x^d"""
    cutoff = _check_cutoff(cutoff)
    data = _deformation(Q, mu, n=1)
    coeffs: Dict[DimVector, TateRational] = {}
    for d in dim_vectors_up_to(Q.num_vertices, cutoff):
        if data.pairing(d) != 0:
            continue
        dual = conventions.dual(dt_refined_n(Q, mu, d, 1, source))
        if not dual.is_zero():
            coeffs[d] = STACK_VIR * dual
    logger.debug("stack_series_generators", support=[list(d) for d in coeffs], cutoff=cutoff)
    return super_exp(GradedSeries(Q.num_vertices, cutoff, coeffs))


def integrality_invert(F: GradedSeries, vir_factor) -> GradedSeries:
    """super_log(F) with every coefficient divided by vir_factor"""
    vir = vir_factor if isinstance(vir_factor, TateRational) else TateRational(vir_factor)
    if vir.is_zero():
        raise SeriesError("virtual factor must be nonzero")
    return super_log(F).map_coefficients(lambda c: c / vir)


def symmetric_quiver_dt_series(Q: Quiver, cutoff: Optional[int] = None) -> GradedSeries:
    """Refined DT invariants of a symmetric quiver without potential"""
    if not is_symmetric(Q):
        raise InputError("refined DT series via the free CoHA needs a symmetric quiver")
    return integrality_invert(free_coha_series(Q, cutoff), COHA_VIR)


# ========== INDIVISIBLE MODULI ==========

def check_genericity(Q: Quiver, mu: Sequence, d: Sequence[int], horizon: Optional[int] = None) -> int:
    """Every d' with sum(d') <= horizon and mu . d' = 0 is a multiple of d; returns the horizon"""
    data = _deformation(Q, mu)
    d = _nonzero_dim(Q, d)
    horizon = settings.GENERICITY_HORIZON if horizon is None else int(horizon)
    for other in dim_vectors_up_to(Q.num_vertices, horizon):
        if data.pairing(other) != 0:
            continue
        k = sum(other) // sum(d)
        if sum(other) % sum(d) or tuple(k * x for x in d) != other:
            raise GenericityError(
                "mu is not generic for d within the horizon",
                d=list(d),
                witness=list(other),
                horizon=horizon,
            )
    return horizon


@dataclass(frozen=True)
class ModuliCohomology:
    hodge: HodgeMultiset
    horizon: int


def moduli_cohomology_report(
    Q: Quiver,
    mu: Sequence,
    d: Sequence[int],
    horizon: Optional[int] = None,
    source: Optional[KacSource] = None,
) -> ModuliCohomology:
    data = _deformation(Q, mu)
    d = _nonzero_dim(Q, d)
    if not is_indivisible(d):
        raise InputError("d must be indivisible", d=list(d))
    if data.pairing(d) != 0:
        raise InputError("mu . d must vanish", d=list(d), pairing=str(data.pairing(d)))
    horizon = check_genericity(Q, mu, d, horizon)
    chi = euler_form(Q, d, d)
    a = kac_polynomial(Q, d, source)
    hodge = HodgeMultiset({2 * (1 + i - chi): c for i, c in a.items()})
    logger.info("moduli_cohomology", d=list(d), chi=chi, horizon=horizon)
    return ModuliCohomology(hodge, horizon)


def moduli_cohomology_indivisible(
    Q: Quiver,
    mu: Sequence,
    d: Sequence[int],
    horizon: Optional[int] = None,
    source: Optional[KacSource] = None,
) -> HodgeMultiset:
    """{L^(1 + i - chi(d,d)) with multiplicity a_{Q,d,i}}"""
    return moduli_cohomology_report(Q, mu, d, horizon, source).hodge
