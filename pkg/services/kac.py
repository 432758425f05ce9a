"""
Kac polynomials by interpolating finite-field counts over the smallest primes
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Protocol, Sequence, Tuple

import structlog
from sympy import QQ, Poly, Symbol, interpolate, prime

from cache import KacCache
from core.config import settings
from core.exceptions import DimensionError, IntegralityError, StabilityError
from models.kac import IntPoly
from models.quiver import DimVector, Quiver
from services.fqrep import count_abs_indec_classes
from services.quiver import euler_form, full_subquiver, is_connected, quiver_hash, restrict_dim, support

logger = structlog.get_logger(__name__)

q = Symbol("q")


def degree_bound(Q: Quiver, d: Sequence[int]) -> int:
    """max(0, 1 - chi(d, d))"""
    return max(0, 1 - euler_form(Q, d, d))


def interpolation_primes(count: int) -> List[int]:
    return [int(prime(k)) for k in range(1, count + 1)]


def interpolate_counts(primes: Sequence[int], counts: Sequence[int]) -> IntPoly:
    """Lagrange interpolation; coefficients must be non-negative integers"""
    expr = interpolate(list(zip(primes, counts)), q)
    poly = Poly(expr, q, domain=QQ)
    coeffs: Dict[int, int] = {}
    for (e,), c in poly.terms():
        if c.q != 1:
            raise IntegralityError("non-integral Kac coefficient", exponent=e, value=str(c), primes=list(primes))
        if c < 0:
            raise IntegralityError("negative Kac coefficient", exponent=e, value=str(c), primes=list(primes))
        if c:
            coeffs[e] = int(c.p)
    return IntPoly(coeffs)


class KacSource(Protocol):
    """Anything that can produce a_{Q,d}"""

    def kac_polynomial(self, Q: Quiver, d: Sequence[int]) -> IntPoly:
        ...


@dataclass
class KacResult:
    poly: IntPoly
    primes: List[int] = field(default_factory=list)
    cached: bool = False


def _check_nonzero(Q: Quiver, d: Sequence[int]) -> DimVector:
    d = Q.check_dim(d)
    if not any(d):
        raise DimensionError("Kac polynomials are defined for d != 0")
    return d


class KacService:
    """Oracle-backed Kac polynomials with an in-process memo and the on-disk cache"""

    def __init__(
        self,
        cache: Optional[KacCache] = None,
        use_cache: Optional[bool] = None,
        method: Optional[str] = None,
        workers: Optional[int] = None,
        counter: Optional[Callable[[Quiver, DimVector, int], int]] = None,
    ):
        self.use_cache = settings.KAC_CACHE_ENABLED if use_cache is None else use_cache
        self.cache = cache if cache is not None else (KacCache() if self.use_cache else None)
        self.method = method
        self.workers = workers
        self._counter = counter
        self._memo: Dict[Tuple[str, DimVector], KacResult] = {}

    def count(self, Q: Quiver, d: DimVector, p: int) -> int:
        if self._counter is not None:
            return self._counter(Q, d, p)
        return count_abs_indec_classes(Q, d, p, self.method, self.workers)

    def compute(self, Q: Quiver, d: Sequence[int]) -> KacResult:
        """Fresh oracle computation, no cache involved"""
        d = _check_nonzero(Q, d)
        sub = full_subquiver(Q, support(Q, d))
        dsub = restrict_dim(Q, d, sub)
        if not is_connected(sub):
            return KacResult(IntPoly())
        bound = degree_bound(sub, dsub)
        primes = interpolation_primes(bound + 2)
        counts = [self.count(sub, dsub, p) for p in primes]
        poly = interpolate_counts(primes[:-1], counts[:-1])
        check = interpolate_counts(primes, counts)
        if poly != check:
            raise StabilityError(
                "Kac polynomial changed after adding a prime",
                d=list(d),
                poly={str(e): c for e, c in poly.items()},
                with_extra_prime={str(e): c for e, c in check.items()},
            )
        logger.info("kac_polynomial", d=list(d), bound=bound, primes=primes, counts=counts)
        return KacResult(poly, primes)

    def result(self, Q: Quiver, d: Sequence[int]) -> KacResult:
        d = _check_nonzero(Q, d)
        key = (quiver_hash(Q), d)
        if key in self._memo:
            return self._memo[key]
        hit = self.cache.get(Q, d) if self.use_cache and self.cache is not None else None
        if hit is not None:
            result = KacResult(hit[0], hit[1], cached=True)
        else:
            result = self.compute(Q, d)
            if self.use_cache and self.cache is not None:
                self.cache.put(Q, d, result.poly, result.primes)
        self._memo[key] = result
        return result

    def kac_polynomial(self, Q: Quiver, d: Sequence[int]) -> IntPoly:
        return self.result(Q, d).poly

    def kac_coefficient(self, Q: Quiver, d: Sequence[int], i: int) -> int:
        return self.kac_polynomial(Q, d).coefficient(i)

    def spot_check(self, Q: Quiver, fraction: float = 0.1, seed: Optional[int] = None) -> int:
        if self.cache is None:
            return 0
        return self.cache.spot_check(Q, lambda d: self.compute(Q, d).poly, fraction, seed)


class TableKacSource:
    """Kac polynomials from an explicit table; missing entries are 0"""

    def __init__(self, table: Mapping[DimVector, object], rule: Optional[Callable[[DimVector], Optional[IntPoly]]] = None):
        self._table = {tuple(d): p if isinstance(p, IntPoly) else IntPoly(p) for d, p in table.items()}
        self._rule = rule

    def kac_polynomial(self, Q: Quiver, d: Sequence[int]) -> IntPoly:
        d = _check_nonzero(Q, d)
        if d in self._table:
            return self._table[d]
        if self._rule is not None:
            found = self._rule(d)
            if found is not None:
                return found
        return IntPoly()

    def kac_coefficient(self, Q: Quiver, d: Sequence[int], i: int) -> int:
        return self.kac_polynomial(Q, d).coefficient(i)


def affine_a1_kac_table(d: DimVector) -> Optional[IntPoly]:
    """a_{(m,n)} for the two-cycle quiver: q + 1 on (n,n), 1 on (n, n +- 1), else 0"""
    m, n = d
    if m == n:
        return IntPoly({0: 1, 1: 1})
    if abs(m - n) == 1:
        return IntPoly({0: 1})
    return IntPoly()


_default: Optional[KacService] = None


def default_service() -> KacService:
    global _default
    if _default is None:
        _default = KacService()
    return _default


def kac_polynomial(Q: Quiver, d: Sequence[int], source: Optional[KacSource] = None) -> IntPoly:
    return (source or default_service()).kac_polynomial(Q, d)


def kac_coefficient(Q: Quiver, d: Sequence[int], i: int, source: Optional[KacSource] = None) -> int:
    return kac_polynomial(Q, d, source).coefficient(i)
