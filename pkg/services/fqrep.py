"""
Finite-field oracle: representation enumeration, endomorphism algebras,
absolute indecomposability and GL_d(F_p) orbit counting
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
import structlog
from sympy import isprime

from core.config import settings
from core.exceptions import CapacityError, InputError, OracleError
from models.quiver import DimVector, Quiver
from models.representation import FpMatrix, FqRep, OrbitRecord, OrbitReport
from services.linalg import is_nilpotent_p, nullspace_p, rank_p, row_space_p

logger = structlog.get_logger(__name__)


def check_prime(p: int) -> int:
    if not isprime(int(p)):
        raise InputError(f"{p} is not prime", prime=int(p))
    return int(p)


def arrow_shapes(Q: Quiver, d: DimVector) -> List[Tuple[int, int]]:
    """(rows, cols) = (d_t(a), d_s(a)) per arrow"""
    return [(d[Q.target_index(a.id)], d[Q.source_index(a.id)]) for a in Q.arrows]


def num_digits(Q: Quiver, d: DimVector) -> int:
    return sum(r * c for r, c in arrow_shapes(Q, d))


def count_reps(Q: Quiver, d: Sequence[int], p: int) -> int:
    d = Q.check_dim(d)
    return p ** num_digits(Q, d)


def group_order(d: Sequence[int], p: int) -> int:
    order = 1
    for n in d:
        for j in range(n):
            order *= p**n - p**j
    return order


def _check_reps_cap(count: int) -> None:
    if count > settings.MAX_REPRESENTATIONS:
        raise CapacityError("representations", count, settings.MAX_REPRESENTATIONS)


def _rep_from_digits(Q: Quiver, d: DimVector, p: int, digits: Sequence[int]) -> FqRep:
    mats = []
    offset = 0
    for rows, cols in arrow_shapes(Q, d):
        size = rows * cols
        mats.append(np.asarray(digits[offset:offset + size], dtype=np.int64).reshape(rows, cols))
        offset += size
    return FqRep(Q, d, p, tuple(mats))


def decode_rep(Q: Quiver, d: DimVector, p: int, code: int) -> FqRep:
    """Inverse of FqRep.code"""
    L = num_digits(Q, d)
    digits = [0] * L
    for k in range(L - 1, -1, -1):
        code, digits[k] = divmod(code, p)
    return _rep_from_digits(Q, d, p, digits)


def enumerate_reps(Q: Quiver, d: Sequence[int], p: int, shard: int = 0, shards: int = 1) -> Iterator[FqRep]:
    """Every representation once, in code order; optionally every shards-th one from shard"""
    d = Q.check_dim(d)
    p = check_prime(p)
    _check_reps_cap(count_reps(Q, d, p))
    for index, digits in enumerate(product(range(p), repeat=num_digits(Q, d))):
        if index % shards == shard:
            yield _rep_from_digits(Q, d, p, digits)


# ========== HOMOMORPHISMS ==========

def _offsets(sizes: Sequence[int]) -> List[int]:
    out, total = [], 0
    for s in sizes:
        out.append(total)
        total += s
    return out


def _intertwiner_system(rho: FqRep, rho2: FqRep) -> Tuple[np.ndarray, List[Tuple[int, int]]]:
    """Matrix of f_t rho(a) - rho2(a) f_s = 0 in the row-major entries of (f_i)"""
    Q, d, e = rho.quiver, rho.dim, rho2.dim
    blocks = [(e[i], d[i]) for i in range(Q.num_vertices)]
    col_off = _offsets([r * c for r, c in blocks])
    ncols = sum(r * c for r, c in blocks)
    rows = []
    for arrow, A, B in zip(Q.arrows, rho.mats, rho2.mats):
        s, t = Q.source_index(arrow.id), Q.target_index(arrow.id)
        if e[t] * d[s] == 0:
            continue
        eq = np.zeros((e[t] * d[s], ncols), dtype=np.int64)
        # vec(f_t A) = (I kron A^T) vec(f_t); vec(B f_s) = (B kron I) vec(f_s)
        if d[t]:
            eq[:, col_off[t]:col_off[t] + e[t] * d[t]] += np.kron(np.eye(e[t], dtype=np.int64), A.T)
        if e[s]:
            eq[:, col_off[s]:col_off[s] + e[s] * d[s]] -= np.kron(B, np.eye(d[s], dtype=np.int64))
        rows.append(eq)
    if rows:
        system = np.concatenate(rows, axis=0) % rho.prime
    else:
        system = np.zeros((0, ncols), dtype=np.int64)
    return system, blocks


def _split_blocks(vec: np.ndarray, blocks: Sequence[Tuple[int, int]]) -> Tuple[FpMatrix, ...]:
    out, offset = [], 0
    for r, c in blocks:
        out.append(vec[offset:offset + r * c].reshape(r, c))
        offset += r * c
    return tuple(out)


def _hom_basis(rho: FqRep, rho2: FqRep) -> Tuple[np.ndarray, List[Tuple[int, int]]]:
    if rho.quiver != rho2.quiver or rho.prime != rho2.prime:
        raise InputError("hom_space needs representations of one quiver over one field")
    system, blocks = _intertwiner_system(rho, rho2)
    return nullspace_p(system, rho.prime), blocks


def hom_space(rho: FqRep, rho2: FqRep) -> List[Tuple[FpMatrix, ...]]:
    """Basis of Hom(rho, rho2) as per-vertex matrix tuples"""
    basis, blocks = _hom_basis(rho, rho2)
    return [_split_blocks(row, blocks) for row in basis]


# ========== ENDOMORPHISM ALGEBRAS ==========

@dataclass
class EndAlgebra:
    """End(rho) as a subspace of prod_i M_{d_i}(F_p), elements as flat vectors"""
    prime: int
    dims: Tuple[int, ...]
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    @property
    def size(self) -> int:
        return self.prime**self.dim

    def identity(self) -> np.ndarray:
        return np.concatenate([np.eye(n, dtype=np.int64).reshape(-1) for n in self.dims]) if self.dims else np.zeros(0, np.int64)

    def blocks(self, x: np.ndarray) -> Tuple[np.ndarray, ...]:
        return _split_blocks(np.asarray(x), [(n, n) for n in self.dims])

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        parts = [(a @ b) % self.prime for a, b in zip(self.blocks(x), self.blocks(y))]
        return np.concatenate([m.reshape(-1) for m in parts]) if parts else np.zeros(0, np.int64)

    def is_nilpotent(self, x: np.ndarray) -> bool:
        return all(is_nilpotent_p(block, self.prime) for block in self.blocks(x))

    def elements(self) -> np.ndarray:
        """All p^dim elements, in coefficient order"""
        if settings.MAX_ENDOMORPHISM_SIZE < self.size:
            raise CapacityError("endomorphism algebra elements", self.size, settings.MAX_ENDOMORPHISM_SIZE)
        coeffs = np.array(list(product(range(self.prime), repeat=self.dim)), dtype=np.int64).reshape(-1, self.dim)
        return (coeffs @ self.basis) % self.prime

    def batch_blocks(self, xs: np.ndarray) -> List[np.ndarray]:
        out, offset = [], 0
        for n in self.dims:
            out.append(xs[:, offset:offset + n * n].reshape(xs.shape[0], n, n))
            offset += n * n
        return out

    def units_mask(self, xs: np.ndarray) -> np.ndarray:
        mask = np.ones(xs.shape[0], dtype=bool)
        for block in self.batch_blocks(xs):
            if block.shape[1] == 0:
                continue
            dets = np.rint(np.linalg.det(block.astype(float))).astype(np.int64) % self.prime
            mask &= dets != 0
        return mask


def endomorphism_algebra(rho: FqRep) -> EndAlgebra:
    basis, _ = _hom_basis(rho, rho)
    return EndAlgebra(rho.prime, tuple(rho.dim), basis)


def _span_rank(rows: List[np.ndarray], p: int, width: int) -> int:
    if not rows:
        return 0
    return rank_p(np.array(rows, dtype=np.int64).reshape(len(rows), width), p)


def _is_local_split(E: EndAlgebra) -> bool:
    """E = F_p 1 + U with U a nilpotent two-sided subalgebra of codimension 1"""
    p, width = E.prime, int(E.basis.shape[1])
    one = E.identity()
    nilpotents = []
    for b in E.basis:
        for lam in range(p):
            n = (b - lam * one) % p
            if E.is_nilpotent(n):
                nilpotents.append(n)
                break
        else:
            return False
    U = row_space_p(np.array(nilpotents, dtype=np.int64).reshape(len(nilpotents), width), p)
    if U.shape[0] != E.dim - 1:
        return False
    if U.shape[0] == 0:
        return True
    products = [E.multiply(x, y) for x in U for y in U]
    if _span_rank(list(U) + products, p, width) != U.shape[0]:
        return False
    power = U
    while power.shape[0]:
        products = [E.multiply(x, y) for x in power for y in U]
        nxt = row_space_p(np.array(products, dtype=np.int64).reshape(len(products), width), p)
        if nxt.shape[0] >= power.shape[0]:
            return False
        power = nxt
    return True


def radical_dimension_by_scan(E: EndAlgebra) -> int:
    """dim J with J = {x : 1 - y x invertible for every y}, by exhaustive scan"""
    elements = E.elements()
    one = E.identity()
    ys = E.batch_blocks(elements)
    count = 0
    for x in elements:
        xb = E.blocks(x)
        products = [np.einsum("gij,jk->gik", yb, b) % E.prime for yb, b in zip(ys, xb)]
        flat = np.concatenate([m.reshape(len(elements), -1) for m in products], axis=1) if products else np.zeros((len(elements), 0), np.int64)
        if E.units_mask((one - flat) % E.prime).all():
            count += 1
    dim = 0
    while E.prime**dim < count:
        dim += 1
    if E.prime**dim != count:
        raise OracleError("radical size is not a power of p", size=count)
    return dim


def idempotents_by_scan(rho: FqRep) -> List[np.ndarray]:
    E = endomorphism_algebra(rho)
    return [x for x in E.elements() if np.array_equal(E.multiply(x, x), x)]


def _abs_indec_end_dim(rho: FqRep, method: str = "structural") -> Optional[int]:
    """dim End(rho) when rho is absolutely indecomposable, else None"""
    if not any(rho.dim):
        return None
    E = endomorphism_algebra(rho)
    if E.dim == 1:
        return 1
    if method == "scan":
        local = E.dim - radical_dimension_by_scan(E) == 1
    elif method == "structural":
        local = _is_local_split(E)
    else:
        raise InputError(f"unknown indecomposability method {method!r}")
    return E.dim if local else None


def is_absolutely_indecomposable(rho: FqRep, method: str = "structural") -> bool:
    """End(rho) modulo its radical is F_p"""
    return _abs_indec_end_dim(rho, method) is not None


# ========== GROUP ACTION ==========

@lru_cache(maxsize=32)
def general_linear_group(n: int, p: int) -> Tuple[np.ndarray, np.ndarray]:
    """All of GL_n(F_p) and their inverses, as (g, n, n) arrays"""
    if n == 0:
        empty = np.zeros((1, 0, 0), dtype=np.int64)
        return empty, empty
    mats = np.array(list(product(range(p), repeat=n * n)), dtype=np.int64).reshape(-1, n, n)
    dets = np.rint(np.linalg.det(mats.astype(float))).astype(np.int64)
    keep = dets % p != 0
    mats, dets = mats[keep], dets[keep]
    adj = np.rint(np.linalg.inv(mats.astype(float)) * dets[:, None, None]).astype(np.int64)
    inv_det = np.array([pow(int(x), -1, p) for x in dets % p], dtype=np.int64)
    invs = (adj * inv_det[:, None, None]) % p
    return mats, invs


class GroupAction:
    """GL_d(F_p) acting on digit vectors of representations"""

    def __init__(self, Q: Quiver, d: DimVector, p: int):
        order = group_order(d, p)
        if order > settings.MAX_GROUP_ORDER:
            raise CapacityError("group order", order, settings.MAX_GROUP_ORDER)
        self.Q, self.d, self.p, self.order = Q, d, p, order
        groups = [general_linear_group(n, p) for n in d]
        sizes = [g[0].shape[0] for g in groups]
        grid = np.indices(sizes).reshape(len(sizes), -1) if sizes else np.zeros((0, 1), dtype=np.int64)
        self._g = [groups[i][0][grid[i]] for i in range(len(sizes))]
        self._ginv = [groups[i][1][grid[i]] for i in range(len(sizes))]
        L = num_digits(Q, d)
        self.powers = np.array([p ** (L - 1 - k) for k in range(L)], dtype=np.int64)

    def image_codes(self, rho: FqRep) -> np.ndarray:
        """Codes of g . rho for every g, in group order"""
        parts = []
        for arrow, M in zip(self.Q.arrows, rho.mats):
            if M.size == 0:
                continue
            s, t = self.Q.source_index(arrow.id), self.Q.target_index(arrow.id)
            image = np.einsum("gij,jk,gkl->gil", self._g[t], M, self._ginv[s]) % self.p
            parts.append(image.reshape(self.order, -1))
        if not parts:
            return np.zeros(self.order, dtype=np.int64)
        return np.concatenate(parts, axis=1) @ self.powers


def canonical_representative(rho: FqRep) -> int:
    """Minimal code in the orbit of rho"""
    action = GroupAction(rho.quiver, rho.dim, rho.prime)
    return int(action.image_codes(rho).min())


def _canonical_shard(args) -> List[int]:
    Q, d, p, shard, shards = args
    action = GroupAction(Q, d, p)
    found = set()
    for rho in enumerate_reps(Q, d, p, shard, shards):
        found.add(int(action.image_codes(rho).min()))
    return sorted(found)


def _orbit_record(action: GroupAction, rho: FqRep) -> Tuple[OrbitRecord, np.ndarray]:
    codes = action.image_codes(rho)
    orbit = np.unique(codes)
    code = rho.code()
    record = OrbitRecord(
        code=code,
        size=int(orbit.size),
        stabilizer=int((codes == code).sum()),
        abs_indec=is_absolutely_indecomposable(rho),
    )
    return record, orbit


def _orbits_by_sweep(Q: Quiver, d: DimVector, p: int, total: int) -> List[OrbitRecord]:
    action = GroupAction(Q, d, p)
    seen = np.zeros(total, dtype=bool)
    records = []
    ptr = 0
    while ptr < total:
        ptr += int(np.argmin(seen[ptr:]))
        if seen[ptr]:
            break
        record, orbit = _orbit_record(action, decode_rep(Q, d, p, ptr))
        seen[orbit] = True
        records.append(record)
        ptr += 1
    return records


def _orbits_by_shards(Q: Quiver, d: DimVector, p: int, workers: int) -> List[OrbitRecord]:
    jobs = [(Q, d, p, k, workers) for k in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        shard_sets = list(pool.map(_canonical_shard, jobs))
    representatives = sorted(set().union(*shard_sets))
    action = GroupAction(Q, d, p)
    return [_orbit_record(action, decode_rep(Q, d, p, code))[0] for code in representatives]


def orbit_report(Q: Quiver, d: Sequence[int], p: int, workers: Optional[int] = None) -> OrbitReport:
    """All orbits by canonical representatives, with sizes and stabilizers"""
    d = Q.check_dim(d)
    p = check_prime(p)
    total = count_reps(Q, d, p)
    _check_reps_cap(total)
    workers = workers or settings.ORACLE_WORKERS
    if workers > 1:
        records = _orbits_by_shards(Q, d, p, workers)
    else:
        records = _orbits_by_sweep(Q, d, p, total)
    order = group_order(d, p)
    for record in records:
        if record.size * record.stabilizer != order:
            raise OracleError("orbit-stabilizer identity failed", code=record.code)
    if sum(r.size for r in records) != total:
        raise OracleError("orbits do not partition the representation space")
    report = OrbitReport(
        prime=p,
        dim=d,
        total_reps=total,
        abs_indec_orbit_count=sum(1 for r in records if r.abs_indec),
        orbit_count_all=len(records),
        group_order=order,
        method="canonical",
        orbits=records,
    )
    logger.debug("orbit_report", d=list(d), prime=p, orbits=len(records), abs_indec=report.abs_indec_orbit_count)
    return report


# ========== ORBIT MASS ==========

def rank_count(m: int, n: int, r: int, p: int) -> int:
    """Number of m x n matrices of rank r over F_p"""
    num, den = 1, 1
    for i in range(r):
        num *= (p**m - p**i) * (p**n - p**i)
        den *= p**r - p**i
    return num // den


def _reduction_arrow(Q: Quiver, d: DimVector) -> Optional[int]:
    for k, arrow in enumerate(Q.arrows):
        if not arrow.is_loop and d[Q.source_index(arrow.id)] and d[Q.target_index(arrow.id)]:
            return k
    return None


def _mass_slices(Q: Quiver, d: DimVector, p: int) -> List[Tuple[int, Optional[np.ndarray]]]:
    """(weight, fixed matrix) pairs covering the representation space"""
    k = _reduction_arrow(Q, d)
    if k is None:
        return [(1, None)]
    rows, cols = arrow_shapes(Q, d)[k]
    slices = []
    for r in range(min(rows, cols) + 1):
        fixed = np.zeros((rows, cols), dtype=np.int64)
        fixed[:r, :r] = np.eye(r, dtype=np.int64)
        slices.append((rank_count(rows, cols, r, p), fixed))
    return slices


def _mass_work(Q: Quiver, d: DimVector, p: int) -> int:
    k = _reduction_arrow(Q, d)
    L = num_digits(Q, d)
    if k is None:
        return p**L
    rows, cols = arrow_shapes(Q, d)[k]
    return (min(rows, cols) + 1) * p ** (L - rows * cols)


def _mass_shard(args) -> Fraction:
    Q, d, p, shard, shards = args
    k = _reduction_arrow(Q, d)
    shapes = arrow_shapes(Q, d)
    free = [i for i in range(len(shapes)) if i != k]
    free_digits = sum(shapes[i][0] * shapes[i][1] for i in free)
    mass = 0
    index = 0
    for weight, fixed in _mass_slices(Q, d, p):
        for digits in product(range(p), repeat=free_digits):
            index += 1
            if (index - 1) % shards != shard:
                continue
            mats: List[Optional[np.ndarray]] = [None] * len(shapes)
            offset = 0
            for i in free:
                r, c = shapes[i]
                mats[i] = np.asarray(digits[offset:offset + r * c], dtype=np.int64).reshape(r, c)
                offset += r * c
            if k is not None:
                mats[k] = fixed
            rho = FqRep(Q, d, p, tuple(mats))
            e = _abs_indec_end_dim(rho)
            if e is not None:
                mass += weight * (p**e - p ** (e - 1))
    return Fraction(mass)


def _abs_indec_mass(Q: Quiver, d: DimVector, p: int, workers: int) -> int:
    _check_reps_cap(_mass_work(Q, d, p))
    jobs = [(Q, d, p, k, workers) for k in range(workers)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_mass_shard, jobs))
    else:
        parts = [_mass_shard(jobs[0])]
    total = sum(parts, Fraction(0)) / group_order(d, p)
    if total.denominator != 1:
        raise OracleError("orbit mass is not an integer", mass=str(total), prime=p, d=list(d))
    return int(total)


def count_abs_indec_classes(
    Q: Quiver,
    d: Sequence[int],
    p: int,
    method: Optional[str] = None,
    workers: Optional[int] = None,
) -> int:
    """Number of isomorphism classes of absolutely indecomposable reps over F_p"""
    d = Q.check_dim(d)
    p = check_prime(p)
    method = method or settings.ORBIT_METHOD
    workers = workers or settings.ORACLE_WORKERS
    if method == "canonical":
        count = orbit_report(Q, d, p, workers).abs_indec_orbit_count
    elif method == "mass":
        count = _abs_indec_mass(Q, d, p, workers)
    else:
        raise InputError(f"unknown orbit method {method!r}")
    logger.debug("abs_indec_count", d=list(d), prime=p, method=method, count=count)
    return count


def mass_report(Q: Quiver, d: Sequence[int], p: int, workers: Optional[int] = None) -> OrbitReport:
    """Report without the full orbit list"""
    d = Q.check_dim(d)
    p = check_prime(p)
    return OrbitReport(
        prime=p,
        dim=d,
        total_reps=count_reps(Q, d, p),
        abs_indec_orbit_count=count_abs_indec_classes(Q, d, p, "mass", workers),
        orbit_count_all=None,
        group_order=group_order(d, p),
        method="mass",
    )
