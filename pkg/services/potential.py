"""
Noncommutative potential calculus on path algebras

Paths compose left to right: the word a.b requires t(a) = s(b).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import structlog

from core.exceptions import DimensionError, PotentialError
from models.paths import NCPoly, Path, Potential, Word
from models.quiver import Quiver
from services.quiver import affine_a1, double, loop_name, star, triple

logger = structlog.get_logger(__name__)


# ========== CYCLIC WORDS ==========

def cyclic_normalize(Q: Quiver, word: Sequence[str]) -> Word:
    """Lexicographically minimal rotation of a closed path"""
    word = tuple(word)
    if not word:
        raise PotentialError("empty cyclic word")
    path = Path.of(Q, word)
    if not path.is_cycle:
        raise PotentialError(f"word {'.'.join(word)} is not closed", word=list(word))
    return min(word[k:] + word[:k] for k in range(len(word)))


def make_potential(Q: Quiver, terms: Iterable[Tuple[Sequence[str], object]]) -> Potential:
    out: Dict[Word, Fraction] = {}
    for word, coeff in terms:
        w = cyclic_normalize(Q, word)
        out[w] = out.get(w, Fraction(0)) + Fraction(coeff)
    return Potential(Q, out)


def potential_from_ncpoly(Q: Quiver, poly: NCPoly) -> Potential:
    """Close up cyclic paths; length-zero terms are constants and are dropped"""
    terms = []
    for path, coeff in poly.items():
        if path.is_lazy:
            continue
        if not path.is_cycle:
            raise PotentialError(f"path {'.'.join(path.arrows)} is not a cycle")
        terms.append((path.arrows, coeff))
    return make_potential(Q, terms)


def arrow_poly(Q: Quiver, arrow_id: str, coeff=1) -> NCPoly:
    return NCPoly.from_path(Path.of(Q, (arrow_id,)), coeff)


def word_poly(Q: Quiver, word: Sequence[str], coeff=1) -> NCPoly:
    return NCPoly.from_path(Path.of(Q, word), coeff)


def lazy_poly(vertex: str, coeff=1) -> NCPoly:
    return NCPoly.from_path(Path.lazy(vertex), coeff)


# ========== DERIVATIVES ==========

def cyclic_derivative(W: Potential, arrow_id: str) -> NCPoly:
    """Sum over occurrences of the arrow of the word read cyclically after it"""
    Q = W.quiver
    arrow = Q.arrow(arrow_id)
    out: Dict[Path, Fraction] = {}
    for word, coeff in W.items():
        for m, letter in enumerate(word):
            if letter != arrow_id:
                continue
            rest = word[m + 1:] + word[:m]
            path = Path.of(Q, rest) if rest else Path.lazy(arrow.target)
            out[path] = out.get(path, Fraction(0)) + coeff
    return NCPoly(out)


def jacobi_relations(Q: Quiver, W: Potential) -> Dict[str, NCPoly]:
    """One relation per arrow of Q, in arrow order"""
    for word, _ in W.items():
        for letter in word:
            if not Q.has_arrow(letter):
                raise PotentialError(f"potential mentions arrow {letter!r} not in the quiver")
    rebased = Potential(Q, W.terms)
    return {a.id: cyclic_derivative(rebased, a.id) for a in Q.arrows}


def necklace_check(W: Potential) -> NCPoly:
    """sum_c [c, dW/dc]; zero for every potential"""
    Q = W.quiver
    total = NCPoly.zero()
    for arrow in Q.arrows:
        total = total + arrow_poly(Q, arrow.id).commutator(cyclic_derivative(W, arrow.id))
    return total


# ========== CANONICAL POTENTIALS ==========

def _preprojective_sum(Q: Quiver, tripled: Quiver) -> NCPoly:
    """sum_a [a, a*] in the path algebra of the tripled quiver"""
    total = NCPoly.zero()
    for arrow in Q.arrows:
        a, a_star = arrow_poly(tripled, arrow.id), arrow_poly(tripled, star(arrow.id))
        total = total + a.commutator(a_star)
    return total


def _omega_sum(Q: Quiver, tripled: Quiver) -> NCPoly:
    total = NCPoly.zero()
    for v in Q.vertices:
        total = total + arrow_poly(tripled, loop_name(v))
    return total


def canonical_tripled_potential(Q: Quiver) -> Potential:
    """(sum_a [a, a*]) (sum_i w_i) on triple(Q)"""
    tripled = triple(Q)
    product = _preprojective_sum(Q, tripled) * _omega_sum(Q, tripled)
    return potential_from_ncpoly(tripled, product)


def _check_mu(Q: Quiver, mu: Sequence) -> Tuple[Fraction, ...]:
    mu = tuple(Fraction(m) for m in mu)
    if len(mu) != Q.num_vertices:
        raise DimensionError(f"mu has {len(mu)} entries, quiver has {Q.num_vertices} vertices")
    return mu


def mu_potential(Q: Quiver, mu: Sequence, n: int = 2) -> Potential:
    """W~ + (1/n) mu w^n with w = sum_i w_i and mu = sum_i mu_i e_i"""
    mu = _check_mu(Q, mu)
    if n < 1:
        raise PotentialError("potential power n must be at least 1")
    tripled = triple(Q)
    omega = _omega_sum(Q, tripled)
    power = omega
    for _ in range(n - 1):
        power = power * omega
    weights = NCPoly({Path.lazy(v): m for v, m in zip(Q.vertices, mu)})
    deformation = potential_from_ncpoly(tripled, weights * power).scale(Fraction(1, n))
    return canonical_tripled_potential(Q) + deformation


def kw_potential() -> Potential:
    """a.a*.b*.b - a*.a.b.b* on the doubled conifold quiver"""
    Q = double(affine_a1())
    return make_potential(Q, [(("a", "a*", "b*", "b"), 1), (("a*", "a", "b", "b*"), -1)])


# ========== SUBSTITUTION ==========

Substitution = Mapping[str, NCPoly]


def _check_substitution(Q: Quiver, sigma: Substitution) -> None:
    for arrow_id, image in sigma.items():
        arrow = Q.arrow(arrow_id)
        for path, _ in image.items():
            if path.source != arrow.source or path.target != arrow.target:
                raise PotentialError(
                    f"substitution for {arrow_id!r} changes endpoints",
                    arrow=arrow_id,
                    path=".".join(path.arrows) or f"e_{path.source}",
                )


def _substitute_path(Q: Quiver, path: Path, sigma: Substitution) -> NCPoly:
    if path.is_lazy:
        return NCPoly.from_path(path)
    result: Optional[NCPoly] = None
    for letter in path.arrows:
        image = sigma.get(letter)
        if image is None:
            image = arrow_poly(Q, letter)
        result = image if result is None else result * image
    return result


def substitute(P: Union[Potential, NCPoly], sigma: Substitution, quiver: Optional[Quiver] = None):
    """Multilinear change of variables; arrows outside sigma are fixed"""
    if isinstance(P, Potential):
        Q = P.quiver
        _check_substitution(Q, sigma)
        total = NCPoly.zero()
        for word, coeff in P.items():
            total = total + _substitute_path(Q, Path.of(Q, word), sigma).scale(coeff)
        return potential_from_ncpoly(Q, total)
    if quiver is None:
        raise PotentialError("substituting into an NCPoly needs its quiver")
    _check_substitution(quiver, sigma)
    total = NCPoly.zero()
    for path, coeff in P.items():
        total = total + _substitute_path(quiver, path, sigma).scale(coeff)
    return total


def potentials_equal(P1: Potential, P2: Potential) -> bool:
    return P1.terms == P2.terms


# ========== RELATION CHECKS ==========

def preprojective_relations(Q: Quiver, mu: Sequence) -> Dict[str, NCPoly]:
    """Per vertex: sum_{s(a)=i} a a* - sum_{t(a)=i} a* a + mu_i e_i, on double(Q)"""
    mu = _check_mu(Q, mu)
    doubled = double(Q)
    relations: Dict[str, NCPoly] = {}
    for v, m in zip(Q.vertices, mu):
        rel = lazy_poly(v, m)
        for arrow in Q.arrows:
            if arrow.source == v:
                rel = rel + word_poly(doubled, (arrow.id, star(arrow.id)))
            if arrow.target == v:
                rel = rel - word_poly(doubled, (star(arrow.id), arrow.id))
        relations[v] = rel
    return relations


def expected_deformed_relations(Q: Quiver, mu: Sequence, n: int = 2) -> Dict[str, NCPoly]:
    """Relations of the centrally extended deformed preprojective algebra, built directly"""
    mu = _check_mu(Q, mu)
    tripled = triple(Q)
    relations: Dict[str, NCPoly] = {}
    for arrow in Q.arrows:
        w_s, w_t = loop_name(arrow.source), loop_name(arrow.target)
        relations[arrow.id] = word_poly(tripled, (star(arrow.id), w_s)) - word_poly(tripled, (w_t, star(arrow.id)))
    for arrow in Q.arrows:
        w_s, w_t = loop_name(arrow.source), loop_name(arrow.target)
        relations[star(arrow.id)] = word_poly(tripled, (w_s, arrow.id)) - word_poly(tripled, (arrow.id, w_t))
    for v, m in zip(Q.vertices, mu):
        loop = loop_name(v)
        rel = word_poly(tripled, (loop,) * (n - 1), m) if n > 1 else lazy_poly(v, m)
        for arrow in Q.arrows:
            if arrow.source == v:
                rel = rel + word_poly(tripled, (arrow.id, star(arrow.id)))
            if arrow.target == v:
                rel = rel - word_poly(tripled, (star(arrow.id), arrow.id))
        relations[loop] = rel
    return relations


@dataclass
class RelationMismatch:
    arrow: str
    got: NCPoly
    expected: NCPoly


@dataclass
class GkwReport:
    passed: bool
    mismatches: List[RelationMismatch] = field(default_factory=list)
    checked: int = 0


def check_gkw(Q: Quiver, mu: Sequence, n: int = 2) -> GkwReport:
    """Compare the Jacobi relations of W~^mu_n with the deformed preprojective relations"""
    tripled = triple(Q)
    got = jacobi_relations(tripled, mu_potential(Q, mu, n))
    expected = expected_deformed_relations(Q, mu, n)
    mismatches = [
        RelationMismatch(arrow_id, got[arrow_id], expected[arrow_id])
        for arrow_id in tripled.arrow_ids
        if got[arrow_id] != expected[arrow_id]
    ]
    if n == 1:
        # at the loops the relations are the deformed preprojective ones
        for v, rel in preprojective_relations(Q, mu).items():
            if got[loop_name(v)] != rel:
                mismatches.append(RelationMismatch(loop_name(v), got[loop_name(v)], rel))
    report = GkwReport(passed=not mismatches, mismatches=mismatches, checked=len(got))
    logger.info("check_gkw", vertices=Q.num_vertices, n=n, passed=report.passed)
    return report


@dataclass
class ConifoldReport:
    substituted: Potential
    expected: Potential
    residual: Potential

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()


def conifold_substitution(tripled: Quiver) -> Dict[str, NCPoly]:
    """w_0 -> w_0 - a.a* + b*.b and w_1 -> w_1 - a*.a + b.b*"""
    return {
        "ω_0": arrow_poly(tripled, "ω_0") - word_poly(tripled, ("a", "a*")) + word_poly(tripled, ("b*", "b")),
        "ω_1": arrow_poly(tripled, "ω_1") - word_poly(tripled, ("a*", "a")) + word_poly(tripled, ("b", "b*")),
    }


def check_conifold() -> ConifoldReport:
    """Change of variables turning W~^(1,-1) into 1/2(w_0^2 - w_1^2) + W_KW"""
    Q = affine_a1()
    tripled = triple(Q)
    deformed = mu_potential(Q, (1, -1), 2)
    substituted = substitute(deformed, conifold_substitution(tripled))
    kw = Potential(tripled, kw_potential().terms)
    expected = make_potential(tripled, [(("ω_0", "ω_0"), Fraction(1, 2)), (("ω_1", "ω_1"), Fraction(-1, 2))]) + kw
    report = ConifoldReport(substituted=substituted, expected=expected, residual=substituted - expected)
    logger.info("check_conifold", passed=report.passed, residual_terms=len(report.residual))
    return report
