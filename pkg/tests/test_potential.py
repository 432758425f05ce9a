"""
Noncommutative potential calculus
"""

from fractions import Fraction

import pytest

from core.exceptions import PotentialError
from models.paths import NCPoly, Path, Potential
from services.formats import parse_ncpoly, parse_potential, render_ncpoly, render_potential
from services.potential import (
    canonical_tripled_potential,
    check_conifold,
    check_gkw,
    cyclic_derivative,
    cyclic_normalize,
    jacobi_relations,
    kw_potential,
    lazy_poly,
    make_potential,
    mu_potential,
    necklace_check,
    potentials_equal,
    preprojective_relations,
    substitute,
    word_poly,
)
from services.quiver import affine_a1, double, loop_quiver, triple
from tests.helpers import random_quiver


def _reverse(Q, arrow_id):
    if Q.arrow(arrow_id).is_loop and arrow_id.startswith("ω_"):
        return arrow_id
    return arrow_id[:-1] if arrow_id.endswith("*") else arrow_id + "*"


def random_potential(rng, Q):
    """Closed walks on triple(Q): out along random arrows, back along their reverses"""
    T = triple(Q)
    terms = []
    for _ in range(rng.randint(1, 5)):
        current = rng.choice(T.vertices)
        walk = []
        for _ in range(rng.randint(1, 3)):
            arrow = rng.choice([a for a in T.arrows if a.source == current])
            walk.append(arrow.id)
            current = arrow.target
        back = [_reverse(T, a) for a in reversed(walk)]
        word = walk + back
        k = rng.randrange(len(word))
        terms.append((word[k:] + word[:k], Fraction(rng.randint(-3, 3), rng.randint(1, 3))))
    return make_potential(T, terms)


def test_cyclic_normalize(jordan, aff_a1):
    """Test canonical rotations"""
    D = double(jordan)
    assert cyclic_normalize(D, ["l*", "l"]) == cyclic_normalize(D, ["l", "l*"]) == ("l", "l*")
    with pytest.raises(PotentialError):
        cyclic_normalize(aff_a1, ["a"])
    with pytest.raises(PotentialError):
        cyclic_normalize(aff_a1, ["a", "a"])


def test_canonical_tripled_potential(point, jordan, aff_a1):
    """Test the canonical cubic potential"""
    assert canonical_tripled_potential(point).is_zero()

    W = canonical_tripled_potential(jordan)
    assert W.terms == {("l", "l*", "ω_0"): 1, ("l", "ω_0", "l*"): -1}

    T = triple(aff_a1)
    expected = make_potential(
        T,
        [
            (("ω_0", "a", "a*"), 1),
            (("ω_0", "b*", "b"), -1),
            (("ω_1", "b", "b*"), 1),
            (("ω_1", "a*", "a"), -1),
        ],
    )
    assert canonical_tripled_potential(aff_a1) == expected


def test_cyclic_derivatives_of_jordan_potential(jordan):
    """Test the relations of the tripled Jordan quiver"""
    T = triple(jordan)
    W = canonical_tripled_potential(jordan)
    l, ls, w = (word_poly(T, [x]) for x in ("l", "l*", "ω_0"))
    assert cyclic_derivative(W, "ω_0") == l.commutator(ls)
    assert cyclic_derivative(W, "l") == ls.commutator(w)
    assert cyclic_derivative(W, "l*") == w.commutator(l)

    relations = jacobi_relations(T, W)
    assert list(relations) == ["l", "l*", "ω_0"]


def test_derivative_of_missing_arrow(aff_a1):
    """Test that an arrow outside W differentiates to zero"""
    W = canonical_tripled_potential(aff_a1)
    T = triple(aff_a1)
    only_a = Potential(T, {w: c for w, c in W.items() if "b" not in w and "b*" not in w})
    assert cyclic_derivative(only_a, "b").is_zero()
    with pytest.raises(Exception):
        cyclic_derivative(W, "zz")


def test_mu_potential(point, jordan, aff_a1):
    """Test the deformed potentials"""
    T = triple(point)
    W = mu_potential(point, [1], 2)
    assert W.terms == {("ω_0", "ω_0"): Fraction(1, 2)}
    assert jacobi_relations(T, W)["ω_0"] == word_poly(T, ["ω_0"])

    linear = mu_potential(jordan, [3], 1)
    assert linear == canonical_tripled_potential(jordan) + make_potential(triple(jordan), [(("ω_0",), 3)])

    with pytest.raises(Exception):
        mu_potential(aff_a1, [1], 2)


def test_zero_potential_relations(aff_a1):
    """Test that the zero potential has zero relations"""
    T = triple(aff_a1)
    relations = jacobi_relations(T, Potential(T))
    assert all(r.is_zero() for r in relations.values())
    assert len(relations) == 6


def test_kw_potential():
    """Test the Klebanov-Witten potential"""
    W = kw_potential()
    D = double(affine_a1())
    assert sorted(W.terms.values()) == [-1, 1]
    expected = word_poly(D, ["a*", "b*", "b"]) - word_poly(D, ["b", "b*", "a*"])
    assert cyclic_derivative(W, "a") == expected
    assert necklace_check(W).is_zero()


@pytest.mark.parametrize(
    "quiver,mu",
    [
        (loop_quiver(0), [0]),
        (loop_quiver(0), [1]),
        (loop_quiver(1), [0]),
        (loop_quiver(1), [1]),
        (affine_a1(), [0, 0]),
        (affine_a1(), [1, -1]),
    ],
)
@pytest.mark.parametrize("n", [1, 2])
def test_check_gkw(quiver, mu, n):
    """Test that W~^mu_n cuts out the central extension of the deformed preprojective algebra"""
    report = check_gkw(quiver, mu, n)
    assert report.passed, report.mismatches
    assert report.checked == len(triple(quiver).arrows)


def test_preprojective_relations(aff_a1):
    """Test the deformed preprojective relations"""
    D = double(aff_a1)
    rel = preprojective_relations(aff_a1, [1, -1])
    assert rel["0"] == word_poly(D, ["a", "a*"]) - word_poly(D, ["b*", "b"]) + lazy_poly("0")
    assert rel["1"] == word_poly(D, ["b", "b*"]) - word_poly(D, ["a*", "a"]) - lazy_poly("1")


def test_check_conifold():
    """Test the conifold change of variables"""
    report = check_conifold()
    assert report.passed
    assert potentials_equal(report.substituted, report.expected)
    T = triple(affine_a1())
    cross = make_potential(T, [(("b*", "b", "a", "a*"), 1), (("b", "b*", "a*", "a"), -1)])
    squares = make_potential(T, [(("ω_0", "ω_0"), Fraction(1, 2)), (("ω_1", "ω_1"), Fraction(-1, 2))])
    assert report.substituted == squares + cross


def test_substitution_rules(jordan):
    """Test identity, scaling and endpoint checks"""
    T = triple(jordan)
    W = canonical_tripled_potential(jordan) + make_potential(T, [(("l", "l", "l*"), 1)])
    assert substitute(W, {}) == W
    assert substitute(W, {"l": word_poly(T, ["l"])}) == W

    doubled = substitute(W, {"l": word_poly(T, ["l"], 2)})
    for word, coeff in W.items():
        assert doubled.terms[word] == coeff * 2 ** word.count("l")

    A = triple(affine_a1())
    with pytest.raises(PotentialError):
        substitute(canonical_tripled_potential(affine_a1()), {"ω_0": word_poly(A, ["a*", "a"])})


def test_potentials_equal(jordan):
    """Test equality up to rotation"""
    T = triple(jordan)
    P1 = make_potential(T, [(("ω_0", "l", "l*"), 1), (("l", "l"), 2)])
    P2 = make_potential(T, [(("l", "l"), 2), (("l", "l*", "ω_0"), 1)])
    P3 = make_potential(T, [(("ω_0", "l*", "l"), 1), (("l", "l"), 2)])
    assert potentials_equal(P1, P2)
    assert not potentials_equal(P1, P3)


def test_necklace_identity_random(rng):
    """Test sum_c [c, dW/dc] = 0 on random potentials"""
    for _ in range(100):
        W = random_potential(rng, random_quiver(rng, max_vertices=2, max_arrows=2))
        assert necklace_check(W).is_zero()


def test_derivative_linearity(rng):
    """Test d(cW + V)/da = c dW/da + dV/da"""
    for _ in range(50):
        Q = random_quiver(rng, max_vertices=2, max_arrows=2)
        W, V = random_potential(rng, Q), random_potential(rng, Q)
        c = Fraction(rng.randint(-4, 4), rng.randint(1, 4))
        for arrow in W.quiver.arrow_ids:
            lhs = cyclic_derivative(W.scale(c) + V, arrow)
            rhs = cyclic_derivative(W, arrow).scale(c) + cyclic_derivative(V, arrow)
            assert lhs == rhs


def test_potential_text_roundtrip(rng, point, aff_a1):
    """Test the potential text format"""
    T = triple(point)
    assert parse_potential(T, "1/2 * w0.w0") == mu_potential(point, [1], 2)
    assert parse_potential(T, "1/2*w_0.w_0") == mu_potential(point, [1], 2)

    W = mu_potential(aff_a1, [1, -1], 2)
    text = render_potential(W)
    assert parse_potential(W.quiver, text) == W
    assert render_potential(parse_potential(W.quiver, text)) == text
    assert render_potential(Potential(T)) == "0"

    for _ in range(50):
        V = random_potential(rng, random_quiver(rng, max_vertices=2, max_arrows=2))
        assert parse_potential(V.quiver, render_potential(V)) == V


def test_ncpoly_text(aff_a1):
    """Test NCPoly parsing with lazy paths"""
    T = triple(aff_a1)
    poly = parse_ncpoly(T, "w0 - a.a* + 1 * b*.b + 2 * e_0")
    expected = NCPoly(
        {
            Path.of(T, ["ω_0"]): 1,
            Path.of(T, ["a", "a*"]): -1,
            Path.of(T, ["b*", "b"]): 1,
            Path.lazy("0"): 2,
        }
    )
    assert poly == expected
    assert parse_ncpoly(T, render_ncpoly(poly)) == poly
    with pytest.raises(PotentialError):
        parse_ncpoly(T, "a.a")
    with pytest.raises(PotentialError):
        parse_potential(T, "e_0")
