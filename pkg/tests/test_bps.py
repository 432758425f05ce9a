"""
BPS invariants and the generating series built from them
"""

from fractions import Fraction

import pytest

from core.exceptions import DimensionError, GenericityError, InputError, NotTateError, SeriesError
from models.hodge import HodgeMultiset
from models.series import dim_vectors_up_to
from models.tate import TatePoly, TateRational
from services.bps import (
    COHA_VIR,
    STACK_VIR,
    check_genericity,
    coha_pbw_series,
    conventions,
    dt_hodge,
    dt_refined,
    dt_refined_n,
    dt_series,
    free_coha_series,
    integrality_invert,
    moduli_cohomology_indivisible,
    moduli_cohomology_report,
    stack_series_deformed,
    symmetric_quiver_dt_series,
)
from services.kac import TableKacSource, affine_a1_kac_table
from services.quiver import euler_form, reverse_arrow

t = TatePoly.monomial


@pytest.fixture
def a1_table():
    return TableKacSource({}, affine_a1_kac_table)


def _pochhammer_inverse(n, step):
    den = TatePoly.constant(1)
    for k in range(1, n + 1):
        den = den * TatePoly({0: 1, step * k: -1})
    return den


def test_conventions():
    """Test the shift, twist and duality bookkeeping"""
    assert conventions.shift(1) == t(-1)
    assert conventions.tate_twist(1) == t(1)
    assert conventions.dual(t(2) + t(-1)) == t(-2) + t(1)
    assert conventions.dual(COHA_VIR) == TateRational.geometric(-2, t(-1))
    assert COHA_VIR.expand(0, 5) == {1: 1, 3: 1, 5: 1}
    assert STACK_VIR.expand(-5, 0, "descending") == {-1: 1, -3: 1, -5: 1}


# ========== REFINED INVARIANTS ==========

def test_dt_refined_acceptance(oracle, aff_a1):
    """Test refined invariants of the two-cycle quiver"""
    assert dt_refined(aff_a1, [0, 0], [1, 1], oracle) == t(-3) + t(-1)
    assert dt_refined(aff_a1, [1, -1], [1, 0], oracle) == t(0)
    assert dt_refined(aff_a1, [1, -1], [2, 2], oracle) == t(-3) + t(-1)
    assert dt_refined(aff_a1, [1, -1], [2, 1], oracle) == t(0)


def test_dt_refined_zero_dimension(aff_a1, a1_table):
    """Test that d = 0 is rejected"""
    with pytest.raises(DimensionError):
        dt_refined(aff_a1, [0, 0], [0, 0], a1_table)
    with pytest.raises(DimensionError):
        dt_refined(aff_a1, [0], [1, 1], a1_table)


def test_dt_hodge_table(aff_a1, a1_table):
    """Test Hodge multisets against the Kac table"""
    for d in dim_vectors_up_to(2, 4):
        h = dt_hodge(aff_a1, [0, 0], d, a1_table)
        m, n = d
        if m == n:
            assert h == HodgeMultiset({-1: 1, -3: 1})
        elif abs(m - n) == 1:
            assert h == HodgeMultiset({-1: 1})
        else:
            assert h == HodgeMultiset()

    assert dt_hodge(aff_a1, [1, -1], [1, 0], a1_table) == HodgeMultiset({0: 1})
    assert repr(dt_hodge(aff_a1, [0, 0], [1, 1], a1_table)) == "{L^-3/2, L^-1/2}"


def test_parity(aff_a1, a1_table):
    """Test that exponents are odd exactly when mu . d = 0"""
    for mu in ([0, 0], [1, -1], [2, 1]):
        for d in dim_vectors_up_to(2, 4):
            poly = dt_refined(aff_a1, mu, d, a1_table)
            odd = sum(Fraction(m) * x for m, x in zip(mu, d)) == 0
            assert all((e % 2 == 1) == odd for e, _ in poly.items())


def test_mu_scaling(aff_a1, a1_table):
    """Test invariance under rescaling mu"""
    for d in dim_vectors_up_to(2, 4):
        base = dt_refined(aff_a1, [1, -1], d, a1_table)
        assert dt_refined(aff_a1, [2, -2], d, a1_table) == base
        assert dt_refined(aff_a1, [Fraction(1, 2), Fraction(-1, 2)], d, a1_table) == base


def test_dt_refined_n(aff_a1, a1_table):
    """Test the dependence on the power of the deformation term"""
    assert dt_refined_n(aff_a1, [1, -1], [1, 0], 2, a1_table) == t(0)
    assert dt_refined_n(aff_a1, [1, -1], [1, 0], 1, a1_table).is_zero()
    assert dt_refined_n(aff_a1, [1, -1], [1, 1], 1, a1_table) == t(-3) + t(-1)
    with pytest.raises(NotTateError):
        dt_refined_n(aff_a1, [1, -1], [1, 1], 3, a1_table)
    with pytest.raises(InputError):
        dt_refined_n(aff_a1, [1, -1], [1, 1], 0, a1_table)


def test_dt_series(aff_a1, a1_table, point, oracle):
    """Test the BPS generating series"""
    series = dt_series(aff_a1, [1, -1], 4, a1_table)
    assert series.coefficient((2, 2)) == TateRational(t(-3) + t(-1))
    assert series.coefficient((2, 1)) == TateRational(t(0))
    assert series.coefficient((3, 1)).is_zero()
    assert dt_series(point, [1], source=oracle).cutoff == 6
    with pytest.raises(SeriesError):
        dt_series(point, [1], -1, oracle)


# ========== CoHA SERIES ==========

def test_free_coha_examples(point, jordan):
    """Test characters of the free CoHA"""
    assert free_coha_series(point, 3).coefficient((1,)) == TateRational.geometric(2, t(1))
    assert free_coha_series(jordan, 3).coefficient((1,)) == TateRational.geometric(2)
    assert free_coha_series(point, 3).coefficient((2,)) == TateRational(t(4), _pochhammer_inverse(2, 2))
    assert free_coha_series(point, 3).constant == TateRational.one()


def test_coha_pbw_identities(point, jordan, oracle):
    """Test the PBW series against free CoHAs"""
    assert coha_pbw_series(point, [1], 6, oracle) == free_coha_series(point, 6)
    assert coha_pbw_series(point, [0], 6, oracle) == free_coha_series(jordan, 6)


# ========== STACK SERIES ==========

def test_stack_series_jordan(jordan, oracle):
    """Test the degree-one coefficient for the one-loop quiver"""
    series = stack_series_deformed(jordan, [0], 3, oracle)
    assert series.coefficient((1,)) == TateRational(t(2), TatePoly({0: 1, -2: -1}))


def test_stack_series_point(point, oracle):
    """Test prod_k (1 - t^-2k)^-1 coefficients"""
    series = stack_series_deformed(point, [0], 4, oracle)
    for n in range(1, 5):
        assert series.coefficient((n,)) == TateRational(t(0), _pochhammer_inverse(n, -2))


def test_stack_series_support(aff_a1, oracle, a1_table):
    """Test that only mu-orthogonal degrees appear"""
    assert stack_series_deformed(aff_a1, [1, -1], 4, oracle).support() == [(1, 1), (2, 2)]
    wide = stack_series_deformed(aff_a1, [1, -1], 8, a1_table)
    assert wide.support() == [(1, 1), (2, 2), (3, 3), (4, 4)]


def test_stack_coefficient_matches_moduli(point, jordan, aff_a1, oracle):
    """Test H_c of the stack against H_c of the moduli space times H_c(pt/C^*)"""
    bgm = TateRational.geometric(-2, t(-2))
    for Q, mu, d in ((point, [0], (1,)), (jordan, [0], (1,)), (aff_a1, [1, -1], (1, 1))):
        hodge = moduli_cohomology_indivisible(Q, mu, d, source=oracle)
        chi = euler_form(Q, d, d)
        expected = TateRational(hodge.character().shift(2 * chi)) * bgm
        assert stack_series_deformed(Q, mu, sum(d), oracle).coefficient(d) == expected


# ========== INTEGRALITY ==========

def test_integrality_invert_round_trip(point, aff_a1, oracle, a1_table):
    """Test recovering the BPS series from the PBW and stack series"""
    assert integrality_invert(coha_pbw_series(point, [1], 5, oracle), COHA_VIR) == dt_series(point, [1], 5, oracle)
    assert integrality_invert(coha_pbw_series(aff_a1, [0, 0], 4, a1_table), COHA_VIR) == dt_series(
        aff_a1, [0, 0], 4, a1_table
    )
    bps = integrality_invert(stack_series_deformed(aff_a1, [1, -1], 6, a1_table), STACK_VIR)
    assert bps.support() == [(1, 1), (2, 2), (3, 3)]
    assert all(c == TateRational(t(1) + t(3)) for _, c in bps.items())


def test_integrality_invert_zero_factor(point):
    """Test that the virtual factor must be nonzero"""
    with pytest.raises(SeriesError):
        integrality_invert(free_coha_series(point, 2), 0)


def test_symmetric_quiver_dt_series(point, jordan, aff_a1):
    """Test DT invariants of symmetric quivers read off the free CoHA"""
    assert symmetric_quiver_dt_series(point, 5).support() == [(1,)]
    assert symmetric_quiver_dt_series(point, 5).coefficient((1,)) == TateRational(t(0))
    jordan_dt = symmetric_quiver_dt_series(jordan, 5)
    assert jordan_dt.support() == [(1,)]
    assert jordan_dt.coefficient((1,)) == TateRational(t(-1))
    a1 = symmetric_quiver_dt_series(aff_a1, 3)
    assert a1.coefficient((1, 0)) == TateRational(t(0))
    assert a1.coefficient((0, 1)) == TateRational(t(0))
    with pytest.raises(InputError):
        symmetric_quiver_dt_series(reverse_arrow(aff_a1, "a"), 3)


# ========== INDIVISIBLE MODULI ==========

def test_moduli_cohomology(aff_a1, point, oracle):
    """Test H_c of moduli spaces for indivisible d"""
    report = moduli_cohomology_report(aff_a1, [1, -1], [1, 1], source=oracle)
    assert report.hodge == HodgeMultiset({2: 1, 4: 1})
    assert report.hodge.total() == 2
    assert report.hodge.multiplicity(4) == 1
    assert report.horizon == 12
    assert moduli_cohomology_indivisible(point, [0], [1], source=oracle) == HodgeMultiset({0: 1})


def test_moduli_preconditions(aff_a1, a1_table):
    """Test divisibility, pairing and genericity checks"""
    with pytest.raises(InputError):
        moduli_cohomology_report(aff_a1, [1, -1], [2, 2], source=a1_table)
    with pytest.raises(InputError):
        moduli_cohomology_report(aff_a1, [1, -1], [1, 0], source=a1_table)
    with pytest.raises(GenericityError) as info:
        moduli_cohomology_report(aff_a1, [0, 0], [1, 0], horizon=3, source=a1_table)
    assert info.value.context["witness"] == [0, 1]
    assert check_genericity(aff_a1, [1, -1], [1, 1], horizon=5) == 5
