"""
Tests des angles de Sato-Tate et du comptage de points modulo p.
"""

import mpmath
import pytest

from tauscope.arith.numbers import primes_up_to
from tauscope.core.exceptions import (
    BadReductionError,
    BoundViolationError,
    DomainError,
    NotPrimeError,
    SingularCurveError,
)
from tauscope.dioph.cubic import general_cubic
from tauscope.dioph.curves import curve_invariants, printed_curve, to_weierstrass
from tauscope.forms.tables import CuspFormId, CuspFormTable
from tauscope.satotate.angles import angle, r_sum, st_cumulative, st_expected_mass, st_histogram
from tauscope.satotate.pointcount import bsd_product, ec_point_count


def _compte_naif(curve, p):
    """Comptage exhaustif des (X, Y) mod p, point à l'infini compris."""
    a1, a2, a3, a4, a6 = (int(a) % p for a in curve.coefficients())
    affine = sum(
        1
        for x in range(p)
        for y in range(p)
        if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % p == 0
    )
    return affine + 1


def _premiers_de_bonne_reduction(curve, bound):
    disc = curve_invariants(curve).discriminant.numerator
    return [p for p in primes_up_to(bound) if disc % p]


# Angles

def test_angle_p_egal_2():
    sample = angle(12, 2)
    assert abs(sample.theta - mpmath.mpf("1.83917")) < mpmath.mpf("1e-5")
    assert sample.cos_theta < 0


def test_angle_p_egal_3():
    assert abs(angle(12, 3).cos_theta - mpmath.mpf("0.29937")) < mpmath.mpf("1e-5")


def test_angle_non_premier():
    with pytest.raises(NotPrimeError):
        angle(12, 9)


def test_table_fautive_detectee():
    """Une valeur qui dépasse la borne de Deligne est refusée avant toute conversion."""
    table = CuspFormTable(CuspFormId.of(12), (1, 10 ** 6), "test")
    with pytest.raises(BoundViolationError):
        angle(12, 2, table=table)


def test_masses_de_sato_tate():
    with mpmath.workdps(30):
        assert abs(st_expected_mass(0, mpmath.pi / 2) - mpmath.mpf(1) / 2) < mpmath.mpf(10) ** -25
        assert abs(st_cumulative(mpmath.pi) - 1) < mpmath.mpf(10) ** -25
        edges = [mpmath.pi * k / 20 for k in range(21)]
        total = mpmath.fsum(st_expected_mass(edges[k], edges[k + 1]) for k in range(20))
        assert abs(total - 1) < mpmath.mpf(10) ** -25


def test_histogramme():
    histogram = st_histogram(12, 2000, 10)
    assert sum(histogram.counts) == histogram.sample_size == len(primes_up_to(2000))
    assert len(histogram.edges) == 11
    assert abs(sum(histogram.frequencies) - 1) < 1e-12


def test_histogramme_classes_insuffisantes():
    with pytest.raises(DomainError):
        st_histogram(12, 100, 1)


@pytest.mark.slow
def test_histogramme_proche_de_la_loi():
    """Jusqu'à 10^5, chaque classe sur 20 est à moins de 0,05 de sa masse attendue."""
    assert st_histogram(12, 10 ** 5, 20).within_tolerance(0.05)


def test_somme_r():
    assert r_sum(12, 1) == 0
    with mpmath.workdps(30):
        assert abs(r_sum(12, 2) - angle(12, 2).cos_theta / mpmath.sqrt(2)) < mpmath.mpf(10) ** -25
        bound = mpmath.fsum(1 / mpmath.sqrt(p) for p in primes_up_to(1000))
        assert abs(r_sum(12, 1000)) <= bound


# Comptage de points

@pytest.mark.parametrize("t", [2, -24])
def test_comptage_contre_enumeration(t):
    curve = printed_curve(t)
    for p in _premiers_de_bonne_reduction(curve, 100):
        count = ec_point_count(curve, p)
        assert count == _compte_naif(curve, p), f"p = {p}"
        assert (p + 1 - count) ** 2 <= 4 * p


def test_mauvaise_reduction():
    curve = printed_curve(2)
    for p in (2, 3, 5, 37):
        with pytest.raises(BadReductionError):
            ec_point_count(curve, p)
    with pytest.raises(NotPrimeError):
        ec_point_count(curve, 15)


def test_modele_derive_singulier():
    curve = to_weierstrass(general_cubic(2))
    with pytest.raises(SingularCurveError):
        ec_point_count(curve, 7)
    count = ec_point_count(curve, 7, include_singular=True)
    assert count == _compte_naif(curve, 7)


def test_produit_n_p_sur_p():
    curve = printed_curve(2)
    small = bsd_product(curve, 3)
    assert small.product == 1
    assert small.bad_primes == [2, 3]
    with mpmath.workdps(30):
        assert abs(bsd_product(curve, 7).product - mpmath.mpf(ec_point_count(curve, 7)) / 7) < mpmath.mpf(10) ** -25
    large = bsd_product(curve, 500)
    assert large.bad_primes == [2, 3, 5, 37]
    assert large.slope is not None
    assert [m for m, _ in large.checkpoints] == [4, 8, 16, 32, 64, 128, 256, 500]


def test_produit_parametres_invalides():
    with pytest.raises(DomainError):
        bsd_product(printed_curve(2), 2)
    with pytest.raises(SingularCurveError):
        bsd_product(to_weierstrass(general_cubic(2)), 100)
