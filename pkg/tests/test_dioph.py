"""
Tests du pipeline diophantien : élimination, cubique, modèles de
Weierstrass, remontée et témoins.
"""

from fractions import Fraction

import mpmath
import numpy as np
import pytest

from tauscope.arith.numbers import primes_up_to
from tauscope.core.config import DISCREPANCY_KIND
from tauscope.core.exceptions import (
    CurveShapeError,
    DomainError,
    NotPrimeError,
    PointNotOnCurveError,
    SingularCurveError,
)
from tauscope.dioph.claims import printed_claims_report
from tauscope.dioph.cubic import Cubic, cubic_eval, general_cubic, integral_points
from tauscope.dioph.curves import (
    WeierstrassCurve,
    curve_invariants,
    map_point,
    printed_curve,
    rank_bound_annotation,
    to_weierstrass,
)
from tauscope.dioph.system import build_system, eliminate, eliminate_symbolic
from tauscope.dioph.witness import back_substitute, describe_integer, known_value_witness


# Élimination

def test_cubique_t_egal_2():
    assert general_cubic(2).as_dict() == {
        "x^3": 477481, "x^2": -13820, "x": 100, "xy": 2764, "y": -40, "y^2": 691,
    }


def test_cubique_t_egal_moins_24():
    assert general_cubic(-24).as_dict() == {
        "x^3": 477481, "x^2": -1127712, "x": 942340, "xy": 2764, "y": 25440, "y^2": 691,
    }


def test_elimination_par_resultant():
    """Le résultant divisé par 691 redonne la cubique générale pour |t| ≤ 50."""
    for t in range(-50, 51):
        assert eliminate(t) == general_cubic(t), f"t = {t}"


def test_elimination_symbolique():
    outcome = eliminate_symbolic()
    assert outcome.agrees
    assert set(outcome.coefficients) == {"x^3", "x^2", "x", "xy", "y", "y^2"}


def test_systeme_reduit():
    system = build_system(2)
    assert system.residuals(1, 0, 0, 0) == (0, 0, 0)
    unknowns = build_system(-24).unknowns_for(2 ** 11)
    assert unknowns == {"v": Fraction(-3), "x": Fraction(-6075), "y": Fraction(-12437115)}
    assert build_system(-24).residuals(2 ** 11, -3, -6075, -12437115) == (0, 0, 0)


def test_monome_inconnu():
    with pytest.raises(CurveShapeError):
        Cubic(None, {"x^4": 1})


# Évaluation et points entiers

def test_evaluation():
    cubic = general_cubic(2)
    assert cubic_eval(cubic, 0, 0) == 0
    assert cubic_eval(cubic, -687, 474727) == 0
    assert cubic_eval(cubic, -695, -480255) == 0
    assert cubic_eval(cubic, -695, 480255) != 0
    assert cubic_eval(cubic, Fraction(0), Fraction(40, 691)) == 0
    assert cubic_eval(cubic, 1, 1) != 0


def test_points_entiers_t_egal_2():
    points = integral_points(general_cubic(2), 1000)
    assert (0, 0) in points
    assert (-687, 474727) in points
    assert (-695, -480255) in points
    assert (-695, 480255) not in points
    assert points == sorted(points)
    cubic = general_cubic(2)
    assert all(cubic_eval(cubic, x, y) == 0 for x, y in points)


def test_points_entiers_t_egal_moins_24():
    points = integral_points(general_cubic(-24), 10 ** 4)
    assert (-6075, -12437115) in points
    assert all(x != -675 for x, _ in points)


def test_points_entiers_contre_recherche_directe():
    """Petite borne : comparaison avec une recherche exhaustive en y (|y| ≤ 10^4 suffit pour |x| ≤ 30)."""
    cubic = general_cubic(0)
    ys = np.arange(-10 ** 4, 10 ** 4 + 1, dtype=np.int64)
    brute = []
    for x in range(-30, 31):
        values = (cubic["x^3"] * x ** 3 + cubic["x^2"] * x ** 2 + cubic["x"] * x
                  + (cubic["xy"] * x + cubic["y"]) * ys + cubic["y^2"] * ys * ys)
        brute.extend((x, int(y)) for y in ys[values == 0])
    assert integral_points(cubic, 30) == brute


def test_points_entiers_borne_negative():
    with pytest.raises(DomainError):
        integral_points(general_cubic(2), -1)
    with pytest.raises(CurveShapeError):
        integral_points(Cubic(0, {"x^3": 1, "x": 1}), 10)


# Modèles de Weierstrass

def test_modele_t_egal_2():
    curve = to_weierstrass(general_cubic(2))
    assert curve.coefficients() == (-4, 20, -40, 100, 0)
    assert str(curve) == "Y^2 - 4XY - 40Y = X^3 + 20X^2 + 100X"


def test_modele_t_egal_moins_24():
    curve = to_weierstrass(general_cubic(-24))
    assert curve.coefficients() == (-4, 1632, 25440, 942340, 0)
    assert curve.is_integral()


def test_forme_inattendue():
    with pytest.raises(CurveShapeError):
        to_weierstrass(Cubic(0, {"x^3": 2, "y^2": 1}))


def test_image_des_points():
    """Les points de la cubique tombent sur le modèle de Weierstrass."""
    for t, (x, y) in ((2, (-687, 474727)), (2, (-695, -480255)), (-24, (-6075, -12437115))):
        cubic = general_cubic(t)
        assert to_weierstrass(cubic).contains(*map_point(cubic, x, y))


def test_invariants_et_relations():
    """1728Δ = c4³ - c6² et 4b8 = b2b6 - b4² sur les deux modèles imprimés."""
    for t in (2, -24):
        inv = curve_invariants(printed_curve(t))
        assert 1728 * inv.discriminant == inv.c4 ** 3 - inv.c6 ** 2
        assert 4 * inv.b8 == inv.b2 * inv.b6 - inv.b4 ** 2


def test_modele_derive_singulier():
    inv = curve_invariants(to_weierstrass(general_cubic(2)))
    assert (inv.b2, inv.b4, inv.b6, inv.b8) == (96, 360, 1600, 6000)
    assert (inv.c4, inv.c6) == (576, 13824)
    assert inv.is_singular
    with pytest.raises(SingularCurveError):
        inv.j_invariant()


def test_modele_imprime_t_egal_2():
    inv = curve_invariants(printed_curve(2))
    assert inv.discriminant == -163676160 == -(2 ** 15) * 3 ** 3 * 5 * 37
    assert inv.j_invariant() == Fraction(-157464, 185)


def test_modele_imprime_inconnu():
    with pytest.raises(DomainError):
        printed_curve(5)


def test_rendu_rationnel():
    curve = WeierstrassCurve(Fraction(1, 2), 0, 1, -1, 0)
    assert str(curve) == "Y^2 + 1/2XY + Y = X^3 - X"


def test_annotation_de_rang():
    assert rank_bound_annotation(16, 0) == 0
    values = [rank_bound_annotation(x, 1) for x in (16, 100, 10 ** 4, 10 ** 8)]
    assert values[0] > 0
    assert values == sorted(values)
    with mpmath.workdps(30):
        assert abs(values[0] - mpmath.log(16) / mpmath.log(mpmath.log(16))) < mpmath.mpf(10) ** -20
    with pytest.raises(DomainError):
        rank_bound_annotation(15, 1)


# Remontée

def test_remontee_t_egal_2_en_moins_687():
    record = back_substitute(2, -687, 474727)
    assert record.preimage
    assert record.u == -690
    assert record.v == 1
    assert record.u_factorization == "-2·3·5·23"
    assert record.alternate_u == 688
    assert not record.is_eleventh_prime_power


def test_remontee_t_egal_2_en_moins_695():
    record = back_substitute(2, -695, -480255)
    assert record.u == 692
    assert record.v == -1
    assert record.u_factorization == "2^2·173"
    assert not record.is_eleventh_prime_power


def test_remontee_origine():
    record = back_substitute(2, 0, 0)
    assert (record.u, record.v, record.u_factorization) == (1, 0, "1")
    assert record.alternate_u == -3


def test_remontee_vers_2_puissance_11():
    record = back_substitute(-24, -6075, -12437115)
    assert record.u == 2 ** 11
    assert record.v == -3
    assert record.is_eleventh_prime_power
    assert record.eleventh_root == 2


def test_remontee_point_hors_cubique():
    with pytest.raises(PointNotOnCurveError):
        back_substitute(2, -695, 480255)
    with pytest.raises(PointNotOnCurveError):
        back_substitute(-24, -675, -12437115)


def test_description_des_entiers():
    assert describe_integer(0) == "0"
    assert describe_integer(-12) == "-2^2·3"


# Témoins

def test_temoin_p_egal_2():
    record = known_value_witness(12, 2)
    assert (record.t, record.u, record.v) == (-24, 2048, -3)
    assert (record.x, record.y) == (-6075, -12437115)
    assert record.residual == 0


def test_temoins_jusqu_a_200():
    """Pour tout p ≤ 200, le point construit à partir de τ(p) annule la cubique."""
    for p in primes_up_to(200):
        record = known_value_witness(12, p)
        assert record.residual == 0, f"p = {p}"
        cubic = general_cubic(record.t)
        assert to_weierstrass(cubic).contains(*map_point(cubic, record.x, record.y))


def test_temoin_parametres_invalides():
    with pytest.raises(DomainError):
        known_value_witness(16, 2)
    with pytest.raises(NotPrimeError):
        known_value_witness(12, 4)


# Valeurs imprimées

def test_confrontation_deterministe():
    first = [c.as_entry() for c in printed_claims_report()]
    second = [c.as_entry() for c in printed_claims_report()]
    assert first == second


def test_ecarts_signales():
    checks = {c.claim: c for c in printed_claims_report()}
    assert all(checks[f"cubique t={t}: coefficient {m}"].matches
               for t in (2, -24) for m in ("x^3", "x^2", "x", "xy", "y", "y^2"))
    assert not checks["modèle de Weierstrass t=2: a4"].matches
    assert checks["modèle de Weierstrass t=2: a1"].matches
    assert not checks["modèle de Weierstrass t=-24: a1"].matches
    assert checks["modèle de Weierstrass t=-24: a4"].matches
    assert checks["invariant j t=2"].computed == "indéfini (Δ = 0)"
    assert checks["point (-687, 474727) sur la cubique t=2"].matches
    assert checks["point (0, 40/691) sur la cubique t=2"].matches
    assert not checks["point (-695, 480255) sur la cubique t=2"].matches
    assert not checks["point (-675, -12437115) sur la cubique t=-24"].matches
    remontee = checks["remontée t=2 en (-687, 474727): u"]
    assert remontee.kind == DISCREPANCY_KIND
    assert remontee.computed == -690
    assert checks["remontée t=-24 en (-675, -12437115): u"].computed == "point hors de la cubique"
