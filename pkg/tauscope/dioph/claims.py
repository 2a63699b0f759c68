"""
Confrontation des valeurs imprimées pour t = 2 et t = -24
---------------------------------------------------------
Coefficients des cubiques, modèles de Weierstrass, discriminants et
invariants j, listes de points entiers ou rationnels et remontées vers u.
Chaque valeur imprimée donne une entrée « match » ou « paper-discrepancy » ;
l'ordre des entrées est fixe.
"""

from fractions import Fraction
from typing import Any, Dict, List, Tuple

from ..core.claims import ClaimCheck, check_claim
from ..core.exceptions import PointNotOnCurveError
from ..core.logging_config import get_logger, trace_logs
from .cubic import cubic_eval, general_cubic
from .curves import curve_invariants, printed_curve, to_weierstrass
from .witness import back_substitute

# Logger pour ce module
logger = get_logger("tauscope.dioph.claims")

PRINTED_CUBICS: Dict[int, Dict[str, int]] = {
    2: {"x^3": 477481, "x^2": -20 * 691, "x": 100, "xy": 2764, "y": -40, "y^2": 691},
    -24: {"x^3": 477481, "x^2": -1127712, "x": 942340, "xy": 2764, "y": 25440, "y^2": 691},
}

PRINTED_INVARIANTS: Dict[int, Dict[str, Fraction]] = {
    2: {
        "discriminant": Fraction(-(2 ** 15) * 3 ** 2 * 5 * 7 * 17),
        "j": Fraction(-472392, 595),
    },
    -24: {
        "discriminant": Fraction(-(2 ** 17) * 3 ** 2 * 5 ** 3 * 23 * 53 ** 3 * 19031),
        "j": Fraction(-870728796277342, 73311073088625),
    },
}

PRINTED_POINTS: Dict[int, List[Tuple[Fraction, Fraction]]] = {
    2: [
        (Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(40, 691)),
        (Fraction(-687), Fraction(474727)),
        (Fraction(-687), Fraction(326137449, 691)),
        (Fraction(-695), Fraction(480255)),
        (Fraction(-695), Fraction(333777225, 691)),
    ],
    -24: [
        (Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(25440, 691)),
        (Fraction(-675), Fraction(-12437115)),
        (Fraction(-675), Fraction(8610812325, 691)),
    ],
}

# (t, x, y) -> valeur imprimée de u et caractère « puissance 11e d'un premier »
PRINTED_BACK_SUBSTITUTIONS: List[Tuple[int, int, int, int, bool]] = [
    (2, -687, 474727, 2 ** 4 * 43, False),
    (2, -695, 480255, 2 ** 2 * 173, False),
    (-24, -675, -12437115, 2 ** 11, True),
]


def _point_label(x: Fraction, y: Fraction) -> str:
    return f"({x}, {y})"


def _coefficient_checks(t: int) -> List[ClaimCheck]:
    computed = general_cubic(t).as_dict()
    return [
        check_claim(f"cubique t={t}: coefficient {m}", f"cubique imprimée t={t}", printed, computed[m])
        for m, printed in PRINTED_CUBICS[t].items()
    ]


def _curve_checks(t: int) -> List[ClaimCheck]:
    derived = to_weierstrass(general_cubic(t))
    printed = printed_curve(t)
    checks = [
        check_claim(
            f"modèle de Weierstrass t={t}: {name}", f"courbe imprimée t={t}",
            printed_value, derived_value,
            note=f"modèle calculé : {derived}",
        )
        for name, printed_value, derived_value in zip(
            ("a1", "a2", "a3", "a4", "a6"), printed.coefficients(), derived.coefficients()
        )
    ]

    derived_inv = curve_invariants(derived)
    printed_inv = curve_invariants(printed)
    expected = PRINTED_INVARIANTS[t]
    checks.append(check_claim(
        f"discriminant t={t}", f"invariants imprimés t={t}",
        expected["discriminant"], derived_inv.discriminant,
        note=f"Δ du modèle imprimé : {printed_inv.discriminant}",
    ))
    checks.append(check_claim(
        f"invariant j t={t}", f"invariants imprimés t={t}",
        expected["j"], derived_inv.j if derived_inv.j is not None else "indéfini (Δ = 0)",
        note=f"j du modèle imprimé : {printed_inv.j}",
    ))
    return checks


def _point_checks(t: int) -> List[ClaimCheck]:
    cubic = general_cubic(t)
    checks = []
    for x, y in PRINTED_POINTS[t]:
        value = cubic_eval(cubic, x, y)
        checks.append(check_claim(
            f"point {_point_label(x, y)} sur la cubique t={t}", f"liste de points imprimée t={t}",
            True, value == 0,
            note=None if value == 0 else f"valeur de la cubique : {value}",
        ))
    return checks


def _back_substitution_checks() -> List[ClaimCheck]:
    checks = []
    for t, x, y, printed_u, printed_power in PRINTED_BACK_SUBSTITUTIONS:
        try:
            record = back_substitute(t, x, y)
        except PointNotOnCurveError:
            computed_u: Any = "point hors de la cubique"
            computed_power: Any = "point hors de la cubique"
            note = None
        else:
            computed_u = record.u if record.preimage else "aucun antécédent entier"
            computed_power = record.is_eleventh_prime_power
            note = (
                f"racine compatible u = {record.u_factorization}, v = {record.v}, "
                f"autre racine u = {record.alternate_u}"
            )
        checks.append(check_claim(
            f"remontée t={t} en ({x}, {y}): u", f"remontée imprimée t={t}",
            printed_u, computed_u, note=note,
        ))
        checks.append(check_claim(
            f"remontée t={t} en ({x}, {y}): u puissance 11e d'un premier", f"remontée imprimée t={t}",
            printed_power, computed_power,
        ))
    return checks


@trace_logs
def printed_claims_report() -> List[ClaimCheck]:
    """Toutes les comparaisons avec les valeurs imprimées, dans un ordre fixe."""
    checks: List[ClaimCheck] = []
    for t in sorted(PRINTED_CUBICS, reverse=True):
        checks.extend(_coefficient_checks(t))
        checks.extend(_curve_checks(t))
        checks.extend(_point_checks(t))
    checks.extend(_back_substitution_checks())
    mismatches = sum(1 for c in checks if not c.matches)
    logger.info(
        f"Valeurs imprimées confrontées: {mismatches} écart(s)",
        data={"claims": len(checks), "discrepancies": mismatches},
    )
    return checks


__all__ = [
    "PRINTED_CUBICS",
    "PRINTED_INVARIANTS",
    "PRINTED_POINTS",
    "PRINTED_BACK_SUBSTITUTIONS",
    "printed_claims_report",
]
