"""
Remontée vers u = p^11 et témoins construits à partir de τ
----------------------------------------------------------
``back_substitute`` part d'un point de la cubique et retrouve u par la
relation (u + 1)² = t² - 691x, puis retient la racine compatible avec la
relation cubique. ``known_value_witness`` fait le chemin inverse à partir
d'une vraie valeur τ(p).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Any, Dict, List, Optional, Union

from ..arith.numbers import factorize, is_prime
from ..core.exceptions import DomainError, IntegralityError, NotPrimeError, PointNotOnCurveError
from ..core.logging_config import get_logger
from ..forms.registry import get_table
from ..forms.tables import CuspFormTable
from .cubic import cubic_eval, general_cubic
from .system import MODULUS, build_system

# Logger pour ce module
logger = get_logger("tauscope.dioph.witness")

Number = Union[int, Fraction]


def _rational_sqrt(value: Fraction) -> Optional[Fraction]:
    if value < 0:
        return None
    num, den = isqrt(value.numerator), isqrt(value.denominator)
    if num * num != value.numerator or den * den != value.denominator:
        return None
    return Fraction(num, den)


def describe_integer(n: int) -> str:
    """Factorisation affichable d'un entier quelconque (signe compris)."""
    if n == 0:
        return "0"
    text = str(factorize(abs(n)))
    return f"-{text}" if n < 0 else text


@dataclass
class BackSubstitution:
    """Résultat de la remontée d'un point (x, y) vers (u, v)."""
    t: int
    x: Number
    y: Number
    preimage: bool
    u: Optional[int] = None
    v: Optional[Fraction] = None
    v_integral: bool = False
    u_factorization: Optional[str] = None
    is_eleventh_prime_power: bool = False
    eleventh_root: Optional[int] = None
    alternate_u: Optional[int] = None
    candidates: List[Dict[str, Any]] = field(default_factory=list)


def back_substitute(t: int, x: Number, y: Number) -> BackSubstitution:
    """
    Retrouve u (et v) à partir d'un point de la cubique de paramètre t.

    Les deux racines de (u + 1)² = t² - 691x sont examinées ; la racine
    retenue est celle qui vérifie aussi la troisième équation, de
    préférence avec v entier. L'autre racine entière est rendue dans
    ``alternate_u``.

    Raises:
        PointNotOnCurveError: Si (x, y) n'annule pas la cubique
    """
    cubic = general_cubic(t)
    if cubic_eval(cubic, x, y) != 0:
        raise PointNotOnCurveError(
            f"({x}, {y}) n'appartient pas à la cubique de paramètre t = {t}",
            details=[{"msg": "valeur non nulle", "type": "residual",
                      "residual": cubic_eval(cubic, x, y)}],
        )
    xf, yf = Fraction(x), Fraction(y)
    result = BackSubstitution(t=t, x=x, y=y, preimage=False)

    root = _rational_sqrt(t * t - MODULUS * xf)
    if root is None:
        logger.info("Pas d'antécédent rationnel pour u", data={"t": t, "x": x, "y": y})
        return result

    for s in sorted({root, -root}):
        u = s - 1
        v = (t - u - 1) / MODULUS
        third = u ** 3 + u * u + u + 1 + MODULUS * yf - (t * (t * t - u) - t * u)
        result.candidates.append({
            "u": u, "v": v, "consistent": third == 0,
            "integral": u.denominator == 1 and v.denominator == 1,
        })

    integral_u = [c for c in result.candidates if c["u"].denominator == 1]
    consistent = [c for c in integral_u if c["consistent"]]
    if not consistent:
        logger.info("Aucune racine entière compatible", data={"t": t, "x": x, "y": y})
        return result
    chosen = next((c for c in consistent if c["integral"]), consistent[0])

    u = chosen["u"].numerator
    result.preimage = True
    result.u = u
    result.v = chosen["v"]
    result.v_integral = chosen["v"].denominator == 1
    result.u_factorization = describe_integer(u)
    if u > 1:
        result.eleventh_root = factorize(u).eleventh_root_prime()
        result.is_eleventh_prime_power = result.eleventh_root is not None
    others = [c["u"].numerator for c in integral_u if c is not chosen]
    result.alternate_u = others[0] if others else None
    logger.debug(
        "Remontée effectuée",
        data={"t": t, "x": x, "y": y, "u": u, "alternate_u": result.alternate_u},
    )
    return result


@dataclass(frozen=True)
class WitnessRecord:
    """Point de la cubique construit à partir d'une vraie valeur τ(p)."""
    p: int
    t: int
    u: int
    v: int
    x: int
    y: int
    residual: int


def known_value_witness(w: int, p: int, table: Optional[CuspFormTable] = None) -> WitnessRecord:
    """
    Construit (x, y) à partir de t = τ(p) et u = p^11 et vérifie le résidu.

    Args:
        w: Poids (seul 12 est admis)
        p: Nombre premier
        table: Table optionnelle de poids 12 d'ordre ≥ p

    Raises:
        DomainError: Si w ≠ 12
        NotPrimeError: Si p n'est pas premier
        IntegralityError: Si une division par 691 n'est pas exacte
    """
    if w != 12:
        raise DomainError(f"Témoin défini pour le poids 12 seulement (reçu {w})")
    if not is_prime(p):
        raise NotPrimeError(f"{p} n'est pas premier")
    if table is None or table.weight != 12 or table.order < p:
        table = get_table(12, p)
    t = table.tau(p)
    u = p ** 11
    system = build_system(t)
    unknowns = system.unknowns_for(u)
    for name, value in unknowns.items():
        if value.denominator != 1:
            raise IntegralityError(
                f"Division non exacte par {MODULUS} pour {name} (p = {p})",
                details=[{"msg": "quotient non entier", "type": "integrality",
                          "name": name, "value": value}],
            )
    x, y = unknowns["x"].numerator, unknowns["y"].numerator
    residual = cubic_eval(general_cubic(t), x, y)
    return WitnessRecord(p=p, t=t, u=u, v=unknowns["v"].numerator, x=x, y=y, residual=residual)


__all__ = [
    "BackSubstitution",
    "back_substitute",
    "describe_integer",
    "WitnessRecord",
    "known_value_witness",
]
