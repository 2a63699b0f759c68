"""
Modèles de Weierstrass et invariants
------------------------------------
Le changement de variables x = -X/m, y = Y/m (m coefficient de y²) envoie
la cubique sur Y² + a1·XY + a3·Y = X³ + a2·X² + a4·X + a6. Les invariants
b2..b8, c4, c6, Δ et j suivent les formules usuelles en arithmétique
rationnelle exacte.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

import mpmath

from ..core.config import settings
from ..core.exceptions import CurveShapeError, DomainError, SingularCurveError
from ..core.logging_config import get_logger
from .cubic import Cubic

# Logger pour ce module
logger = get_logger("tauscope.dioph.curves")

Number = Union[int, Fraction]

# Modèles tels qu'imprimés pour t = 2 et t = -24 : (a1, a2, a3, a4, a6)
PRINTED_MODELS: Dict[int, Tuple[int, int, int, int, int]] = {
    2: (-4, 20, -40, 4, 0),
    -24: (4, 1632, 25440, 942340, 0),
}


@dataclass(frozen=True)
class WeierstrassCurve:
    """Y² + a1·XY + a3·Y = X³ + a2·X² + a4·X + a6, coefficients rationnels."""
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def from_tuple(cls, coefficients: Tuple[Number, ...]) -> "WeierstrassCurve":
        return cls(*coefficients)

    def coefficients(self) -> Tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coefficients())

    def contains(self, X: Number, Y: Number) -> bool:
        lhs = Y * Y + self.a1 * X * Y + self.a3 * Y
        rhs = X ** 3 + self.a2 * X * X + self.a4 * X + self.a6
        return lhs == rhs

    def __str__(self) -> str:
        def term(c: Fraction, monomial: str) -> str:
            if c == 0:
                return ""
            sign = " - " if c < 0 else " + "
            magnitude = abs(c)
            shown = "" if magnitude == 1 and monomial else str(magnitude)
            return f"{sign}{shown}{monomial}"

        lhs = "Y^2" + term(self.a1, "XY") + term(self.a3, "Y")
        rhs = "X^3" + term(self.a2, "X^2") + term(self.a4, "X") + term(self.a6, "")
        return f"{lhs} = {rhs}"


def to_weierstrass(cubic: Cubic) -> WeierstrassCurve:
    """
    Modèle de Weierstrass d'une cubique de la forme m²x³ + … + m·y².

    Args:
        cubic: Cubique sans terme constant, coefficient de x³ égal au carré
            de celui de y²

    Raises:
        CurveShapeError: Si la cubique n'a pas cette forme
    """
    m = cubic["y^2"]
    if m == 0 or cubic["x^3"] != m * m:
        raise CurveShapeError(
            "Forme inattendue : le coefficient de x³ doit être le carré de celui de y²",
            details=[{"msg": "coefficients de tête", "type": "shape", "x^3": cubic["x^3"], "y^2": m}],
        )
    return WeierstrassCurve(
        a1=Fraction(-cubic["xy"], m),
        a2=Fraction(-cubic["x^2"], m),
        a3=Fraction(cubic["y"]),
        a4=Fraction(cubic["x"]),
        a6=Fraction(0),
    )


def map_point(cubic: Cubic, x: Number, y: Number) -> Tuple[Number, Number]:
    """Image d'un point de la cubique sur le modèle de Weierstrass : (X, Y) = (-m·x, m·y)."""
    m = cubic["y^2"]
    return -m * x, m * y


@dataclass(frozen=True)
class CurveInvariants:
    b2: Fraction
    b4: Fraction
    b6: Fraction
    b8: Fraction
    c4: Fraction
    c6: Fraction
    discriminant: Fraction
    j: Optional[Fraction]

    @property
    def is_singular(self) -> bool:
        return self.discriminant == 0

    def j_invariant(self) -> Fraction:
        """j = c4³/Δ ; erreur si la courbe est singulière."""
        if self.j is None:
            raise SingularCurveError("Invariant j non défini : discriminant nul")
        return self.j

    def as_dict(self) -> Dict[str, Optional[Fraction]]:
        return {
            "b2": self.b2, "b4": self.b4, "b6": self.b6, "b8": self.b8,
            "c4": self.c4, "c6": self.c6, "discriminant": self.discriminant, "j": self.j,
        }


def curve_invariants(curve: WeierstrassCurve) -> CurveInvariants:
    """Invariants b2, b4, b6, b8, c4, c6, Δ et j (absent si Δ = 0)."""
    a1, a2, a3, a4, a6 = curve.coefficients()
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    j = c4 ** 3 / disc if disc != 0 else None
    if disc == 0:
        logger.info("Modèle singulier (Δ = 0)", data={"curve": str(curve)})
    return CurveInvariants(b2, b4, b6, b8, c4, c6, disc, j)


def printed_curve(t: int) -> WeierstrassCurve:
    """Modèle de Weierstrass tel qu'imprimé pour t = 2 ou t = -24."""
    if t not in PRINTED_MODELS:
        raise DomainError(
            f"Aucun modèle imprimé pour t = {t}",
            details=[{"msg": "valeurs de t disponibles", "type": "printed_model",
                      "available": sorted(PRINTED_MODELS)}],
        )
    return WeierstrassCurve.from_tuple(PRINTED_MODELS[t])


def rank_bound_annotation(x: Number, c0: Number) -> mpmath.mpf:
    """
    Annotation c0·log x / log log x pour x ≥ 16.

    Raises:
        DomainError: Si x < 16
    """
    if x < 16:
        raise DomainError(f"L'annotation de rang exige x ≥ 16 (reçu {x})")
    c0 = Fraction(c0)
    x = Fraction(x)
    with mpmath.workdps(settings.WORKING_DPS):
        log_x = mpmath.log(mpmath.mpf(x.numerator) / x.denominator)
        return mpmath.mpf(c0.numerator) / c0.denominator * log_x / mpmath.log(log_x)


__all__ = [
    "PRINTED_MODELS",
    "WeierstrassCurve",
    "to_weierstrass",
    "map_point",
    "CurveInvariants",
    "curve_invariants",
    "printed_curve",
    "rank_bound_annotation",
]
