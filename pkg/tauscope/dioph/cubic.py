"""
Cubique plane issue de l'élimination
------------------------------------
    691²x³ - (2764 + 2073t)t·x² + (4 + 4t² + 4t³ + 3t⁴)·x
        + 2764xy - 2(2 + 2t + t²)t·y + 691y² = 0

et recherche bornée de ses points entiers (discriminant en y carré parfait).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

import gmpy2

from ..core.config import settings
from ..core.exceptions import CurveShapeError, DomainError
from ..core.logging_config import get_logger, trace_logs

# Logger pour ce module
logger = get_logger("tauscope.dioph.cubic")

# monôme -> (exposant de x, exposant de y)
MONOMIALS: Dict[str, Tuple[int, int]] = {
    "x^3": (3, 0),
    "x^2": (2, 0),
    "x": (1, 0),
    "xy": (1, 1),
    "y": (0, 1),
    "y^2": (0, 2),
}

Number = Union[int, Fraction]


def general_cubic_coefficients(t) -> Dict[str, object]:
    """Coefficients de la cubique générale ; ``t`` peut être un entier ou un symbole."""
    return {
        "x^3": 477481,
        "x^2": -(2764 + 2073 * t) * t,
        "x": 4 + 4 * t**2 + 4 * t**3 + 3 * t**4,
        "xy": 2764,
        "y": -2 * (2 + 2 * t + t**2) * t,
        "y^2": 691,
    }


@dataclass(frozen=True)
class Cubic:
    """Cubique plane sans terme constant, coefficients entiers exacts."""
    t: Optional[int]
    coefficients: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        unknown = set(self.coefficients) - set(MONOMIALS)
        if unknown:
            raise CurveShapeError(f"Monômes non supportés: {sorted(unknown)}")

    def __getitem__(self, monomial: str) -> int:
        return self.coefficients.get(monomial, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cubic):
            return NotImplemented
        return all(self[m] == other[m] for m in MONOMIALS)

    def __hash__(self) -> int:
        return hash(tuple(self[m] for m in MONOMIALS))

    def as_dict(self) -> Dict[str, int]:
        return {m: self[m] for m in MONOMIALS}

    def __str__(self) -> str:
        terms = []
        for name in MONOMIALS:
            c = self[name]
            if c:
                sign = "-" if c < 0 else "+"
                terms.append(f"{sign} {abs(c)}{name}")
        text = " ".join(terms).lstrip("+ ") or "0"
        return f"{text} = 0"


def general_cubic(t: int) -> Cubic:
    """Cubique générale spécialisée en t."""
    return Cubic(t, {name: int(c) for name, c in general_cubic_coefficients(t).items()})


def cubic_eval(cubic: Cubic, x: Number, y: Number) -> Number:
    """Valeur exacte de la forme cubique en (x, y), entière ou rationnelle."""
    total: Number = 0
    for name, (i, j) in MONOMIALS.items():
        c = cubic[name]
        if c:
            total += c * x**i * y**j
    if isinstance(total, Fraction) and total.denominator == 1:
        return total.numerator
    return total


@trace_logs
def integral_points(cubic: Cubic, x_bound: Optional[int] = None) -> List[Tuple[int, int]]:
    """
    Tous les points entiers (x, y) de la cubique avec |x| ≤ borne.

    La cubique est vue comme un trinôme en y :
    a·y² + (b₁x + b₀)·y + (c₃x³ + c₂x² + c₁x) = 0 ; une abscisse est retenue
    si le discriminant est un carré parfait donnant une racine entière.

    Args:
        cubic: Cubique avec un coefficient de y² non nul
        x_bound: Borne sur |x| (par défaut DEFAULT_X_BOUND)

    Returns:
        Points triés par x croissant puis y croissant
    """
    bound = settings.DEFAULT_X_BOUND if x_bound is None else x_bound
    if bound < 0:
        raise DomainError(f"La borne en x doit être positive (reçu {bound})")
    a = gmpy2.mpz(cubic["y^2"])
    if a == 0:
        raise CurveShapeError("Coefficient de y² nul : recherche en y impossible")
    b1, b0 = gmpy2.mpz(cubic["xy"]), gmpy2.mpz(cubic["y"])
    c3, c2, c1 = gmpy2.mpz(cubic["x^3"]), gmpy2.mpz(cubic["x^2"]), gmpy2.mpz(cubic["x"])
    two_a = 2 * a

    logger.info("Recherche des points entiers", data={"t": cubic.t, "x_bound": bound})
    points = set()
    for xi in range(-bound, bound + 1):
        x = gmpy2.mpz(xi)
        b = b1 * x + b0
        c = ((c3 * x + c2) * x + c1) * x
        disc = b * b - 4 * a * c
        if disc < 0 or not gmpy2.is_square(disc):
            continue
        root = gmpy2.isqrt(disc)
        for num in (-b - root, -b + root):
            if num % two_a == 0:
                points.add((xi, int(num // two_a)))

    result = sorted(points)
    logger.info(f"{len(result)} point(s) entier(s) trouvé(s)", data={"t": cubic.t, "x_bound": bound})
    return result


__all__ = [
    "MONOMIALS",
    "Cubic",
    "general_cubic",
    "general_cubic_coefficients",
    "cubic_eval",
    "integral_points",
]
