"""
Système de congruences et élimination
-------------------------------------
Pour une valeur supposée t = τ(p), on pose u = p^11 et on écrit
τ(p), τ(p²), τ(p³) sous la forme σ_11 + 691·(inconnue) :

    u + 1 + 691v                  = t
    u² + u + 1 + 691x             = t² - u
    u³ + u² + u + 1 + 691y        = t(t² - u) - tu

L'élimination de u (résultant) puis de v (qui n'apparaît que dans la
première équation) donne une cubique plane en (x, y).
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple, Union

import sympy

from ..core.exceptions import DegenerateEliminationError
from ..core.logging_config import get_logger
from .cubic import MONOMIALS, Cubic, general_cubic_coefficients

# Logger pour ce module
logger = get_logger("tauscope.dioph.system")

MODULUS = 691

U, V, X, Y, T = sympy.symbols("u v x y t")

Number = Union[int, Fraction]


def _reduced_equations(t) -> Tuple[sympy.Expr, sympy.Expr, sympy.Expr]:
    return (
        sympy.expand(U + 1 + MODULUS * V - t),
        sympy.expand(U**2 + U + 1 + MODULUS * X - (t**2 - U)),
        sympy.expand(U**3 + U**2 + U + 1 + MODULUS * Y - (t * (t**2 - U) - t * U)),
    )


def _to_fraction(value: sympy.Expr) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


@dataclass(frozen=True)
class TargetSystem:
    """Les trois équations réduites pour un t fixé (membre gauche - membre droit = 0)."""
    t: int
    modulus: int
    equations: Tuple[sympy.Expr, sympy.Expr, sympy.Expr]

    def residuals(self, u: Number, v: Number, x: Number, y: Number) -> Tuple[Fraction, ...]:
        """Valeurs exactes des trois équations en (u, v, x, y)."""
        values = {U: sympy.Rational(str(u)), V: sympy.Rational(str(v)),
                  X: sympy.Rational(str(x)), Y: sympy.Rational(str(y))}
        return tuple(_to_fraction(eq.subs(values)) for eq in self.equations)

    def unknowns_for(self, u: int) -> Dict[str, Fraction]:
        """v, x, y déterminés par u (rationnels, entiers lorsque u = p^11 et t = τ(p))."""
        t = self.t
        return {
            "v": Fraction(t - u - 1, self.modulus),
            "x": Fraction(t * t - u - (u * u + u + 1), self.modulus),
            "y": Fraction(t ** 3 - 2 * u * t - (u ** 3 + u * u + u + 1), self.modulus),
        }


def build_system(t: int) -> TargetSystem:
    """Construit le système réduit de paramètre t."""
    return TargetSystem(t=t, modulus=MODULUS, equations=_reduced_equations(t))


def _eliminated_polynomial(t) -> sympy.Poly:
    _, second, third = _reduced_equations(t)
    gens = (X, Y, T) if isinstance(t, sympy.Basic) else (X, Y)
    resultant = sympy.Poly(sympy.resultant(second, third, U), *gens)
    if resultant.is_zero:
        raise DegenerateEliminationError(f"Résultant identiquement nul pour t = {t}")
    return resultant


def eliminate(t: int) -> Cubic:
    """
    Élimine u et v du système par résultant exact sur les entiers.

    Le résultant vaut ±691 fois la cubique ; le signe est fixé par un
    coefficient de x³ positif.

    Raises:
        DegenerateEliminationError: Résultant nul, non divisible par 691 ou
            de forme inattendue
    """
    resultant = _eliminated_polynomial(t)
    leading = int(resultant.coeff_monomial(X**3))
    if leading == 0:
        raise DegenerateEliminationError(f"Résultant sans terme en x³ pour t = {t}")
    scale = MODULUS if leading > 0 else -MODULUS

    coefficients: Dict[str, int] = {}
    exponents = {exp: name for name, exp in MONOMIALS.items()}
    for monom, coeff in resultant.terms():
        coeff = int(coeff)
        if monom not in exponents:
            raise DegenerateEliminationError(
                f"Monôme inattendu x^{monom[0]}·y^{monom[1]} après élimination (t = {t})"
            )
        if coeff % scale:
            raise DegenerateEliminationError(f"Résultant non divisible par {MODULUS} (t = {t})")
        coefficients[exponents[monom]] = coeff // scale

    cubic = Cubic(t, {name: coefficients.get(name, 0) for name in MONOMIALS})
    logger.debug("Élimination effectuée", data={"t": t, "coefficients": cubic.coefficients})
    return cubic


@dataclass(frozen=True)
class SymbolicElimination:
    """Résultant calculé avec t symbolique, comparé à la cubique générale."""
    coefficients: Dict[str, str]
    agrees: bool


def eliminate_symbolic() -> SymbolicElimination:
    """Élimination avec t laissé symbolique, coefficient par coefficient."""
    resultant = _eliminated_polynomial(T)
    quotient = sympy.Poly(resultant.as_expr() / MODULUS, X, Y)
    coefficients: Dict[str, str] = {}
    agrees = True
    expected = general_cubic_coefficients(T)
    for name, (i, j) in MONOMIALS.items():
        coeff = sympy.expand(quotient.coeff_monomial(X**i * Y**j))
        coefficients[name] = str(sympy.factor(coeff))
        agrees = agrees and sympy.expand(coeff - expected[name]) == 0
    extra = [m for m in quotient.monoms() if m not in MONOMIALS.values()]
    agrees = agrees and not extra
    logger.info("Élimination symbolique", data={"agrees": agrees})
    return SymbolicElimination(coefficients, agrees)


__all__ = [
    "MODULUS",
    "TargetSystem",
    "build_system",
    "eliminate",
    "SymbolicElimination",
    "eliminate_symbolic",
]
