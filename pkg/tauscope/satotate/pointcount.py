"""
Comptage de points modulo p et produit Π N_p/p
----------------------------------------------
N_p = #E(F_p), point à l'infini compris. Pour p impair on complète le
carré : (2Y + a1X + a3)² = 4(X³ + a2X² + a4X + a6) + (a1X + a3)², et chaque
X contribue 1 + (D(X)/p) points. Les calculs sont vectorisés avec numpy.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

import mpmath
import numpy as np

from ..arith.numbers import is_prime, primes_up_to
from ..core.config import settings
from ..core.exceptions import BadReductionError, DomainError, NotPrimeError, SingularCurveError
from ..core.logging_config import get_logger, trace_logs
from ..dioph.curves import WeierstrassCurve, curve_invariants

# Logger pour ce module
logger = get_logger("tauscope.satotate.pointcount")


def _reduce(value: Fraction, p: int) -> int:
    return value.numerator * pow(value.denominator, -1, p) % p


def _reduced_coefficients(curve: WeierstrassCurve, p: int) -> Tuple[int, ...]:
    for a in curve.coefficients():
        if a.denominator % p == 0:
            raise BadReductionError(f"p = {p} divise un dénominateur de la courbe")
    return tuple(_reduce(a, p) for a in curve.coefficients())


def _check_reduction(curve: WeierstrassCurve, p: int, discriminant: Fraction, include_singular: bool) -> None:
    if discriminant == 0:
        if not include_singular:
            raise SingularCurveError("Modèle singulier (Δ = 0) : comptage refusé")
    elif discriminant.numerator % p == 0:
        raise BadReductionError(
            f"p = {p} divise le discriminant",
            details=[{"msg": "mauvaise réduction", "type": "bad_reduction", "p": p,
                      "discriminant": discriminant}],
        )


def _count_reduced(coeffs: Tuple[int, ...], p: int) -> int:
    a1, a2, a3, a4, a6 = coeffs
    if p == 2:
        affine = sum(
            1
            for x in range(2)
            for y in range(2)
            if (y * y + a1 * x * y + a3 * y - (x ** 3 + a2 * x * x + a4 * x + a6)) % 2 == 0
        )
        return affine + 1

    x = np.arange(p, dtype=np.int64)
    x2 = x * x % p
    cubic = (x2 * x % p + a2 * x2 + a4 * x + a6) % p
    linear = (a1 * x + a3) % p
    disc = (4 * cubic + linear * linear % p) % p

    is_square = np.zeros(p, dtype=bool)
    is_square[x2] = True
    per_x = np.where(disc == 0, 1, np.where(is_square[disc], 2, 0))
    return int(per_x.sum()) + 1


def ec_point_count(curve: WeierstrassCurve, p: int, include_singular: bool = False) -> int:
    """
    Nombre de points de la courbe réduite modulo p.

    Args:
        curve: Modèle de Weierstrass à coefficients rationnels
        p: Premier de bonne réduction
        include_singular: Compte aussi les points d'un modèle globalement singulier

    Raises:
        NotPrimeError: Si p n'est pas premier
        BadReductionError: Si p divise Δ ou un dénominateur
        SingularCurveError: Si Δ = 0 et ``include_singular`` est faux
    """
    if not is_prime(p):
        raise NotPrimeError(f"{p} n'est pas premier")
    discriminant = curve_invariants(curve).discriminant
    _check_reduction(curve, p, discriminant, include_singular)
    return _count_reduced(_reduced_coefficients(curve, p), p)


@dataclass
class BSDProduct:
    """Produit Π_{p ≤ x} N_p/p sur les premiers de bonne réduction."""
    x: int
    product: mpmath.mpf
    slope: Optional[float]
    checkpoints: List[Tuple[int, mpmath.mpf]] = field(default_factory=list)
    bad_primes: List[int] = field(default_factory=list)


def _is_good(curve: WeierstrassCurve, p: int, discriminant: Fraction) -> bool:
    if any(a.denominator % p == 0 for a in curve.coefficients()):
        return False
    return discriminant.numerator % p != 0


@trace_logs
def bsd_product(curve: WeierstrassCurve, x: int) -> BSDProduct:
    """
    Produit des N_p/p pour p ≤ x et pente de log(produit) en fonction de
    log log x, estimée par moindres carrés aux points 4, 8, 16, … et x.

    Raises:
        DomainError: Si x < 3
        SingularCurveError: Si le modèle est singulier
    """
    if x < 3:
        raise DomainError(f"x doit être ≥ 3 (reçu {x})")
    discriminant = curve_invariants(curve).discriminant
    if discriminant == 0:
        raise SingularCurveError("Modèle singulier (Δ = 0) : produit non défini")

    marks = []
    k = 4
    while k < x:
        marks.append(k)
        k *= 2
    marks.append(x)

    checkpoints: List[Tuple[int, mpmath.mpf]] = []
    bad: List[int] = []
    with mpmath.workdps(settings.WORKING_DPS):
        product = mpmath.mpf(1)
        primes = primes_up_to(x)
        index = 0
        for mark in marks:
            while index < len(primes) and primes[index] <= mark:
                p = primes[index]
                index += 1
                if not _is_good(curve, p, discriminant):
                    bad.append(p)
                    continue
                n_p = _count_reduced(_reduced_coefficients(curve, p), p)
                product *= mpmath.mpf(n_p) / p
            checkpoints.append((mark, +product))

    slope = None
    usable = [(m, v) for m, v in checkpoints if v > 0]
    if len(usable) >= 2:
        xs = np.array([float(mpmath.log(mpmath.log(m))) for m, _ in usable])
        ys = np.array([float(mpmath.log(v)) for _, v in usable])
        slope = float(np.polyfit(xs, ys, 1)[0])
    logger.info(
        "Produit N_p/p",
        data={"x": x, "product": mpmath.nstr(product, 12), "slope": slope, "bad_primes": bad},
    )
    return BSDProduct(x=x, product=product, slope=slope, checkpoints=checkpoints, bad_primes=bad)


__all__ = ["ec_point_count", "BSDProduct", "bsd_product"]
