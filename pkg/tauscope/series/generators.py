"""
Générateurs de séries êta et d'Eisenstein
-----------------------------------------
Séries creuses (nombres pentagonaux, cube de Jacobi), puissances et
produits de la fonction êta de Dedekind, séries d'Eisenstein exactes.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Dict, Tuple

import numpy as np

from ..arith.numbers import bernoulli, sigma_table
from ..core.exceptions import DomainError, NegativeExponentError
from ..core.logging_config import get_logger
from .qseries import QSeries, series_mul, series_pow

# Logger pour ce module
logger = get_logger("tauscope.series.generators")


def eta_series(order: int) -> QSeries:
    """
    Série pentagonale Σ_{n∈Z} (-1)^n q^{(3n²+n)/2} = Π(1 - q^n), tronquée.

    Le préfacteur q^{1/24} est porté par ``q_shift``.
    """
    if order < 0:
        raise DomainError(f"Ordre négatif: {order}")
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        if e1 > order:
            break
        sign = -1 if k % 2 else 1
        coeffs[e1] += sign
        e2 = k * (3 * k + 1) // 2
        if e2 <= order:
            coeffs[e2] += sign
        k += 1
    return QSeries(tuple(coeffs), Fraction(1, 24))


def jacobi_cube_series(order: int) -> QSeries:
    """Identité de Jacobi : Π(1 - q^n)^3 = Σ_{n≥0} (-1)^n (2n+1) q^{n(n+1)/2}."""
    if order < 0:
        raise DomainError(f"Ordre négatif: {order}")
    coeffs = [0] * (order + 1)
    n = 0
    while n * (n + 1) // 2 <= order:
        coeffs[n * (n + 1) // 2] = (-1) ** n * (2 * n + 1)
        n += 1
    return QSeries(tuple(coeffs), Fraction(1, 8))


def eta_power_series(r: int, order: int) -> QSeries:
    """
    Π_{n≥1}(1 - q^n)^r tronquée à l'ordre N.

    Assemblée à partir des générateurs creux : (cube de Jacobi)^(r // 3)
    multiplié par la série pentagonale à la puissance r mod 3.

    Args:
        r: Exposant strictement positif
        order: Ordre de troncature

    Returns:
        Série entière, préfacteur q^{r/24}
    """
    if r < 1:
        raise DomainError(f"L'exposant doit être ≥ 1 (reçu {r})")
    if order < 0:
        raise DomainError(f"Ordre négatif: {order}")
    logger.debug("Développement d'une puissance de êta", data={"r": r, "order": order})
    factors = []
    if r // 3:
        factors.append(series_pow(jacobi_cube_series(order), r // 3, order))
    if r % 3:
        factors.append(series_pow(eta_series(order), r % 3, order))
    result = reduce(lambda x, y: series_mul(x, y, order), factors)
    return QSeries(result.coefficients, Fraction(r, 24))


def dense_eta_power_series(r: int, order: int) -> QSeries:
    """
    Produit dense Π_{n≤N}(1 - q^n)^r, facteur par facteur.

    Sert de référence indépendante des générateurs creux.
    """
    if r < 1:
        raise DomainError(f"L'exposant doit être ≥ 1 (reçu {r})")
    coeffs = np.zeros(order + 1, dtype=object)
    coeffs[0] = 1
    for n in range(1, order + 1):
        for _ in range(r):
            coeffs[n:] = coeffs[n:] - coeffs[:order + 1 - n]
    return QSeries(tuple(coeffs.tolist()), Fraction(r, 24))


@dataclass(frozen=True)
class EtaProductSpec:
    """
    Produit êta Π_d η(dz)^{r_d}.

    Le niveau est le ppcm des d, le poids (1/2)·Σ r_d et le préfacteur
    q^{Σ d·r_d / 24}.
    """
    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if not self.factors:
            raise DomainError("Un produit êta contient au moins un facteur")
        ds = [d for d, _ in self.factors]
        if len(set(ds)) != len(ds):
            raise DomainError(f"Valeurs de d répétées: {ds}")
        for d, r in self.factors:
            if d < 1:
                raise DomainError(f"d doit être strictement positif (reçu {d})")
            if r == 0:
                raise DomainError(f"Exposant nul pour d = {d}")
        object.__setattr__(self, "factors", tuple(sorted(self.factors)))

    @classmethod
    def from_mapping(cls, mapping: Dict[int, int]) -> "EtaProductSpec":
        return cls(tuple(mapping.items()))

    @classmethod
    def parse(cls, text: str) -> "EtaProductSpec":
        """Lit une spécification de la forme '1:2,2:2'."""
        try:
            pairs = [item.split(":") for item in text.split(",") if item.strip()]
            return cls(tuple((int(d), int(r)) for d, r in pairs))
        except ValueError as exc:
            raise DomainError(f"Spécification de produit êta illisible: {text!r}") from exc

    @property
    def level(self) -> int:
        return reduce(lcm, (d for d, _ in self.factors), 1)

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(r for _, r in self.factors), 2)

    @property
    def q_shift(self) -> Fraction:
        return Fraction(sum(d * r for d, r in self.factors), 24)


def eta_product_series(spec: EtaProductSpec, order: int) -> QSeries:
    """
    Partie entière Π_d Π_n (1 - q^{dn})^{r_d} d'un produit êta, tronquée.

    Raises:
        NegativeExponentError: Si un exposant r_d est négatif
    """
    negatives = [(d, r) for d, r in spec.factors if r < 0]
    if negatives:
        raise NegativeExponentError(
            details=[{"msg": "exposant négatif", "type": "negative_exponent", "d": d, "r": r} for d, r in negatives]
        )
    result = QSeries.one(order)
    for d, r in spec.factors:
        factor = eta_power_series(r, order // d).dilate(d, order)
        result = series_mul(result, factor, order)
    return QSeries(result.coefficients, spec.q_shift)


def eisenstein_series(w: int, order: int) -> QSeries:
    """
    Série d'Eisenstein E_w = 1 - (2w/B_w)·Σ σ_{w-1}(m) q^m, coefficients rationnels exacts.

    Raises:
        DomainError: Si w est impair ou inférieur à 4
    """
    if w < 4 or w % 2:
        raise DomainError(f"Le poids doit être pair et ≥ 4 (reçu {w})")
    if order < 0:
        raise DomainError(f"Ordre négatif: {order}")
    factor = -Fraction(2 * w) / bernoulli(w)
    sigmas = sigma_table(w - 1, order)
    coeffs = [Fraction(1)] + [factor * sigmas[m] for m in range(1, order + 1)]
    return QSeries.from_coefficients(coeffs)


__all__ = [
    "eta_series",
    "jacobi_cube_series",
    "eta_power_series",
    "dense_eta_power_series",
    "EtaProductSpec",
    "eta_product_series",
    "eisenstein_series",
]
