"""
Séries en q tronquées à coefficients exacts
-------------------------------------------
Type ``QSeries`` (coefficients a(0..N) entiers ou rationnels, ordre de
troncature explicite, préfacteur q^r rationnel porté à part) et opérations
de produit, de puissance et de mesure de lacunarité.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.config import settings
from ..core.exceptions import DomainError, IntegralityError, TruncationError
from ..core.logging_config import get_logger
from .kronecker import kronecker_multiply

# Logger pour ce module
logger = get_logger("tauscope.series.qseries")

Coefficient = Union[int, Fraction]


@dataclass(frozen=True, eq=False)
class QSeries:
    """
    Série Σ a(n) q^n tronquée à l'ordre N (n ≤ N).

    ``q_shift`` est l'exposant rationnel du préfacteur q^{q_shift}, jamais
    mélangé aux coefficients. Deux séries sont égales si leurs coefficients
    coïncident jusqu'au plus petit des deux ordres.
    """
    coefficients: Tuple[Coefficient, ...]
    q_shift: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        if not self.coefficients:
            raise DomainError("Une série tronquée contient au moins le coefficient a(0)")

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[Coefficient], q_shift: Fraction = Fraction(0)) -> "QSeries":
        return cls(tuple(_normalize(c) for c in coeffs), Fraction(q_shift))

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls((1,) + (0,) * order)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, n: int) -> Coefficient:
        if n < 0 or n > self.order:
            raise TruncationError(f"Indice {n} hors de l'ordre de troncature {self.order}")
        return self.coefficients[n]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coefficients[:n + 1] == other.coefficients[:n + 1]

    __hash__ = None

    def __mul__(self, other: "QSeries") -> "QSeries":
        return series_mul(self, other, min(self.order, other.order))

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise TruncationError(f"Ordre {order} supérieur à l'ordre disponible {self.order}")
        return QSeries(self.coefficients[:order + 1], self.q_shift)

    def support(self) -> List[int]:
        """Indices des coefficients non nuls."""
        return [n for n, c in enumerate(self.coefficients) if c]

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coefficients)

    def to_integral(self) -> "QSeries":
        """Même série à coefficients entiers ; lève IntegralityError sinon."""
        for n, c in enumerate(self.coefficients):
            if not isinstance(c, int):
                raise IntegralityError(
                    f"Coefficient non entier a({n}) = {c}",
                    details=[{"msg": "coefficient non entier", "type": "integrality", "n": n, "value": str(c)}],
                )
        return self

    def dilate(self, d: int, order: Optional[int] = None) -> "QSeries":
        """Série en q^d, tronquée à ``order`` (par défaut d·N)."""
        if d < 1:
            raise DomainError(f"Facteur de dilatation invalide: {d}")
        order = self.order * d if order is None else order
        out = [0] * (order + 1)
        for n, c in enumerate(self.coefficients):
            if n * d > order:
                break
            out[n * d] = c
        return QSeries(tuple(out), self.q_shift * d)


def _normalize(c: Coefficient) -> Coefficient:
    """Un rationnel de dénominateur 1 est stocké comme entier."""
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    return int(c)


def _nonzero_count(coeffs: Sequence[Coefficient]) -> int:
    return sum(1 for c in coeffs if c)


def _sparse_mul(sparse: Sequence[int], dense: Sequence[int], length: int) -> List[int]:
    """Accumulation décalée : un passage vectorisé par terme non nul du facteur creux."""
    acc = np.zeros(length, dtype=object)
    dense_arr = np.array(list(dense[:length]) + [0] * (length - len(dense[:length])), dtype=object)
    for i, a in enumerate(sparse[:length]):
        if a:
            acc[i:] += a * dense_arr[:length - i]
    return acc.tolist()


def naive_mul(a: Sequence[Coefficient], b: Sequence[Coefficient], length: int) -> List[Coefficient]:
    """Convolution naïve en O(N²), utilisée comme référence."""
    out: List[Coefficient] = [0] * length
    for i, x in enumerate(a[:length]):
        if not x:
            continue
        for j, y in enumerate(b[:length - i]):
            out[i + j] += x * y
    return out


def _integer_mul(a: Sequence[int], b: Sequence[int], length: int) -> List[int]:
    na, nb = _nonzero_count(a[:length]), _nonzero_count(b[:length])
    if min(na, nb) <= settings.SPARSE_CUTOFF:
        if na <= nb:
            return _sparse_mul(a, b, length)
        return _sparse_mul(b, a, length)
    return kronecker_multiply(a, b, length)


def _common_denominator(coeffs: Sequence[Coefficient]) -> int:
    den = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    return den


def series_mul(a: QSeries, b: QSeries, order: int) -> QSeries:
    """
    Produit de deux séries jusqu'à l'ordre N, c(n) = Σ_{i+j=n} a(i)·b(j).

    Stratégie : accumulation creuse si un facteur a au plus SPARSE_CUTOFF
    termes non nuls, substitution de Kronecker sinon. Les séries rationnelles
    sont ramenées à des entiers par un dénominateur commun.

    Args:
        a: Premier facteur
        b: Second facteur
        order: Ordre de troncature du produit

    Returns:
        Produit tronqué ; le préfacteur est la somme des préfacteurs

    Raises:
        TruncationError: Si un facteur est tronqué avant ``order``
    """
    if order < 0:
        raise DomainError(f"Ordre négatif: {order}")
    if a.order < order or b.order < order:
        raise TruncationError(
            f"Ordres {a.order} et {b.order} insuffisants pour un produit à l'ordre {order}"
        )
    length = order + 1
    ca, cb = a.coefficients[:length], b.coefficients[:length]
    den_a, den_b = _common_denominator(ca), _common_denominator(cb)
    if den_a == 1 and den_b == 1:
        coeffs: List[Coefficient] = _integer_mul(ca, cb, length)
    else:
        ia = [int(c * den_a) for c in ca]
        ib = [int(c * den_b) for c in cb]
        den = den_a * den_b
        coeffs = [Fraction(c, den) for c in _integer_mul(ia, ib, length)]
    return QSeries.from_coefficients(coeffs, a.q_shift + b.q_shift)


def series_pow(a: QSeries, e: int, order: int) -> QSeries:
    """
    Puissance e-ième par exponentiation binaire (égale aux produits répétés).

    Raises:
        DomainError: Si e < 1
    """
    if e < 1:
        raise DomainError(f"L'exposant doit être ≥ 1 (reçu {e})")
    if a.order < order:
        raise TruncationError(f"Ordre {a.order} insuffisant pour l'ordre {order}")
    result: Optional[QSeries] = None
    base = a.truncate(order)
    while e:
        if e & 1:
            result = base if result is None else series_mul(result, base, order)
        e >>= 1
        if e:
            base = series_mul(base, base, order)
    return result


def lacunarity_density(a: QSeries, x: int) -> Fraction:
    """
    Densité #{1 ≤ n ≤ x : a(n) ≠ 0} / x, exacte.

    Raises:
        DomainError: Si x < 1
        TruncationError: Si x dépasse l'ordre de troncature
    """
    if x < 1:
        raise DomainError(f"x doit être ≥ 1 (reçu {x})")
    if x > a.order:
        raise TruncationError(f"x = {x} dépasse l'ordre de troncature {a.order}")
    return Fraction(_nonzero_count(a.coefficients[1:x + 1]), x)


__all__ = [
    "QSeries",
    "series_mul",
    "series_pow",
    "naive_mul",
    "lacunarity_density",
]
