"""
Tables de coefficients des formes paraboliques de niveau 1
----------------------------------------------------------
Δ_12 = q·Π(1 - q^n)^24 et, pour w > 12, Δ_w = Δ_12·E_{w-12}, soit
τ_w(n) = Σ_{1≤m≤n} τ_12(m)·c_{w-12}(n - m) où c_j est le développement
entier de E_j.
"""

import time
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from ..core.config import CONGRUENCE_MODULI, SUPPORTED_WEIGHTS
from ..core.exceptions import DomainError, IntegralityError, TruncationError, UnsupportedWeightError
from ..core.logging_config import get_logger
from ..series.generators import eisenstein_series, eta_power_series
from ..series.qseries import series_mul

# Logger pour ce module
logger = get_logger("tauscope.forms.tables")

PROVENANCE_ETA_POWER = "eta-power"
PROVENANCE_CONVOLUTION = "convolution"
PROVENANCE_CACHE = "cache"


@dataclass(frozen=True)
class CuspFormId:
    """Identifiant d'une forme Δ_w : poids, module de congruence et exposants associés."""
    weight: int
    congruence_modulus: int
    sigma_exponent: int
    eisenstein_factor_weight: Optional[int]

    @classmethod
    def of(cls, weight: int) -> "CuspFormId":
        """
        Construit l'identifiant d'un poids supporté.

        Raises:
            UnsupportedWeightError: Si le poids n'est pas dans {12, 16, 18, 20, 22, 26}
        """
        if weight not in SUPPORTED_WEIGHTS:
            raise UnsupportedWeightError(
                f"Poids {weight} non supporté",
                details=[{"msg": "poids admis", "type": "weight", "supported": list(SUPPORTED_WEIGHTS)}],
            )
        return cls(
            weight=weight,
            congruence_modulus=CONGRUENCE_MODULI[weight],
            sigma_exponent=weight - 1,
            eisenstein_factor_weight=None if weight == 12 else weight - 12,
        )


@dataclass(frozen=True)
class CuspFormTable:
    """Coefficients τ_w(1..N) avec leur provenance ; immuable et partageable."""
    id: CuspFormId
    coefficients: Tuple[int, ...]
    provenance: str

    def __post_init__(self):
        if not self.coefficients or self.coefficients[0] != 1:
            raise IntegralityError("Une table normalisée commence par τ_w(1) = 1")

    @property
    def weight(self) -> int:
        return self.id.weight

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def tau(self, n: int) -> int:
        """τ_w(n) pour 1 ≤ n ≤ N."""
        if n < 1:
            raise DomainError(f"τ_w(n) est défini pour n ≥ 1 (reçu {n})")
        if n > self.order:
            raise TruncationError(f"n = {n} au-delà de l'ordre de la table ({self.order})")
        return self.coefficients[n - 1]

    def prime_values(self, primes: Sequence[int]) -> Tuple[int, ...]:
        return tuple(self.coefficients[p - 1] for p in primes)

    def truncate(self, order: int) -> "CuspFormTable":
        if order > self.order:
            raise TruncationError(f"Ordre {order} supérieur à l'ordre disponible {self.order}")
        return CuspFormTable(self.id, self.coefficients[:order], self.provenance)

    def extend(self, order: int) -> "CuspFormTable":
        """Table d'ordre au moins ``order`` (reconstruite si nécessaire)."""
        if order <= self.order:
            return self
        return tau_table(self.weight, order)


def tau_table(w: int, order: int) -> CuspFormTable:
    """
    Table τ_w(1..N).

    Args:
        w: Poids supporté
        order: Nombre de coefficients N ≥ 1

    Returns:
        Table de provenance « eta-power » (w = 12) ou « convolution » (w > 12)

    Raises:
        UnsupportedWeightError: Poids non supporté
        IntegralityError: Si E_{w-12} n'est pas à coefficients entiers
    """
    form = CuspFormId.of(w)
    if order < 1:
        raise DomainError(f"L'ordre doit être ≥ 1 (reçu {order})")
    started = time.perf_counter()

    # Π(1 - q^n)^24 jusqu'à q^{N-1} : le coefficient d'indice n - 1 est τ_12(n)
    delta = eta_power_series(24, order - 1)
    if form.eisenstein_factor_weight is None:
        coeffs = delta.coefficients
        provenance = PROVENANCE_ETA_POWER
    else:
        eis = eisenstein_series(form.eisenstein_factor_weight, order - 1).to_integral()
        coeffs = series_mul(delta, eis, order - 1).coefficients
        provenance = PROVENANCE_CONVOLUTION

    table = CuspFormTable(form, tuple(int(c) for c in coeffs), provenance)
    logger.info(
        f"Table τ_{w} construite",
        data={"weight": w, "order": order, "provenance": provenance,
              "elapsed_seconds": round(time.perf_counter() - started, 3)},
    )
    return table


__all__ = [
    "CuspFormId",
    "CuspFormTable",
    "tau_table",
    "PROVENANCE_ETA_POWER",
    "PROVENANCE_CONVOLUTION",
    "PROVENANCE_CACHE",
]
