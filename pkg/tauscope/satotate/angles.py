"""
Angles de Sato-Tate
-------------------
cos θ_p = τ_w(p) / (2·p^{(w-1)/2}), θ_p ∈ [0, π], comparés à la mesure
(2/π)·sin²θ dθ par histogramme, et somme R(x) = Σ_{p ≤ x} cos θ_p / √p.
La borne de Deligne est vérifiée en entiers avant toute conversion.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import mpmath
import numpy as np

from ..arith.numbers import is_prime, primes_up_to
from ..core.config import settings
from ..core.exceptions import BoundViolationError, DomainError, NotPrimeError
from ..core.logging_config import get_logger, trace_logs
from ..forms.registry import get_table
from ..forms.tables import CuspFormId, CuspFormTable

# Logger pour ce module
logger = get_logger("tauscope.satotate.angles")


@dataclass(frozen=True)
class AngleSample:
    p: int
    cos_theta: mpmath.mpf
    theta: mpmath.mpf


def _angle_from_value(w: int, p: int, tau_p: int) -> AngleSample:
    if tau_p * tau_p > 4 * p ** (w - 1):
        raise BoundViolationError(
            f"|τ_{w}({p})| dépasse 2·p^((w-1)/2)",
            details=[{"msg": "borne de Deligne", "type": "deligne", "p": p, "tau": tau_p}],
        )
    cos_theta = mpmath.mpf(tau_p) / (2 * mpmath.power(p, mpmath.mpf(w - 1) / 2))
    return AngleSample(p, cos_theta, mpmath.acos(cos_theta))


def angle(w: int, p: int, table: Optional[CuspFormTable] = None) -> AngleSample:
    """
    Angle θ_p de τ_w(p).

    Raises:
        NotPrimeError: Si p n'est pas premier
        BoundViolationError: Si la borne de Deligne échoue (table fautive)
    """
    CuspFormId.of(w)
    if not is_prime(p):
        raise NotPrimeError(f"{p} n'est pas premier")
    if table is None or table.weight != w or table.order < p:
        table = get_table(w, p)
    with mpmath.workdps(settings.WORKING_DPS):
        return _angle_from_value(w, p, table.tau(p))


def st_cumulative(theta) -> mpmath.mpf:
    """Masse de Sato-Tate de [0, θ] : (θ - sin θ·cos θ)/π."""
    return (theta - mpmath.sin(theta) * mpmath.cos(theta)) / mpmath.pi


def st_expected_mass(a, b) -> mpmath.mpf:
    """Masse de Sato-Tate de l'intervalle [a, b] ⊂ [0, π]."""
    with mpmath.workdps(settings.WORKING_DPS):
        return st_cumulative(mpmath.mpf(b)) - st_cumulative(mpmath.mpf(a))


@dataclass
class Histogram:
    """Histogramme des angles sur [0, π] et masses attendues par classe."""
    edges: List[mpmath.mpf]
    counts: List[int]
    expected: List[mpmath.mpf]
    sample_size: int
    chi_square: float = 0.0
    max_deviation: float = 0.0
    frequencies: List[float] = field(default_factory=list)

    def within_tolerance(self, tolerance: float = 0.05) -> bool:
        """Chaque fréquence observée est à moins de ``tolerance`` de sa masse attendue."""
        return self.max_deviation <= tolerance


def _sample_angles(w: int, x: int) -> List[AngleSample]:
    primes = primes_up_to(x)
    if not primes:
        return []
    t = get_table(w, primes[-1]).coefficients
    with mpmath.workdps(settings.WORKING_DPS):
        return [_angle_from_value(w, p, t[p - 1]) for p in primes]


@trace_logs
def st_histogram(w: int, x: int, bins: int) -> Histogram:
    """
    Histogramme des θ_p pour p ≤ x, masses attendues, χ² et écart maximal.

    Raises:
        DomainError: Si bins < 2
    """
    CuspFormId.of(w)
    if bins < 2:
        raise DomainError(f"Il faut au moins 2 classes (reçu {bins})")
    samples = _sample_angles(w, x)
    with mpmath.workdps(settings.WORKING_DPS):
        edges = [mpmath.pi * k / bins for k in range(bins + 1)]
        expected = [st_expected_mass(edges[k], edges[k + 1]) for k in range(bins)]

    thetas = np.array([float(s.theta) for s in samples], dtype=float)
    counts, _ = np.histogram(thetas, bins=np.linspace(0.0, np.pi, bins + 1))
    counts = [int(c) for c in counts]
    n = len(samples)

    histogram = Histogram(edges=edges, counts=counts, expected=expected, sample_size=n)
    if n:
        expected_f = np.array([float(e) for e in expected])
        observed = np.array(counts, dtype=float)
        histogram.frequencies = [float(f) for f in observed / n]
        histogram.chi_square = float(np.sum((observed - n * expected_f) ** 2 / (n * expected_f)))
        histogram.max_deviation = float(np.max(np.abs(observed / n - expected_f)))
    logger.info(
        "Histogramme de Sato-Tate",
        data={"weight": w, "x": x, "bins": bins, "samples": n,
              "chi_square": histogram.chi_square, "max_deviation": histogram.max_deviation},
    )
    return histogram


def r_sum(w: int, x: int) -> mpmath.mpf:
    """R(x) = Σ_{p ≤ x} cos θ_p / √p (0 pour x < 2)."""
    CuspFormId.of(w)
    samples = _sample_angles(w, x)
    with mpmath.workdps(settings.WORKING_DPS):
        return mpmath.fsum(s.cos_theta / mpmath.sqrt(s.p) for s in samples)


__all__ = [
    "AngleSample",
    "angle",
    "st_cumulative",
    "st_expected_mass",
    "Histogram",
    "st_histogram",
    "r_sum",
]
