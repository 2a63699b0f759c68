"""
Série de Dirichlet et produit eulérien tronqués
-----------------------------------------------
L(s, Δ_w) = Σ τ_w(n)/n^s = Π_p (1 - τ_w(p)p^{-s} + p^{w-1-2s})^{-1}
évaluées en un point réel s > (w+1)/2, en précision décimale fixe (mpmath).
Les sommes et produits sont réduits dans l'ordre croissant de n et de p.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Union

import mpmath

from ..arith.numbers import primes_up_to
from ..core.config import settings
from ..core.exceptions import ConvergenceError, DomainError, VanishingFactorError
from ..core.logging_config import get_logger, trace_logs
from ..forms.registry import get_table
from ..forms.tables import CuspFormId

# Logger pour ce module
logger = get_logger("tauscope.analytic.lseries")

MIN_DPS = 15


@dataclass(frozen=True)
class LSeriesParams:
    """
    Paramètres d'évaluation.

    Attributes:
        weight: Poids supporté
        s: Point d'évaluation réel (rationnel exact)
        terms: Troncature N de la série
        primes_bound: Troncature P du produit (premiers ≤ P)
        dps: Précision de travail en chiffres décimaux
    """
    weight: int
    s: Fraction
    terms: int
    primes_bound: int
    dps: int = field(default_factory=lambda: settings.WORKING_DPS)

    def __post_init__(self):
        object.__setattr__(self, "s", Fraction(self.s))
        CuspFormId.of(self.weight)
        if self.s <= Fraction(self.weight + 1, 2):
            raise ConvergenceError(
                f"s = {self.s} doit dépasser (w+1)/2 = {Fraction(self.weight + 1, 2)}"
            )
        if self.dps < MIN_DPS:
            raise DomainError(f"Précision insuffisante: {self.dps} < {MIN_DPS} chiffres")
        if self.terms < 1 or self.primes_bound < 1:
            raise DomainError("Les troncatures N et P doivent être ≥ 1")

    def with_truncation(self, terms: int, primes_bound: int) -> "LSeriesParams":
        return LSeriesParams(self.weight, self.s, terms, primes_bound, self.dps)


def _mp_rational(value: Fraction) -> mpmath.mpf:
    return mpmath.mpf(value.numerator) / value.denominator


def dirichlet_partial(params: LSeriesParams) -> mpmath.mpf:
    """Σ_{n ≤ N} τ_w(n)/n^s."""
    t = get_table(params.weight, params.terms).coefficients
    with mpmath.workdps(params.dps):
        s = _mp_rational(params.s)
        return mpmath.fsum(
            mpmath.mpf(t[n - 1]) * mpmath.power(n, -s) for n in range(1, params.terms + 1)
        )


def euler_partial(params: LSeriesParams) -> mpmath.mpf:
    """
    Π_{p ≤ P} (1 - τ_w(p)p^{-s} + p^{w-1-2s})^{-1}.

    Raises:
        VanishingFactorError: Si un facteur local s'annule
    """
    primes = primes_up_to(params.primes_bound)
    if not primes:
        with mpmath.workdps(params.dps):
            return mpmath.mpf(1)
    t = get_table(params.weight, primes[-1]).coefficients
    w = params.weight
    with mpmath.workdps(params.dps):
        s = _mp_rational(params.s)
        product = mpmath.mpf(1)
        for p in primes:
            factor = 1 - t[p - 1] * mpmath.power(p, -s) + mpmath.power(p, w - 1 - 2 * s)
            if factor == 0:
                raise VanishingFactorError(f"Facteur local nul en p = {p}")
            product /= factor
        return product


@dataclass
class LSeriesComparison:
    params: LSeriesParams
    dirichlet: mpmath.mpf
    euler: mpmath.mpf
    difference: mpmath.mpf
    profile: List[dict] = field(default_factory=list)


@trace_logs
def lseries_comparison(params: LSeriesParams, profile_start: Optional[int] = 8) -> LSeriesComparison:
    """
    Compare les deux troncatures et relève l'écart aux doublements
    N = P = profile_start, 2·profile_start, … ≤ min(N, P).
    """
    logger.info(
        "Comparaison série / produit",
        data={"weight": params.weight, "s": params.s, "N": params.terms, "P": params.primes_bound},
    )
    series = dirichlet_partial(params)
    product = euler_partial(params)
    with mpmath.workdps(params.dps):
        difference = abs(series - product)

    profile = []
    bound = min(params.terms, params.primes_bound)
    n = profile_start or 0
    while n and n <= bound:
        sub = params.with_truncation(n, n)
        with mpmath.workdps(params.dps):
            gap = abs(dirichlet_partial(sub) - euler_partial(sub))
        profile.append({"N": n, "difference": gap})
        n *= 2

    logger.info("Écart série / produit", data={"difference": mpmath.nstr(difference, 10)})
    return LSeriesComparison(params, series, product, difference, profile)


def tail_envelope(weight: int, s: Union[int, Fraction], start: int, stop: int, dps: Optional[int] = None) -> mpmath.mpf:
    """Majorant Σ_{start < n ≤ stop} |τ_w(n)|/n^s de l'écart entre deux troncatures de la série."""
    t = get_table(weight, stop).coefficients
    with mpmath.workdps(dps or settings.WORKING_DPS):
        sf = _mp_rational(Fraction(s))
        return mpmath.fsum(abs(t[n - 1]) * mpmath.power(n, -sf) for n in range(start + 1, stop + 1))


__all__ = [
    "LSeriesParams",
    "dirichlet_partial",
    "euler_partial",
    "LSeriesComparison",
    "lseries_comparison",
    "tail_envelope",
]
