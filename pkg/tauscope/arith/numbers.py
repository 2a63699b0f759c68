"""
Briques arithmétiques exactes
-----------------------------
Nombres de Bernoulli, sommes de diviseurs, crible des nombres premiers,
factorisation par divisions successives bornée, dimension des espaces de
formes modulaires et indice de Γ0(N).

Le type rationnel est ``fractions.Fraction`` : numérateur et dénominateur
sont toujours réduits, le dénominateur est positif et 0 s'écrit 0/1.
"""

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt
from typing import List, Optional, Tuple

import numpy as np
import sympy

from ..core.claims import ClaimCheck, check_claim
from ..core.config import PRINTED_BERNOULLI, settings
from ..core.exceptions import DomainError, FactorizationEffortError
from ..core.logging_config import get_logger

# Logger pour ce module
logger = get_logger("tauscope.arith.numbers")

Rational = Fraction

_BERNOULLI_CACHE: List[Fraction] = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def bernoulli(n: int) -> Fraction:
    """
    Nombre de Bernoulli B_n avec la convention B_1 = -1/2.

    Calculé par la récurrence Σ_{j=0..n} C(n+1, j)·B_j = 0, mémorisée.

    Args:
        n: Indice positif ou nul

    Returns:
        B_n sous forme de rationnel réduit

    Raises:
        DomainError: Si n est négatif
    """
    if n < 0:
        raise DomainError(f"Indice de Bernoulli négatif: {n}")
    with _BERNOULLI_LOCK:
        while len(_BERNOULLI_CACHE) <= n:
            m = len(_BERNOULLI_CACHE)
            acc = sum(comb(m + 1, j) * _BERNOULLI_CACHE[j] for j in range(m))
            _BERNOULLI_CACHE.append(-acc / (m + 1))
        return _BERNOULLI_CACHE[n]


def bernoulli_claims() -> List[ClaimCheck]:
    """Compare les nombres de Bernoulli imprimés du développement de x/(e^x - 1) à la récurrence."""
    return [
        check_claim(
            claim=f"B_{n}",
            source="développement imprimé de x/(e^x - 1)",
            printed=printed,
            computed=bernoulli(n),
        )
        for n, printed in sorted(PRINTED_BERNOULLI.items())
    ]


def sigma(s: int, n: int) -> int:
    """
    Somme des puissances s-ièmes des diviseurs de n.

    Args:
        s: Exposant positif ou nul
        n: Entier strictement positif

    Returns:
        σ_s(n) exact

    Raises:
        DomainError: Si n < 1 ou s < 0
    """
    if n < 1:
        raise DomainError(f"σ_s(n) n'est défini que pour n ≥ 1 (reçu {n})")
    if s < 0:
        raise DomainError(f"Exposant négatif: {s}")
    result = 1
    for p, e in factorize(n).factors:
        if s == 0:
            result *= e + 1
        else:
            ps = p ** s
            result *= (ps ** (e + 1) - 1) // (ps - 1)
    return result


def sigma_table(s: int, limit: int) -> List[int]:
    """
    Table σ_s(0..limit) par crible des multiples (σ_s(0) vaut 0 par convention).

    Args:
        s: Exposant positif ou nul
        limit: Borne supérieure incluse

    Returns:
        Liste de longueur limit + 1
    """
    if s < 0:
        raise DomainError(f"Exposant négatif: {s}")
    if limit < 0:
        raise DomainError(f"Borne négative: {limit}")
    table = np.zeros(limit + 1, dtype=object)
    for d in range(1, limit + 1):
        table[d::d] += d ** s
    return table.tolist()


def primes_up_to(x: int) -> List[int]:
    """
    Nombres premiers p ≤ x, par ordre croissant (crible d'Ératosthène numpy).

    Args:
        x: Borne supérieure incluse

    Returns:
        Liste croissante des premiers
    """
    if x < 0:
        raise DomainError(f"Borne négative: {x}")
    if x < 2:
        return []
    sieve = np.ones(x + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(x) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.flatnonzero(sieve).tolist()


def is_prime(n: int) -> bool:
    """Test de primalité déterministe (sympy) pour les tailles rencontrées ici."""
    return n >= 2 and bool(sympy.isprime(n))


def euler_phi(q: int) -> int:
    """Indicatrice d'Euler φ(q)."""
    if q < 1:
        raise DomainError(f"φ(q) n'est défini que pour q ≥ 1 (reçu {q})")
    return int(sympy.totient(q))


@dataclass(frozen=True)
class Factorization:
    """Factorisation canonique : premiers strictement croissants avec exposants positifs."""
    factors: Tuple[Tuple[int, int], ...] = ()

    def value(self) -> int:
        result = 1
        for p, e in self.factors:
            result *= p ** e
        return result

    def is_prime_power(self) -> bool:
        return len(self.factors) == 1

    def eleventh_root_prime(self) -> Optional[int]:
        """Premier p tel que la valeur vaut p^11, ou None."""
        if len(self.factors) == 1 and self.factors[0][1] == 11:
            return self.factors[0][0]
        return None

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "·".join(str(p) if e == 1 else f"{p}^{e}" for p, e in self.factors)


def factorize(n: int, effort_bound: Optional[int] = None) -> Factorization:
    """
    Factorisation par divisions successives (roue 6k ± 1) avec borne d'effort.

    Le cofacteur restant après la borne est accepté s'il est premier ;
    sinon la factorisation partielle est rendue via l'exception.

    Args:
        n: Entier strictement positif
        effort_bound: Plus grand diviseur d'essai (par défaut FACTOR_EFFORT_BOUND)

    Returns:
        Factorisation canonique (vide pour n = 1)

    Raises:
        DomainError: Si n < 1
        FactorizationEffortError: Si un cofacteur composé dépasse la borne
    """
    if n < 1:
        raise DomainError(f"Factorisation définie pour n ≥ 1 (reçu {n})")
    bound = effort_bound if effort_bound is not None else settings.FACTOR_EFFORT_BOUND
    factors: List[Tuple[int, int]] = []
    m = n

    for p in (2, 3):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            factors.append((p, e))

    d, step = 5, 2
    while d * d <= m and d <= bound:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            factors.append((d, e))
        d += step
        step = 6 - step

    if m > 1:
        if d * d > m or is_prime(m):
            factors.append((m, 1))
        else:
            partial = Factorization(tuple(factors))
            logger.warning(
                "Factorisation interrompue par la borne d'effort",
                data={"n": n, "cofactor": m, "bound": bound},
            )
            raise FactorizationEffortError(
                message=f"Cofacteur composé {m} au-delà de la borne {bound}",
                partial=partial,
                cofactor=m,
            )

    return Factorization(tuple(sorted(factors)))


def dim_Mk(k: int) -> int:
    """
    Dimension de l'espace des formes modulaires de poids k pour SL2(Z).

    Raises:
        DomainError: Si k est impair ou inférieur à 4
    """
    if k < 4 or k % 2:
        raise DomainError(f"Le poids doit être pair et ≥ 4 (reçu {k})")
    return k // 12 if k % 12 == 2 else k // 12 + 1


def gamma0_index(N: int) -> int:
    """Indice N·Π_{p|N}(1 + 1/p) de Γ0(N) dans SL2(Z)."""
    if N < 1:
        raise DomainError(f"Le niveau doit être ≥ 1 (reçu {N})")
    index = N
    for p, _ in factorize(N).factors:
        index = index // p * (p + 1)
    return index


__all__ = [
    "Rational",
    "bernoulli",
    "bernoulli_claims",
    "sigma",
    "sigma_table",
    "primes_up_to",
    "is_prime",
    "euler_phi",
    "Factorization",
    "factorize",
    "dim_Mk",
    "gamma0_index",
]
