"""
Identités de Hecke, récurrence aux puissances de premiers, borne de Deligne
--------------------------------------------------------------------------
Toutes les comparaisons sont des égalités ou inégalités entières exactes.
Sans table explicite, la table nécessaire est obtenue (et étendue) via le
registre global.
"""

from math import gcd
from typing import Optional

from ..arith.numbers import is_prime
from ..core.exceptions import DomainError, NotPrimeError
from ..core.logging_config import get_logger
from .registry import get_table
from .tables import CuspFormId, CuspFormTable

# Logger pour ce module
logger = get_logger("tauscope.forms.cuspform")


def _table_for(w: int, order: int, table: Optional[CuspFormTable]) -> CuspFormTable:
    if table is not None and table.weight == w and table.order >= order:
        return table
    return get_table(w, order)


def hecke_check(w: int, m: int, n: int, table: Optional[CuspFormTable] = None) -> bool:
    """
    Identité Σ_{d | pgcd(m,n)} d^{w-1}·τ_w(mn/d²) = τ_w(m)·τ_w(n).

    Args:
        w: Poids supporté
        m: Entier strictement positif
        n: Entier strictement positif
        table: Table optionnelle (étendue si trop courte)

    Returns:
        True si l'identité est exacte
    """
    if m < 1 or n < 1:
        raise DomainError(f"m et n doivent être ≥ 1 (reçus {m}, {n})")
    CuspFormId.of(w)
    t = _table_for(w, m * n, table)
    g = gcd(m, n)
    lhs = sum(d ** (w - 1) * t.tau(m * n // (d * d)) for d in range(1, g + 1) if g % d == 0)
    return lhs == t.tau(m) * t.tau(n)


def tau_prime_power(w: int, p: int, e: int, table: Optional[CuspFormTable] = None) -> int:
    """
    τ_w(p^e) par la récurrence τ(p^{k+1}) = τ(p)·τ(p^k) - p^{w-1}·τ(p^{k-1}).

    La table n'est lue qu'en τ_w(p) et n'est jamais modifiée.

    Raises:
        NotPrimeError: Si p n'est pas premier
        DomainError: Si e < 1
    """
    if not is_prime(p):
        raise NotPrimeError(f"{p} n'est pas premier")
    if e < 1:
        raise DomainError(f"L'exposant doit être ≥ 1 (reçu {e})")
    CuspFormId.of(w)
    tau_p = _table_for(w, p, table).tau(p)
    prev, cur = 1, tau_p
    pw = p ** (w - 1)
    for _ in range(e - 1):
        prev, cur = cur, tau_p * cur - pw * prev
    return cur


def deligne_check(w: int, p: int, table: Optional[CuspFormTable] = None) -> bool:
    """
    Borne de Deligne sous forme entière : τ_w(p)² ≤ 4·p^{w-1}.

    Raises:
        NotPrimeError: Si p n'est pas premier
    """
    if not is_prime(p):
        raise NotPrimeError(f"{p} n'est pas premier")
    CuspFormId.of(w)
    tau_p = _table_for(w, p, table).tau(p)
    return tau_p * tau_p <= 4 * p ** (w - 1)


__all__ = ["hecke_check", "tau_prime_power", "deligne_check"]
