"""
Balayages sur les nombres premiers
----------------------------------
Recherche des zéros de τ_w(p), densités par classe de résidus, statistiques
de signe, nombre de valeurs distinctes, premiers non ordinaires et densité
du support des puissances de êta.

Chaque balayage parcourt les premiers par blocs de SCAN_BLOCK_SIZE ; les
résultats partiels sont fusionnés par une opération associative et
commutative, donc indépendante du découpage.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Any, Callable, Dict, List, Optional, Sequence

import mpmath

from ..arith.numbers import euler_phi, is_prime, primes_up_to
from ..core.config import settings
from ..core.exceptions import DomainError, NotPrimeError
from ..core.logging_config import get_logger, trace_logs
from ..forms.registry import get_table
from ..forms.tables import CuspFormId
from ..series.generators import eta_power_series
from ..series.qseries import lacunarity_density
from .report import ScanReport, ratio_entry, timed

# Logger pour ce module
logger = get_logger("tauscope.scans.prime_scans")


@dataclass
class BlockResult:
    """Résultat partiel d'un bloc : compteurs additifs et témoins."""
    counters: Dict[str, int] = field(default_factory=dict)
    witnesses: List[Any] = field(default_factory=list)

    def merge(self, other: "BlockResult") -> "BlockResult":
        counters = dict(self.counters)
        for key, value in other.counters.items():
            counters[key] = counters.get(key, 0) + value
        return BlockResult(counters, sorted(self.witnesses + other.witnesses))


def run_blocks(
    primes: Sequence[int],
    visit: Callable[[Sequence[int]], BlockResult],
    block_size: Optional[int] = None,
) -> BlockResult:
    """
    Applique ``visit`` bloc par bloc et fusionne les résultats partiels.

    Les blocs sont traités séquentiellement, dans l'ordre des premiers.
    La fusion est associative et commutative : le résultat ne dépend ni
    de la taille des blocs ni de l'ordre de fusion.

    Raises:
        DomainError: Si la taille de bloc est inférieure à 1
    """
    size = settings.SCAN_BLOCK_SIZE if block_size is None else block_size
    if size < 1:
        raise DomainError(f"Taille de bloc invalide: {size}")
    parts = [visit(primes[i:i + size]) for i in range(0, len(primes), size)]
    return reduce(BlockResult.merge, parts, BlockResult())


def _annotation_value(expression) -> str:
    with mpmath.workdps(settings.WORKING_DPS):
        return mpmath.nstr(expression(), 12)


def _tau_values(w: int, x: int) -> List[int]:
    CuspFormId.of(w)
    return get_table(w, max(x, 1)).coefficients


@trace_logs
def lehmer_scan(w: int, limit: int, block_size: Optional[int] = None) -> ScanReport:
    """
    Liste les premiers p ≤ limite tels que τ_w(p) = 0 (liste attendue vide).

    Args:
        w: Poids supporté
        limit: Borne du balayage (une borne < 2 donne un balayage vide)
        block_size: Taille de bloc (par défaut SCAN_BLOCK_SIZE)
    """
    CuspFormId.of(w)
    logger.info("Balayage des zéros de τ_w(p)", data={"weight": w, "limit": limit})
    with timed() as watch:
        primes = primes_up_to(max(limit, 0))
        t = _tau_values(w, limit) if primes else []

        def visit(block: Sequence[int]) -> BlockResult:
            return BlockResult({"primes": len(block)}, [p for p in block if t[p - 1] == 0])

        result = run_blocks(primes, visit, block_size)

    annotations: Dict[str, Any] = {}
    if limit >= 3:
        eps = settings.ANNOTATION_EPSILON
        c = settings.ANNOTATION_C
        annotations["zero_count_upper_shape"] = {
            "formula": "c·x/(log x)^(3/2-ε)",
            "c": c, "epsilon": eps,
            "value": _annotation_value(
                lambda: mpmath.mpf(c.numerator) / c.denominator * limit
                / mpmath.log(limit) ** (mpmath.mpf(3) / 2 - mpmath.mpf(eps.numerator) / eps.denominator)
            ),
        }
    report = ScanReport.build(
        "lehmer", w, limit,
        counters={"primes": result.counters.get("primes", 0), "zeros": len(result.witnesses)},
        witnesses=result.witnesses,
        annotations=annotations,
        elapsed_seconds=watch.elapsed,
    )
    logger.info(
        f"Balayage de Lehmer terminé: {len(result.witnesses)} zéro(s)",
        data={"weight": w, "limit": limit, "elapsed_seconds": watch.elapsed},
    )
    return report


def _check_modulus(q: int, a: int) -> None:
    if not is_prime(q):
        raise NotPrimeError(f"Le module {q} doit être premier")
    if not 0 <= a < q:
        raise DomainError(f"Le résidu doit vérifier 0 ≤ a < q (reçu a = {a}, q = {q})")


@trace_logs
def residue_density(w: int, q: int, a: int, x: int, block_size: Optional[int] = None) -> ScanReport:
    """
    Compte #{p ≤ x : τ_w(p) ≡ a (mod q)} et le rapport à π(x).

    Raises:
        NotPrimeError: Si q n'est pas premier
        DomainError: Si a n'est pas dans [0, q)
    """
    CuspFormId.of(w)
    _check_modulus(q, a)
    with timed() as watch:
        primes = primes_up_to(max(x, 0))
        t = _tau_values(w, x) if primes else []

        def visit(block: Sequence[int]) -> BlockResult:
            hits = [p for p in block if (t[p - 1] - a) % q == 0]
            return BlockResult({
                "primes": len(block),
                "odd_primes": sum(1 for p in block if p != 2),
                "hits": len(hits),
                "odd_hits": sum(1 for p in hits if p != 2),
            })

        result = run_blocks(primes, visit, block_size)

    counters: Dict[str, Any] = dict(result.counters) or {"primes": 0, "odd_primes": 0, "hits": 0, "odd_hits": 0}
    if counters["primes"]:
        counters["ratio"] = ratio_entry(Fraction(counters["hits"], counters["primes"]))
    if counters["odd_primes"]:
        counters["odd_ratio"] = ratio_entry(Fraction(counters["odd_hits"], counters["odd_primes"]))

    annotations: Dict[str, Any] = {}
    if x >= 3:
        c = settings.ANNOTATION_C
        annotations["density_shape"] = {
            "formula": "c·x/log x",
            "c": c,
            "value": _annotation_value(lambda: mpmath.mpf(c.numerator) / c.denominator * x / mpmath.log(x)),
        }
    return ScanReport.build(
        "residue", w, x, {"q": q, "a": a},
        counters=counters, annotations=annotations, elapsed_seconds=watch.elapsed,
    )


@trace_logs
def residue_distribution(w: int, q: int, x: int) -> ScanReport:
    """Répartition de τ_w(p) mod q sur toutes les classes a ∈ [0, q) ; la somme vaut π(x)."""
    CuspFormId.of(w)
    _check_modulus(q, 0)
    with timed() as watch:
        primes = primes_up_to(max(x, 0))
        t = _tau_values(w, x) if primes else []

        def visit(block: Sequence[int]) -> BlockResult:
            counts: Dict[str, int] = {}
            for p in block:
                key = str(t[p - 1] % q)
                counts[key] = counts.get(key, 0) + 1
            return BlockResult(counts)

        result = run_blocks(primes, visit)
    classes = {str(a): result.counters.get(str(a), 0) for a in range(q)}
    return ScanReport.build(
        "residue-distribution", w, x, {"q": q},
        counters={"primes": len(primes), "classes": classes},
        elapsed_seconds=watch.elapsed,
    )


@trace_logs
def sign_stats(w: int, q: int, a: int, x: int, block_size: Optional[int] = None) -> ScanReport:
    """
    T_+ et T_- : nombre de premiers p ≤ x, p ≡ a (mod q), avec τ_w(p) > 0 ou < 0.

    q = 1 désigne tous les premiers. Les rapports sont donnés relativement
    à π(x)/(2φ(q)).
    """
    CuspFormId.of(w)
    if q < 1:
        raise DomainError(f"Le module doit être ≥ 1 (reçu {q})")
    if q > 1 and gcd(a, q) != 1:
        raise DomainError(f"pgcd(a, q) doit valoir 1 (reçu a = {a}, q = {q})")
    with timed() as watch:
        primes = primes_up_to(max(x, 0))
        t = _tau_values(w, x) if primes else []

        def visit(block: Sequence[int]) -> BlockResult:
            selected = [p for p in block if q == 1 or p % q == a % q]
            return BlockResult({
                "selected": len(selected),
                "positive": sum(1 for p in selected if t[p - 1] > 0),
                "negative": sum(1 for p in selected if t[p - 1] < 0),
            })

        result = run_blocks(primes, visit, block_size)

    counters: Dict[str, Any] = {
        "primes": len(primes),
        "selected": result.counters.get("selected", 0),
        "T_plus": result.counters.get("positive", 0),
        "T_minus": result.counters.get("negative", 0),
    }
    expected = Fraction(len(primes), 2 * euler_phi(q))
    counters["expected_each"] = ratio_entry(expected)
    if expected:
        counters["T_plus_ratio"] = ratio_entry(counters["T_plus"] / expected)
        counters["T_minus_ratio"] = ratio_entry(counters["T_minus"] / expected)
    return ScanReport.build(
        "signs", w, x, {"q": q, "a": a},
        counters=counters, elapsed_seconds=watch.elapsed,
    )


@trace_logs
def value_set_count(w: int, x: int) -> ScanReport:
    """
    Nombre de valeurs distinctes de τ_w(n) pour n ≤ x, avec l'annotation
    c·x^{1/2}·e^{-4 log x / log log x} (c = 1) lorsque x ≥ 3.
    """
    CuspFormId.of(w)
    if x < 1:
        raise DomainError(f"x doit être ≥ 1 (reçu {x})")
    with timed() as watch:
        t = _tau_values(w, x)
        distinct = len(set(t[:x]))

    annotations: Dict[str, Any] = {}
    if x >= 3:
        c = settings.ANNOTATION_C
        value = _annotation_value(
            lambda: mpmath.mpf(c.numerator) / c.denominator * mpmath.sqrt(x)
            * mpmath.exp(-4 * mpmath.log(x) / mpmath.log(mpmath.log(x)))
        )
        annotations["range_lower_shape"] = {
            "formula": "c·x^(1/2)·exp(-4 log x / log log x)",
            "c": c,
            "value": value,
            "exceeded": distinct > mpmath.mpf(value),
        }
    return ScanReport.build(
        "values", w, x,
        counters={"terms": x, "distinct": distinct},
        annotations=annotations, elapsed_seconds=watch.elapsed,
    )


@trace_logs
def nonordinary_scan(w: int, limit: int, block_size: Optional[int] = None) -> ScanReport:
    """Premiers p ≤ limite tels que τ_w(p) ≡ 0 (mod p)."""
    CuspFormId.of(w)
    with timed() as watch:
        primes = primes_up_to(max(limit, 0))
        t = _tau_values(w, limit) if primes else []

        def visit(block: Sequence[int]) -> BlockResult:
            return BlockResult({"primes": len(block)}, [p for p in block if t[p - 1] % p == 0])

        result = run_blocks(primes, visit, block_size)
    return ScanReport.build(
        "nonordinary", w, limit,
        counters={"primes": result.counters.get("primes", 0), "nonordinary": len(result.witnesses)},
        witnesses=result.witnesses, elapsed_seconds=watch.elapsed,
    )


@trace_logs
def lacunarity_scan(r: int, x: int) -> ScanReport:
    """Densité du support de Π(1 - q^n)^r jusqu'à x (mesure empirique)."""
    if x < 1:
        raise DomainError(f"x doit être ≥ 1 (reçu {x})")
    with timed() as watch:
        series = eta_power_series(r, x)
        density = lacunarity_density(series, x)
    return ScanReport.build(
        "lacunarity", None, x, {"r": r},
        counters={"terms": x, "nonzero": int(density * x), "density": ratio_entry(density)},
        elapsed_seconds=watch.elapsed,
    )


__all__ = [
    "BlockResult",
    "run_blocks",
    "lehmer_scan",
    "residue_density",
    "residue_distribution",
    "sign_stats",
    "value_set_count",
    "nonordinary_scan",
    "lacunarity_scan",
]
