"""
Suites de vérification des tables τ_w
-------------------------------------
Multiplicativité, identité de Hecke complète, récurrence aux puissances de
premiers, borne de Deligne, loi de parité de τ_12, table publiée et
nombres de Bernoulli. Chaque suite produit un ScanReport.
"""

from math import gcd, isqrt
from typing import Any, Dict, List

from ..arith.numbers import bernoulli, bernoulli_claims, primes_up_to
from ..core.claims import discrepancies
from ..core.config import PUBLISHED_DELTA_COEFFICIENTS, PUBLISHED_TAU_TABLE, SUPPORTED_WEIGHTS
from ..core.exceptions import DomainError
from ..core.logging_config import get_logger, trace_logs
from ..scans.report import ScanReport, timed
from .cuspform import tau_prime_power
from .registry import get_table
from .tables import CuspFormId

# Logger pour ce module
logger = get_logger("tauscope.forms.suites")


def _require_limit(limit: int, minimum: int = 1) -> None:
    if limit < minimum:
        raise DomainError(f"La borne doit être ≥ {minimum} (reçu {limit})")


@trace_logs
def multiplicativity_check(w: int, limit: int) -> ScanReport:
    """τ_w(mn) = τ_w(m)·τ_w(n) pour tous m, n ≥ 2 premiers entre eux avec mn ≤ limite."""
    CuspFormId.of(w)
    _require_limit(limit)
    with timed() as watch:
        t = get_table(w, limit).coefficients
        violations: List[Dict[str, Any]] = []
        checked = 0
        for m in range(2, isqrt(limit) + 1):
            for n in range(m + 1, limit // m + 1):
                if gcd(m, n) != 1:
                    continue
                checked += 1
                if t[m * n - 1] != t[m - 1] * t[n - 1]:
                    violations.append({"suite": "multiplicative", "m": m, "n": n})
    return ScanReport.build(
        "multiplicative", w, limit,
        counters={"pairs": checked, "violations": len(violations)},
        violations=violations, elapsed_seconds=watch.elapsed,
    )


@trace_logs
def hecke_suite(w: int, limit: int) -> ScanReport:
    """Identité de Hecke complète pour tous m, n ≤ limite (table d'ordre limite²)."""
    CuspFormId.of(w)
    _require_limit(limit)
    with timed() as watch:
        t = get_table(w, limit * limit).coefficients
        powers = [0] + [d ** (w - 1) for d in range(1, limit + 1)]
        divisors: List[List[int]] = [[] for _ in range(limit + 1)]
        for d in range(1, limit + 1):
            for k in range(d, limit + 1, d):
                divisors[k].append(d)
        violations: List[Dict[str, Any]] = []
        checked = 0
        for m in range(1, limit + 1):
            for n in range(1, limit + 1):
                checked += 1
                mn = m * n
                lhs = sum(powers[d] * t[mn // (d * d) - 1] for d in divisors[gcd(m, n)])
                if lhs != t[m - 1] * t[n - 1]:
                    violations.append({"suite": "hecke", "m": m, "n": n})
    logger.info(f"Identité de Hecke τ_{w}", data={"pairs": checked, "violations": len(violations)})
    return ScanReport.build(
        "hecke", w, limit,
        counters={"pairs": checked, "violations": len(violations)},
        violations=violations, elapsed_seconds=watch.elapsed,
    )


@trace_logs
def prime_power_suite(w: int, limit: int) -> ScanReport:
    """La récurrence aux puissances de premiers redonne la table pour tout p^e ≤ limite."""
    CuspFormId.of(w)
    _require_limit(limit, 2)
    with timed() as watch:
        table = get_table(w, limit)
        violations: List[Dict[str, Any]] = []
        checked = 0
        for p in primes_up_to(limit):
            q, e = p, 1
            while q <= limit:
                checked += 1
                value = tau_prime_power(w, p, e, table=table)
                if value != table.tau(q):
                    violations.append({"suite": "prime-power", "p": p, "e": e,
                                       "recurrence": value, "table": table.tau(q)})
                q *= p
                e += 1
    return ScanReport.build(
        "prime-power", w, limit,
        counters={"prime_powers": checked, "violations": len(violations)},
        violations=violations, elapsed_seconds=watch.elapsed,
    )


@trace_logs
def deligne_suite(w: int, limit: int) -> ScanReport:
    """Borne de Deligne exacte τ_w(p)² ≤ 4·p^{w-1} pour tout premier p ≤ limite."""
    CuspFormId.of(w)
    _require_limit(limit)
    with timed() as watch:
        t = get_table(w, max(limit, 1)).coefficients
        primes = primes_up_to(limit)
        violations = [
            {"suite": "deligne", "p": p, "tau": t[p - 1]}
            for p in primes
            if t[p - 1] * t[p - 1] > 4 * p ** (w - 1)
        ]
    return ScanReport.build(
        "deligne", w, limit,
        counters={"primes": len(primes), "violations": len(violations)},
        violations=violations, elapsed_seconds=watch.elapsed,
    )


@trace_logs
def odd_square_check(limit: int) -> ScanReport:
    """τ_12(n) est impair si et seulement si n est un carré impair, pour n ≤ limite."""
    _require_limit(limit)
    with timed() as watch:
        t = get_table(12, limit).coefficients
        violations = []
        odd_values = 0
        for n in range(1, limit + 1):
            odd = t[n - 1] % 2 == 1
            odd_square = n % 2 == 1 and isqrt(n) ** 2 == n
            odd_values += odd
            if odd != odd_square:
                violations.append({"suite": "odd-square", "n": n, "tau_parity": int(odd)})
    return ScanReport.build(
        "odd-square", 12, limit,
        counters={"checked": limit, "odd_values": odd_values, "violations": len(violations)},
        violations=violations, elapsed_seconds=watch.elapsed,
    )


@trace_logs
def golden_table_check() -> ScanReport:
    """Compare τ_w(p), p ∈ {2, 3, 5, 7}, à la table publiée et Δ_12 à ses huit premiers coefficients."""
    with timed() as watch:
        violations = []
        cells = 0
        for w in SUPPORTED_WEIGHTS:
            t = get_table(w, 8)
            for p, expected in PUBLISHED_TAU_TABLE[w].items():
                cells += 1
                if t.tau(p) != expected:
                    violations.append({"suite": "golden", "weight": w, "p": p,
                                       "expected": expected, "computed": t.tau(p)})
        delta = get_table(12, len(PUBLISHED_DELTA_COEFFICIENTS)).coefficients
        for n, expected in enumerate(PUBLISHED_DELTA_COEFFICIENTS, start=1):
            cells += 1
            if delta[n - 1] != expected:
                violations.append({"suite": "golden", "weight": 12, "n": n,
                                   "expected": expected, "computed": delta[n - 1]})
    return ScanReport.build(
        "golden", None, 7,
        counters={"cells": cells, "violations": len(violations)},
        violations=violations, elapsed_seconds=watch.elapsed,
    )


@trace_logs
def bernoulli_suite(limit: int = 61) -> ScanReport:
    """B_n = 0 pour n impair ≥ 3, et confrontation des valeurs imprimées à la récurrence."""
    _require_limit(limit)
    with timed() as watch:
        violations = [
            {"suite": "bernoulli", "n": n, "value": bernoulli(n)}
            for n in range(3, limit + 1, 2)
            if bernoulli(n) != 0
        ]
        checks = bernoulli_claims()
    return ScanReport.build(
        "bernoulli", None, limit,
        counters={"odd_indices": len(range(3, limit + 1, 2)), "violations": len(violations),
                  "printed_values": len(checks)},
        violations=violations,
        discrepancies=discrepancies(checks),
        elapsed_seconds=watch.elapsed,
    )


__all__ = [
    "multiplicativity_check",
    "hecke_suite",
    "prime_power_suite",
    "deligne_suite",
    "odd_square_check",
    "golden_table_check",
    "bernoulli_suite",
]
