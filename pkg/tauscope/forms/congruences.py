"""
Suites de congruences
---------------------
τ_w(n) ≡ σ_{w-1}(n) (mod M_w) pour les six poids supportés,
τ(n) ≡ n·σ_3(n) (mod 7) pour pgcd(n, 7) = 1 (poids 12), et
τ_w(p^e) ≡ τ_w(p)^e (mod p) pour toutes les puissances de premiers ≤ N.
Les violations sont des données du rapport, pas des erreurs.
"""

from typing import Any, Dict, List, Optional

from ..arith.numbers import primes_up_to, sigma_table
from ..core.config import EXCEPTIONAL_PRIMES
from ..core.exceptions import DomainError
from ..core.logging_config import get_logger, trace_logs
from ..scans.report import ScanReport, timed
from .registry import get_table
from .tables import CuspFormId, CuspFormTable

# Logger pour ce module
logger = get_logger("tauscope.forms.congruences")


def _sigma_suite(table: CuspFormTable, order: int, modulus: int, violations: List[Dict[str, Any]]) -> int:
    sigmas = sigma_table(table.id.sigma_exponent, order)
    for n in range(1, order + 1):
        tau_n = table.coefficients[n - 1]
        if (tau_n - sigmas[n]) % modulus:
            violations.append({
                "suite": "sigma", "n": n, "tau": tau_n,
                "rhs": sigmas[n], "modulus": modulus,
            })
    return order


def _mod7_suite(table: CuspFormTable, order: int, violations: List[Dict[str, Any]]) -> int:
    sigmas = sigma_table(3, order)
    checked = 0
    for n in range(1, order + 1):
        if n % 7 == 0:
            continue
        checked += 1
        tau_n = table.coefficients[n - 1]
        if (tau_n - n * sigmas[n]) % 7:
            violations.append({
                "suite": "mod7", "n": n, "tau": tau_n,
                "rhs": n * sigmas[n], "modulus": 7,
            })
    return checked


def _prime_power_suite(table: CuspFormTable, order: int, violations: List[Dict[str, Any]]) -> int:
    checked = 0
    for p in primes_up_to(order):
        if p * p > order:
            break
        tau_p = table.coefficients[p - 1]
        q, e = p * p, 2
        while q <= order:
            checked += 1
            tau_q = table.coefficients[q - 1]
            if (tau_q - pow(tau_p, e, p)) % p:
                violations.append({
                    "suite": "prime-power", "n": q, "p": p, "e": e,
                    "tau": tau_q, "modulus": p,
                })
            q *= p
            e += 1
    return checked


@trace_logs
def congruence_check(w: int, order: int, table: Optional[CuspFormTable] = None) -> ScanReport:
    """
    Vérifie toutes les congruences applicables pour n ≤ N.

    Args:
        w: Poids supporté
        order: Borne N ≥ 1
        table: Table optionnelle d'ordre ≥ N

    Returns:
        Rapport listant chaque violation (suite, n, valeurs, module)
    """
    form = CuspFormId.of(w)
    if order < 1:
        raise DomainError(f"La borne doit être ≥ 1 (reçu {order})")
    logger.info("Suite de congruences", data={"weight": w, "order": order})

    with timed() as watch:
        if table is None or table.order < order:
            table = get_table(w, order)
        violations: List[Dict[str, Any]] = []
        counters: Dict[str, Any] = {}

        checked = _sigma_suite(table, order, form.congruence_modulus, violations)
        counters["sigma"] = {"checked": checked, "modulus": form.congruence_modulus}
        if w == 12:
            counters["mod7"] = {"checked": _mod7_suite(table, order, violations), "modulus": 7}
        counters["prime_power"] = {"checked": _prime_power_suite(table, order, violations)}

        for suite, entry in counters.items():
            suite_name = suite.replace("_", "-")
            entry["violations"] = sum(1 for v in violations if v["suite"] == suite_name)

    annotations: Dict[str, Any] = {"exceptional_primes": EXCEPTIONAL_PRIMES[w]}
    if w == 22:
        annotations["label_note"] = (
            "congruence modulo 593 publiée pour « τ_24 » ; testée sur la forme de poids 22"
        )

    report = ScanReport.build(
        "congruence", w, order, {"modulus": form.congruence_modulus},
        counters=counters,
        violations=violations,
        annotations=annotations,
        elapsed_seconds=watch.elapsed,
    )
    log = logger.warning if violations else logger.info
    log(
        f"Congruences τ_{w}: {len(violations)} violation(s)",
        data={"weight": w, "order": order, "elapsed_seconds": watch.elapsed},
    )
    return report


__all__ = ["congruence_check"]
