"""
Tests des tables τ_w, du registre et des suites de vérification.
"""

import pytest

from tauscope.cli.cache import read_cache
from tauscope.core.config import DISCREPANCY_KIND, PUBLISHED_DELTA_COEFFICIENTS, PUBLISHED_TAU_TABLE, SUPPORTED_WEIGHTS
from tauscope.core.exceptions import (
    DomainError,
    IntegralityError,
    NotPrimeError,
    TruncationError,
    UnsupportedWeightError,
)
from tauscope.forms.congruences import congruence_check
from tauscope.forms.cuspform import deligne_check, hecke_check, tau_prime_power
from tauscope.forms.registry import TableRegistry, get_table
from tauscope.forms.suites import (
    bernoulli_suite,
    deligne_suite,
    golden_table_check,
    hecke_suite,
    multiplicativity_check,
    odd_square_check,
    prime_power_suite,
)
from tauscope.forms.tables import (
    PROVENANCE_CACHE,
    PROVENANCE_CONVOLUTION,
    PROVENANCE_ETA_POWER,
    CuspFormId,
    CuspFormTable,
    tau_table,
)


# Tables

def test_delta():
    table = tau_table(12, 8)
    assert table.coefficients == PUBLISHED_DELTA_COEFFICIENTS
    assert table.provenance == PROVENANCE_ETA_POWER


@pytest.mark.parametrize("w", SUPPORTED_WEIGHTS)
def test_table_publiee(w):
    """τ_w(p) pour p ∈ {2, 3, 5, 7} redonne la table publiée."""
    table = tau_table(w, 7)
    assert {p: table.tau(p) for p in (2, 3, 5, 7)} == PUBLISHED_TAU_TABLE[w]
    assert table.tau(1) == 1
    expected = PROVENANCE_ETA_POWER if w == 12 else PROVENANCE_CONVOLUTION
    assert table.provenance == expected


def test_poids_non_supporte():
    with pytest.raises(UnsupportedWeightError):
        tau_table(24, 10)
    with pytest.raises(UnsupportedWeightError):
        CuspFormId.of(14)


def test_identifiant():
    form = CuspFormId.of(16)
    assert form.congruence_modulus == 3617
    assert form.sigma_exponent == 15
    assert form.eisenstein_factor_weight == 4
    assert CuspFormId.of(12).eisenstein_factor_weight is None


def test_table_ordre_un():
    assert tau_table(18, 1).coefficients == (1,)
    with pytest.raises(DomainError):
        tau_table(12, 0)


def test_acces_et_troncature():
    table = tau_table(12, 10)
    with pytest.raises(TruncationError):
        table.tau(11)
    with pytest.raises(DomainError):
        table.tau(0)
    assert table.truncate(3).coefficients == (1, -24, 252)
    assert table.extend(5) is table
    assert table.extend(12).order == 12


def test_table_non_normalisee():
    with pytest.raises(IntegralityError):
        CuspFormTable(CuspFormId.of(12), (2, 3), "test")


# Identités ponctuelles

def test_hecke():
    assert hecke_check(12, 2, 2)
    assert hecke_check(12, 2, 3)
    assert hecke_check(20, 4, 6)


def test_puissances_de_premiers():
    assert tau_prime_power(12, 2, 2) == -1472
    assert tau_prime_power(12, 2, 1) == -24
    assert tau_prime_power(12, 3, 2) == get_table(12, 9).tau(9)
    with pytest.raises(NotPrimeError):
        tau_prime_power(12, 4, 1)
    with pytest.raises(DomainError):
        tau_prime_power(12, 2, 0)


def test_borne_de_deligne():
    assert deligne_check(12, 2)
    assert deligne_check(26, 7)
    with pytest.raises(NotPrimeError):
        deligne_check(12, 9)


# Congruences

def test_congruences_delta():
    """Congruences modulo 691, modulo 7 et aux puissances de premiers."""
    report = congruence_check(12, 2000)
    assert report.passed
    assert report.counters["sigma"] == {"checked": 2000, "modulus": 691, "violations": 0}
    assert report.counters["mod7"]["violations"] == 0
    assert report.annotations["exceptional_primes"][-1] == "691"


@pytest.mark.parametrize("w", [16, 18, 20, 26])
def test_congruences_autres_poids(w):
    assert congruence_check(w, 500).passed


def test_congruence_poids_22_deterministe():
    """Le rapport du poids 22 est reproductible et porte la note sur l'étiquette publiée."""
    first = congruence_check(22, 300)
    second = congruence_check(22, 300)
    assert first.digest == second.digest
    assert first.violations == second.violations
    assert "label_note" in first.annotations


def test_congruence_table_fautive():
    """Une table altérée produit une violation localisée."""
    good = tau_table(12, 10).coefficients
    bad = CuspFormTable(CuspFormId.of(12), good[:4] + (good[4] + 1,) + good[5:], "test")
    report = congruence_check(12, 10, table=bad)
    assert not report.passed
    assert {"suite": "sigma", "n": 5}.items() <= report.violations[0].items()


# Suites

def test_suites_sans_violation():
    assert hecke_suite(12, 20).passed
    assert multiplicativity_check(16, 500).passed
    assert prime_power_suite(18, 500).passed
    assert deligne_suite(26, 1000).passed
    assert odd_square_check(1000).passed
    assert golden_table_check().passed


def test_compteurs_de_hecke():
    report = hecke_suite(12, 10)
    assert report.counters == {"pairs": 100, "violations": 0}


def test_suite_bernoulli():
    report = bernoulli_suite()
    assert report.passed
    assert len(report.discrepancies) == 1
    assert report.discrepancies[0]["claim"] == "B_10"
    assert report.discrepancies[0]["kind"] == DISCREPANCY_KIND


def test_empreinte_rejouable():
    report = deligne_suite(12, 100)
    assert report.replay_digest() == report.digest


# Registre

def test_registre_persistant(cache_dir):
    """Une table construite est écrite, redécouverte puis relue depuis le disque."""
    registry = TableRegistry(cache_dir, persist=True)
    built = registry.get_table(12, 20)
    path = cache_dir / "tau_w12.csv"
    assert path.exists()
    assert read_cache(path).values == built.coefficients

    fresh = TableRegistry(cache_dir)
    assert fresh.available_orders() == {12: 20}
    loaded = fresh.get_table(12, 10)
    assert loaded.provenance == PROVENANCE_CACHE
    assert loaded.coefficients == built.coefficients

    bigger = fresh.get_table(12, 30)
    assert bigger.order == 30
    assert bigger.provenance == PROVENANCE_ETA_POWER


def test_registre_ignore_un_cache_corrompu(cache_dir):
    (cache_dir / "tau_w16.csv").write_text("n'importe quoi\n", encoding="ascii")
    registry = TableRegistry(cache_dir)
    assert registry.available_orders() == {}
    assert registry.get_table(16, 3).tau(2) == 216


def test_registre_memoire():
    registry = TableRegistry()
    first = registry.get_table(20, 15)
    assert registry.get_table(20, 10) is first
    registry.clear_cache(20)
    assert registry.weights() == []


def test_registre_reconfigure_ecrit_le_cache(cache_dir):
    """Une table déjà en mémoire est écrite dans le nouveau répertoire de cache."""
    registry = TableRegistry()
    registry.get_table(12, 30)
    registry.configure(cache_dir, persist=True)
    table = registry.get_table(12, 20)
    path = cache_dir / "tau_w12.csv"
    assert path.exists()
    assert read_cache(path).values == table.coefficients
    assert registry.available_orders()[12] >= 20


def test_registre_reconfigure_vide_la_memoire(cache_dir):
    registry = TableRegistry()
    registry.get_table(16, 10)
    registry.configure(cache_dir, persist=False)
    assert registry.weights() == []


# Bornes d'acceptation

@pytest.mark.slow
@pytest.mark.parametrize("w", SUPPORTED_WEIGHTS)
def test_congruences_jusqu_a_10000(w):
    assert congruence_check(w, 10 ** 4).passed


@pytest.mark.slow
def test_congruence_poids_22_modulo_593():
    first = congruence_check(22, 10 ** 4)
    second = congruence_check(22, 10 ** 4)
    assert first.passed
    assert first.counters["sigma"]["modulus"] == 593
    assert first.digest == second.digest


@pytest.mark.slow
@pytest.mark.parametrize("w", SUPPORTED_WEIGHTS)
def test_hecke_jusqu_a_300(w):
    report = hecke_suite(w, 300)
    assert report.passed
    assert report.counters["violations"] == 0


@pytest.mark.slow
@pytest.mark.parametrize("w", SUPPORTED_WEIGHTS)
def test_deligne_et_multiplicativite_jusqu_a_10000(w):
    assert deligne_suite(w, 10 ** 4).passed
    assert multiplicativity_check(w, 10 ** 4).passed


@pytest.mark.slow
def test_imparite_jusqu_a_10000():
    assert odd_square_check(10 ** 4).passed
