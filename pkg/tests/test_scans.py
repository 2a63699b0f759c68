"""
Tests des balayages sur les nombres premiers.
"""

from fractions import Fraction

import pytest

from tauscope.arith.numbers import primes_up_to
from tauscope.core.exceptions import DomainError, NotPrimeError
from tauscope.forms.registry import get_table
from tauscope.scans.prime_scans import (
    BlockResult,
    lacunarity_scan,
    lehmer_scan,
    nonordinary_scan,
    residue_density,
    residue_distribution,
    run_blocks,
    sign_stats,
    value_set_count,
)
from tauscope.scans.report import ratio_entry


def test_lehmer_vide_jusqu_a_10000():
    report = lehmer_scan(12, 10 ** 4)
    assert report.witnesses == []
    assert report.counters == {"primes": 1229, "zeros": 0}
    assert "zero_count_upper_shape" in report.annotations


def test_lehmer_borne_minuscule():
    report = lehmer_scan(12, 1)
    assert report.counters == {"primes": 0, "zeros": 0}
    assert report.annotations == {}


@pytest.mark.parametrize("w", [16, 26])
def test_lehmer_autres_poids(w):
    assert lehmer_scan(w, 2000).witnesses == []


def test_decoupage_sans_effet():
    """Compteurs, témoins et empreinte ne dépendent pas de la taille de bloc."""
    for scan in (
        lambda size: lehmer_scan(12, 3000, block_size=size),
        lambda size: residue_density(12, 3, 1, 3000, block_size=size),
        lambda size: sign_stats(12, 4, 1, 3000, block_size=size),
        lambda size: nonordinary_scan(12, 3000, block_size=size),
    ):
        small, default = scan(7), scan(None)
        assert small.counters == default.counters
        assert small.witnesses == default.witnesses
        assert small.digest == default.digest


def test_fusion_des_blocs():
    merged = BlockResult({"n": 2}, [5]).merge(BlockResult({"n": 3, "m": 1}, [2]))
    assert merged.counters == {"n": 5, "m": 1}
    assert merged.witnesses == [2, 5]
    assert run_blocks([], lambda block: BlockResult({"n": len(block)})).counters == {}
    with pytest.raises(DomainError):
        run_blocks([2, 3], lambda block: BlockResult(), block_size=0)


def test_residus_pairs():
    """τ(p) est toujours pair : la classe 0 modulo 2 contient tous les premiers."""
    report = residue_density(12, 2, 0, 10 ** 4)
    assert report.counters["hits"] == 1229
    assert report.counters["ratio"] == {"exact": "1/1", "decimal": "1.000000"}
    assert report.counters["odd_ratio"]["exact"] == "1/1"
    assert residue_density(12, 2, 1, 10 ** 4).counters["hits"] == 0


def test_residus_borne_vide():
    report = residue_density(12, 3, 0, 1)
    assert report.counters["primes"] == 0
    assert "ratio" not in report.counters


def test_residus_parametres_invalides():
    with pytest.raises(NotPrimeError):
        residue_density(12, 4, 1, 100)
    with pytest.raises(DomainError):
        residue_density(12, 5, 5, 100)


def test_repartition_des_residus():
    report = residue_distribution(12, 3, 1000)
    classes = report.counters["classes"]
    assert sorted(classes) == ["0", "1", "2"]
    assert sum(classes.values()) == len(primes_up_to(1000)) == 168


def test_repartition_independante():
    """Chaque classe est recomptée directement sur la table."""
    t = get_table(12, 500).coefficients
    report = residue_distribution(12, 5, 500)
    for a, count in report.counters["classes"].items():
        assert count == sum(1 for p in primes_up_to(500) if t[p - 1] % 5 == int(a))


def test_signes_jusqu_a_7():
    """τ(2) < 0, τ(3) > 0, τ(5) > 0, τ(7) < 0."""
    report = sign_stats(12, 1, 0, 7)
    assert report.counters["T_plus"] == 2
    assert report.counters["T_minus"] == 2
    assert report.counters["expected_each"]["exact"] == "2/1"


def test_signes_borne_vide():
    report = sign_stats(12, 1, 0, 1)
    assert report.counters["T_plus"] == report.counters["T_minus"] == 0
    assert "T_plus_ratio" not in report.counters


def test_signes_classe_non_inversible():
    with pytest.raises(DomainError):
        sign_stats(12, 4, 2, 100)


def test_valeurs_distinctes():
    assert value_set_count(12, 1).counters["distinct"] == 1
    assert value_set_count(12, 8).counters["distinct"] == 8
    report = value_set_count(12, 10 ** 4)
    assert report.annotations["range_lower_shape"]["exceeded"] is True


def test_premiers_non_ordinaires():
    report = nonordinary_scan(12, 3000)
    assert report.witnesses == [2, 3, 5, 7, 2411]
    t = get_table(12, 3000).coefficients
    assert all(t[p - 1] % p == 0 for p in report.witnesses)


def test_densite_du_support():
    report = lacunarity_scan(1, 10)
    assert report.counters["nonzero"] == 4
    assert report.counters["density"] == ratio_entry(Fraction(2, 5)) == {"exact": "2/5", "decimal": "0.400000"}
    assert report.weight is None
    assert report.parameters == {"r": 1}


def test_taille_de_bloc_nulle_refusee():
    """Une taille de bloc nulle est une erreur de domaine, pas la taille par défaut."""
    with pytest.raises(DomainError):
        lehmer_scan(12, 100, block_size=0)
    with pytest.raises(DomainError):
        run_blocks([], lambda block: BlockResult(), block_size=-3)


@pytest.mark.slow
def test_lehmer_vide_jusqu_a_100000():
    report = lehmer_scan(12, 10 ** 5)
    assert report.witnesses == []
    assert report.counters == {"primes": 9592, "zeros": 0}
