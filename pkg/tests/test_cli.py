"""
Tests de la ligne de commande : documents produits et codes de sortie.
"""

from fractions import Fraction

import orjson
import pytest

from tauscope.cli.cache import CoefficientCacheFile, cache_roundtrip, write_cache
from tauscope.cli.commands import main
from tauscope.cli.documents import parameters_digest


@pytest.fixture
def run(cache_dir, capsys):
    """Exécute la commande avec un cache isolé ; renvoie (code, stdout, stderr)."""
    def _run(*argv):
        code = main(["--cache-dir", str(cache_dir), *argv])
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return _run


def _document(out):
    return orjson.loads(out)


# Analyse des arguments

def test_arguments_invalides(run):
    code, _, err = run("tau", "--weight", "14", "--n", "2")
    assert code == 2
    assert "erreur" in err
    assert run("inconnue")[0] == 2


# tau et expand

def test_tau(run):
    code, out, _ = run("tau", "--n", "7")
    assert code == 0
    document = _document(out)
    assert document["tool"] == "tauscope"
    assert document["passed"] is True
    assert document["result"]["values"]["7"] == -16744


def test_tau_intervalle(run):
    code, out, _ = run("tau", "--weight", "16", "--range", "1", "3")
    assert code == 0
    assert _document(out)["result"]["values"] == {"1": 1, "2": 216, "3": -3348}


def test_tau_sans_indice(run):
    assert run("tau")[0] == 2


def test_expand_eta(run):
    code, out, _ = run("expand", "eta", "--terms", "7")
    assert code == 0
    assert out == "1/2,7\n1,-1\n2,-1\n3,0\n4,0\n5,1\n6,0\n7,1\n"


def test_expand_eisenstein(run):
    code, out, _ = run("expand", "eisenstein", "--w", "4", "--terms", "2")
    assert code == 0
    assert out == "4,2\n1,240\n2,2160\n"


def test_expand_eisenstein_non_entiere(run):
    assert run("expand", "eisenstein", "--w", "12", "--terms", "3")[0] == 2


def test_expand_puissance_dense(run):
    code, out, _ = run("expand", "eta-power", "--r", "24", "--terms", "4", "--dense")
    assert code == 0
    assert out == "12,4\n1,-24\n2,252\n3,-1472\n4,4830\n"


def test_expand_vers_fichier(run, tmp_path):
    target = tmp_path / "sortie" / "eta.csv"
    code, out, _ = run("--out", str(target), "expand", "eta", "--terms", "3")
    assert code == 0
    assert out == ""
    assert target.read_text(encoding="ascii") == "1/2,3\n1,-1\n2,-1\n3,0\n"


# verify

def test_verify_congruence(run):
    code, out, _ = run("verify", "congruence", "--limit", "300")
    assert code == 0
    assert _document(out)["command"] == "verify congruence"


def test_verify_bernoulli_et_mode_strict(run):
    code, out, _ = run("verify", "bernoulli")
    assert code == 0
    assert len(_document(out)["discrepancies"]) == 1
    assert run("--strict", "verify", "bernoulli")[0] == 1


def test_verify_all(run):
    code, out, _ = run("verify", "all", "--limit", "100")
    assert code == 0
    assert isinstance(_document(out)["result"], list)


# scan

def test_scan_lehmer_vide(run):
    code, out, _ = run("scan", "lehmer", "--limit", "10000", "--expect-empty")
    assert code == 0
    assert _document(out)["result"]["witnesses"] == []


def test_scan_non_ordinaires_non_vide(run):
    code, out, _ = run("scan", "nonordinary", "--limit", "100", "--expect-empty")
    assert code == 1
    assert _document(out)["result"]["witnesses"] == [2, 3, 5, 7]


def test_scan_residus_sans_module(run):
    assert run("scan", "residue", "--limit", "100", "--a", "1")[0] == 2


def test_scan_taille_de_bloc_nulle(run):
    code, out, err = run("scan", "lehmer", "--limit", "100", "--block-size", "0")
    assert code == 2
    assert out == ""
    assert "DOMAIN_ERROR" in err


# dioph

def test_dioph_remontee(run):
    code, out, _ = run("dioph", "backsub", "--t", "2", "--x", "-687", "--y", "474727")
    assert code == 0
    assert _document(out)["result"]["u"] == -690


def test_dioph_point_hors_cubique(run):
    code, out, err = run("dioph", "backsub", "--t", "2", "--x", "-695", "--y", "480255")
    assert code == 1
    assert out == ""
    assert "POINT" in err.upper()


def test_dioph_temoin(run):
    code, out, _ = run("dioph", "witness", "--p", "2")
    assert code == 0
    result = _document(out)["result"]
    assert (result["u"], result["v"]) == (2048, -3)


def test_dioph_derive_et_ecarts(run):
    code, out, _ = run("dioph", "derive", "--t", "2")
    assert code == 0
    document = _document(out)
    assert document["result"]["singular"] is True
    assert document["result"]["weierstrass"]["a4"] == "100"
    assert document["discrepancies"]
    assert run("--strict", "dioph", "derive", "--t", "2")[0] == 1


def test_claims(run):
    code, out, _ = run("claims")
    assert code == 0
    result = _document(out)["result"]
    assert result["claims"] == len(result["entries"])
    assert result["matches"] < result["claims"]


# cache

def test_cache_aller_retour(run, tmp_path):
    good = tmp_path / "bon.csv"
    good.write_text("12,3\n1,1\n2,-24\n3,252\n", encoding="ascii")
    code, out, _ = run("cache", "roundtrip", "--path", str(good))
    assert code == 0
    assert _document(out)["result"]["identical"] is True


def test_cache_tronque(run, tmp_path):
    truncated = tmp_path / "tronque.csv"
    truncated.write_text("12,3\n1,1\n2,-24\n", encoding="ascii")
    code, out, err = run("cache", "roundtrip", "--path", str(truncated))
    assert code == 2
    assert out == ""
    assert "ligne 4" in err


def test_cache_build(run, cache_dir):
    code, out, _ = run("cache", "build", "--weight", "12", "--order", "20")
    assert code == 0
    assert (cache_dir / "tau_w12.csv").exists()
    assert _document(out)["result"]["available"] == {"12": 20}


# Empreinte et sortie fichier

def test_empreinte_des_parametres(run):
    _, out, _ = run("scan", "signs", "--limit", "50")
    document = _document(out)
    assert document["digest"] == parameters_digest(document["command"], document["parameters"])
    _, again, _ = run("scan", "signs", "--limit", "50")
    assert _document(again)["digest"] == document["digest"]


def test_rapport_vers_fichier(run, tmp_path):
    target = tmp_path / "rapport.json"
    code, out, _ = run("--out", str(target), "tau", "--n", "2")
    assert code == 0
    assert out == ""
    assert orjson.loads(target.read_bytes())["result"]["values"]["2"] == -24


# lseries et satotate

def test_lseries(run):
    code, out, _ = run("lseries", "--s", "10", "--terms", "200", "--tolerance", "1e-6")
    assert code == 0
    assert _document(out)["parameters"]["s"] == "10"


def test_lseries_hors_convergence(run):
    assert run("lseries", "--s", "6", "--terms", "10")[0] == 2


def test_satotate_angle(run):
    code, out, _ = run("satotate", "angle", "--p", "2")
    assert code == 0
    assert _document(out)["result"]["p"] == 2


def test_satotate_comptage(run):
    code, out, _ = run("satotate", "pointcount", "--p", "7")
    assert code == 0
    result = _document(out)["result"]
    assert result["hasse_defect"] ** 2 <= 4 * 7
    assert run("satotate", "pointcount", "--p", "2")[0] == 2


def test_cache_build_dans_deux_repertoires(run, cache_dir, tmp_path, capsys):
    """Une table déjà calculée dans le processus est quand même écrite dans le second cache."""
    assert run("cache", "build", "--weight", "12", "--order", "20")[0] == 0
    other = tmp_path / "autre"
    assert main(["--cache-dir", str(other), "cache", "build", "--weight", "12", "--order", "20"]) == 0
    capsys.readouterr()
    assert (cache_dir / "tau_w12.csv").exists()
    assert (other / "tau_w12.csv").exists()


@pytest.mark.slow
def test_cache_aller_retour_100000_lignes(run, tmp_path):
    path = tmp_path / "grand.csv"
    values = tuple((-1) ** n * (n ** 11 - 7 * n) for n in range(1, 10 ** 5 + 1))
    write_cache(path, CoefficientCacheFile(Fraction(12), values))
    assert cache_roundtrip(path)
    code, out, _ = run("cache", "roundtrip", "--path", str(path))
    assert code == 0
    assert _document(out)["result"]["identical"] is True
