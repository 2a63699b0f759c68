"""
Interface en ligne de commande de TAUSCOPE
------------------------------------------
Sous-commandes : expand, tau, verify, scan, dioph, claims, cache, lseries
et satotate. Codes de sortie : 0 vérification réussie, 1 violations ou
erreur interne, 2 erreur d'usage. Les écarts avec les valeurs imprimées
sont des données du rapport ; ils n'échouent qu'avec --strict.
"""

import argparse
import sys
from fractions import Fraction
from math import isqrt
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from ..analytic.lseries import LSeriesParams, lseries_comparison
from ..arith.numbers import bernoulli_claims
from ..core.claims import discrepancies
from ..core.config import SUPPORTED_WEIGHTS, load_settings, settings
from ..core.exceptions import (
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_USAGE,
    DomainError,
    IntegralityError,
    VerificationError,
    handle_cli_errors,
)
from ..core.logging_config import get_logger, setup_logging
from ..dioph.claims import printed_claims_report
from ..dioph.cubic import general_cubic, integral_points
from ..dioph.curves import curve_invariants, printed_curve, to_weierstrass
from ..dioph.system import eliminate, eliminate_symbolic
from ..dioph.witness import back_substitute, known_value_witness
from ..forms.congruences import congruence_check
from ..forms.registry import table_registry
from ..forms.suites import (
    bernoulli_suite,
    deligne_suite,
    golden_table_check,
    hecke_suite,
    multiplicativity_check,
    odd_square_check,
    prime_power_suite,
)
from ..satotate.angles import angle, r_sum, st_histogram
from ..satotate.pointcount import bsd_product, ec_point_count
from ..scans import prime_scans
from ..scans.report import ScanReport
from ..series.generators import (
    EtaProductSpec,
    dense_eta_power_series,
    eisenstein_series,
    eta_power_series,
    eta_product_series,
    eta_series,
    jacobi_cube_series,
)
from .cache import CoefficientCacheFile, cache_roundtrip, write_cache
from .documents import ReportDocument

# Logger pour ce module
logger = get_logger("tauscope.cli.commands")

VERIFY_SUITES = (
    "congruence", "hecke", "deligne", "odd-square", "multiplicative",
    "prime-power", "golden", "bernoulli", "all",
)
SCAN_KINDS = (
    "lehmer", "residue", "residue-distribution", "signs", "values",
    "nonordinary", "lacunarity",
)


class ArgumentParser(argparse.ArgumentParser):
    """Analyseur dont les erreurs d'usage renvoient le code 2 sans quitter le processus."""

    def error(self, message: str):
        raise UsageExit(message)


class UsageExit(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"rationnel invalide: {text!r}") from exc


def _emit(
    args: argparse.Namespace,
    command: str,
    parameters: Dict[str, Any],
    result: Any,
    passed: bool = True,
    found: Optional[List[Dict[str, Any]]] = None,
) -> int:
    document = ReportDocument.build(command, parameters, result, passed, found)
    document.write(args.out)
    if not passed:
        return EXIT_FAILURE
    if args.strict and document.discrepancies:
        logger.warning(
            "Écarts avec les valeurs imprimées (mode strict)",
            data={"count": len(document.discrepancies)},
        )
        return EXIT_FAILURE
    return EXIT_OK


_GLOBAL_FLAGS = ("handler", "out", "log_file", "log_level", "cache_dir", "strict")


def _parameters(args: argparse.Namespace) -> Dict[str, Any]:
    return {k: v for k, v in vars(args).items() if k not in _GLOBAL_FLAGS}


def _emit_reports(args: argparse.Namespace, command: str, reports: List[ScanReport]) -> int:
    found = [d for r in reports for d in r.discrepancies]
    result = reports[0].to_document() if len(reports) == 1 else [r.to_document() for r in reports]
    return _emit(args, command, _parameters(args), result, all(r.passed for r in reports), found)


# ----------------------------------------------------------------- expand

def _expand_series(args: argparse.Namespace):
    terms = args.terms
    if args.kind == "eta":
        return Fraction(1, 2), eta_series(terms)
    if args.kind == "jacobi":
        return Fraction(3, 2), jacobi_cube_series(terms)
    if args.kind == "eta-power":
        if args.r is None:
            raise DomainError("--r est requis pour eta-power")
        series = eta_power_series(args.r, terms)
        if args.dense and series != dense_eta_power_series(args.r, terms):
            raise VerificationError("Développements creux et dense différents")
        return Fraction(args.r, 2), series
    if args.kind == "eta-product":
        if args.spec is None:
            raise DomainError("--spec est requis pour eta-product (ex. 1:2,11:2)")
        spec = EtaProductSpec.parse(args.spec)
        return spec.weight, eta_product_series(spec, terms)
    if args.w is None:
        raise DomainError("--w est requis pour eisenstein")
    series = eisenstein_series(args.w, terms)
    try:
        series = series.to_integral()
    except IntegralityError as exc:
        raise DomainError(f"E_{args.w} n'est pas à coefficients entiers") from exc
    return Fraction(args.w), series


def cmd_expand(args: argparse.Namespace) -> int:
    """Développe une série et l'écrit au format du cache (lignes n = 1..terms)."""
    if args.terms < 1:
        raise DomainError(f"--terms doit être ≥ 1 (reçu {args.terms})")
    weight, series = _expand_series(args)
    values = tuple(int(c) for c in series.coefficients[1:args.terms + 1])
    cache = CoefficientCacheFile(weight, values)
    if args.out is None:
        sys.stdout.write(cache.render())
    else:
        write_cache(args.out, cache)
    return EXIT_OK


# -------------------------------------------------------------------- tau

def cmd_tau(args: argparse.Namespace) -> int:
    """Affiche τ_w(n) exact pour un n ou un intervalle."""
    if args.n is not None:
        ns = [args.n]
    elif args.range is not None:
        start, stop = args.range
        ns = list(range(start, stop + 1))
    else:
        raise DomainError("--n ou --range est requis")
    if not ns or min(ns) < 1:
        raise DomainError("Les indices doivent être ≥ 1")
    table = table_registry.get_table(args.weight, max(ns))
    values = {n: table.tau(n) for n in ns}
    return _emit(args, "tau", {"weight": args.weight, "n": ns}, {"weight": args.weight, "values": values})


# ----------------------------------------------------------------- verify

def _suite_reports(suite: str, w: int, limit: int) -> List[ScanReport]:
    runners: Dict[str, Callable[[], ScanReport]] = {
        "congruence": lambda: congruence_check(w, limit),
        "hecke": lambda: hecke_suite(w, limit),
        "deligne": lambda: deligne_suite(w, limit),
        "odd-square": lambda: odd_square_check(limit),
        "multiplicative": lambda: multiplicativity_check(w, limit),
        "prime-power": lambda: prime_power_suite(w, limit),
        "golden": golden_table_check,
        "bernoulli": bernoulli_suite,
    }
    if suite != "all":
        return [runners[suite]()]
    reports = [
        congruence_check(w, limit),
        hecke_suite(w, max(1, isqrt(limit))),
        deligne_suite(w, limit),
        multiplicativity_check(w, limit),
        prime_power_suite(w, max(2, limit)),
        golden_table_check(),
        bernoulli_suite(),
    ]
    if w == 12:
        reports.append(odd_square_check(limit))
    return reports


def cmd_verify(args: argparse.Namespace) -> int:
    """Exécute une suite de vérification ; code 1 si une violation est trouvée."""
    reports = _suite_reports(args.suite, args.weight, args.limit)
    return _emit_reports(args, f"verify {args.suite}", reports)


# ------------------------------------------------------------------- scan

def _require(value: Optional[int], flag: str) -> int:
    if value is None:
        raise DomainError(f"{flag} est requis pour ce balayage")
    return value


def cmd_scan(args: argparse.Namespace) -> int:
    """Balayage sur les premiers ; --expect-empty exige une liste de témoins vide."""
    w, limit = args.weight, args.limit
    if args.kind == "lehmer":
        report = prime_scans.lehmer_scan(w, limit, args.block_size)
    elif args.kind == "residue":
        report = prime_scans.residue_density(w, _require(args.q, "--q"), _require(args.a, "--a"), limit,
                                             args.block_size)
    elif args.kind == "residue-distribution":
        report = prime_scans.residue_distribution(w, _require(args.q, "--q"), limit)
    elif args.kind == "signs":
        report = prime_scans.sign_stats(w, args.q or 1, args.a or 0, limit, args.block_size)
    elif args.kind == "values":
        report = prime_scans.value_set_count(w, limit)
    elif args.kind == "nonordinary":
        report = prime_scans.nonordinary_scan(w, limit, args.block_size)
    else:
        report = prime_scans.lacunarity_scan(_require(args.r, "--r"), limit)

    parameters = _parameters(args)
    passed = report.passed and not (args.expect_empty and report.witnesses)
    return _emit(args, f"scan {args.kind}", parameters, report.to_document(), passed)


# ------------------------------------------------------------------ dioph

def cmd_dioph(args: argparse.Namespace) -> int:
    """Élimination, courbes, points entiers, remontées et témoins."""
    action = args.action
    if action == "derive":
        t = _require(args.t, "--t")
        cubic = general_cubic(t)
        eliminated = eliminate(t)
        curve = to_weierstrass(cubic)
        invariants = curve_invariants(curve)
        result = {
            "t": t,
            "cubic": cubic.as_dict(),
            "cubic_text": str(cubic),
            "eliminated_agrees": eliminated == cubic,
            "weierstrass": dict(zip(("a1", "a2", "a3", "a4", "a6"), curve.coefficients())),
            "weierstrass_text": str(curve),
            "invariants": invariants.as_dict(),
            "singular": invariants.is_singular,
        }
        found = []
        if t in (2, -24):
            found = discrepancies([c for c in printed_claims_report() if f"t={t}" in c.claim])
        return _emit(args, "dioph derive", {"t": t}, result, eliminated == cubic, found)

    if action == "symbolic":
        outcome = eliminate_symbolic()
        return _emit(args, "dioph symbolic", {}, outcome, outcome.agrees)

    if action == "points":
        t = _require(args.t, "--t")
        bound = args.x_bound if args.x_bound is not None else settings.DEFAULT_X_BOUND
        points = integral_points(general_cubic(t), bound)
        return _emit(args, "dioph points", {"t": t, "x_bound": bound},
                     {"count": len(points), "points": points})

    if action == "backsub":
        t = _require(args.t, "--t")
        if args.x is None or args.y is None:
            raise DomainError("--x et --y sont requis pour backsub")
        record = back_substitute(t, args.x, args.y)
        return _emit(args, "dioph backsub", {"t": t, "x": args.x, "y": args.y}, record)

    p = _require(args.p, "--p")
    record = known_value_witness(args.weight, p)
    return _emit(args, "dioph witness", {"weight": args.weight, "p": p}, record, record.residual == 0)


def cmd_claims(args: argparse.Namespace) -> int:
    """Confronte toutes les valeurs imprimées vérifiables aux valeurs recalculées."""
    checks = bernoulli_claims() + printed_claims_report()
    result = {
        "claims": len(checks),
        "matches": sum(1 for c in checks if c.matches),
        "entries": [c.as_entry() for c in checks],
    }
    return _emit(args, "claims", {}, result, True, discrepancies(checks))


# ------------------------------------------------------------------ cache

def cmd_cache(args: argparse.Namespace) -> int:
    """Aller-retour d'un fichier de cache ou construction d'une table persistée."""
    if args.action == "roundtrip":
        if args.path is None:
            raise DomainError("--path est requis pour roundtrip")
        identical = cache_roundtrip(args.path)
        return _emit(args, "cache roundtrip", {"path": args.path}, {"identical": identical}, identical)
    order = _require(args.order, "--order")
    table = table_registry.get_table(args.weight, order)
    return _emit(args, "cache build", {"weight": args.weight, "order": order},
                 {"weight": table.weight, "order": table.order, "provenance": table.provenance,
                  "available": table_registry.available_orders()})


# ---------------------------------------------------------------- lseries

def cmd_lseries(args: argparse.Namespace) -> int:
    """Série de Dirichlet tronquée contre produit eulérien tronqué."""
    params = LSeriesParams(
        weight=args.weight, s=args.s, terms=args.terms,
        primes_bound=args.primes if args.primes is not None else args.terms,
        dps=args.dps if args.dps is not None else settings.WORKING_DPS,
    )
    comparison = lseries_comparison(params)
    passed = args.tolerance is None or comparison.difference < args.tolerance
    parameters = {"weight": params.weight, "s": params.s, "terms": params.terms,
                  "primes": params.primes_bound, "dps": params.dps, "tolerance": args.tolerance}
    return _emit(args, "lseries", parameters, comparison, passed)


# --------------------------------------------------------------- satotate

def cmd_satotate(args: argparse.Namespace) -> int:
    """Angles de Sato-Tate, somme R(x), comptage de points et produit N_p/p."""
    action = args.action
    if action == "histogram":
        histogram = st_histogram(args.weight, args.x, args.bins)
        passed = args.tolerance is None or histogram.within_tolerance(args.tolerance)
        return _emit(args, "satotate histogram",
                     {"weight": args.weight, "x": args.x, "bins": args.bins, "tolerance": args.tolerance},
                     histogram, passed)
    if action == "rsum":
        return _emit(args, "satotate rsum", {"weight": args.weight, "x": args.x},
                     {"R": r_sum(args.weight, args.x)})
    if action == "angle":
        p = _require(args.p, "--p")
        return _emit(args, "satotate angle", {"weight": args.weight, "p": p}, angle(args.weight, p))

    curve = printed_curve(args.t)
    if action == "pointcount":
        p = _require(args.p, "--p")
        count = ec_point_count(curve, p)
        return _emit(args, "satotate pointcount", {"t": args.t, "p": p},
                     {"curve": str(curve), "N_p": count, "hasse_defect": p + 1 - count})
    product = bsd_product(curve, args.x)
    return _emit(args, "satotate bsd", {"t": args.t, "x": args.x}, {"curve": str(curve), **vars(product)})


# ----------------------------------------------------------------- parser

def _weight(parser: argparse.ArgumentParser, default: Optional[int] = 12) -> None:
    parser.add_argument("--weight", type=int, default=default, choices=SUPPORTED_WEIGHTS,
                        help="Poids de la forme parabolique")


def build_parser() -> argparse.ArgumentParser:
    """Construit l'analyseur de la ligne de commande."""
    parser = ArgumentParser(prog="tauscope", description=settings.APP_DESCRIPTION)
    parser.add_argument("--cache-dir", type=Path, default=None,
                        help="Répertoire du cache (sinon CUSPFORM_CACHE, sinon ./cache)")
    parser.add_argument("--log-level", default=None, help="Niveau de journalisation")
    parser.add_argument("--log-file", type=Path, default=None, help="Fichier de log JSON rotatif")
    parser.add_argument("--out", type=Path, default=None, help="Fichier de sortie (sinon stdout)")
    parser.add_argument("--strict", action="store_true",
                        help="Les écarts avec les valeurs imprimées font échouer la commande")
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.APP_VERSION}")
    sub = parser.add_subparsers(dest="command", parser_class=ArgumentParser)
    sub.required = True

    p = sub.add_parser("expand", help="Développe une série q")
    p.add_argument("kind", choices=("eta", "eta-power", "eta-product", "eisenstein", "jacobi"))
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--r", type=int, default=None, help="Exposant de la puissance de êta")
    p.add_argument("--spec", default=None, help="Produit êta, ex. 1:2,11:2")
    p.add_argument("--w", type=int, default=None, help="Poids de la série d'Eisenstein")
    p.add_argument("--dense", action="store_true", help="Contrôle par le produit dense")
    p.set_defaults(handler=cmd_expand)

    p = sub.add_parser("tau", help="Valeurs exactes τ_w(n)")
    _weight(p)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--range", type=int, nargs=2, metavar=("DEBUT", "FIN"), default=None)
    p.set_defaults(handler=cmd_tau)

    p = sub.add_parser("verify", help="Suites de vérification")
    p.add_argument("suite", choices=VERIFY_SUITES)
    _weight(p)
    p.add_argument("--limit", type=int, default=1000)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("scan", help="Balayages sur les premiers")
    p.add_argument("kind", choices=SCAN_KINDS)
    _weight(p)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--block-size", type=int, default=None)
    p.add_argument("--expect-empty", action="store_true")
    p.set_defaults(handler=cmd_scan)

    p = sub.add_parser("dioph", help="Pipeline diophantien")
    p.add_argument("action", choices=("derive", "symbolic", "points", "backsub", "witness"))
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--x-bound", type=int, default=None)
    p.add_argument("--x", type=_fraction, default=None)
    p.add_argument("--y", type=_fraction, default=None)
    _weight(p)
    p.add_argument("--p", type=int, default=None)
    p.set_defaults(handler=cmd_dioph)

    p = sub.add_parser("claims", help="Confrontation des valeurs imprimées")
    p.set_defaults(handler=cmd_claims)

    p = sub.add_parser("cache", help="Fichiers de cache de coefficients")
    p.add_argument("action", choices=("roundtrip", "build"))
    p.add_argument("--path", type=Path, default=None)
    _weight(p)
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(handler=cmd_cache)

    p = sub.add_parser("lseries", help="Série de Dirichlet et produit eulérien")
    _weight(p)
    p.add_argument("--s", type=_fraction, required=True)
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--primes", type=int, default=None)
    p.add_argument("--dps", type=int, default=None)
    p.add_argument("--tolerance", type=float, default=None)
    p.set_defaults(handler=cmd_lseries)

    p = sub.add_parser("satotate", help="Statistiques de Sato-Tate et comptage de points")
    p.add_argument("action", choices=("histogram", "rsum", "angle", "pointcount", "bsd"))
    _weight(p)
    p.add_argument("--x", type=int, default=1000)
    p.add_argument("--bins", type=int, default=20)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--t", type=int, default=2, help="Modèle imprimé (2 ou -24)")
    p.add_argument("--tolerance", type=float, default=None)
    p.set_defaults(handler=cmd_satotate)
    return parser


@handle_cli_errors
def _run(args: argparse.Namespace) -> int:
    setup_logging(level=args.log_level, log_file=args.log_file)
    current = load_settings()
    cache_dir = args.cache_dir if args.cache_dir is not None else current.CACHE_DIR
    table_registry.configure(cache_dir, persist=True)
    logger.debug("Commande", data={"command": args.command})
    return args.handler(args)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Point d'entrée ; renvoie le code de sortie."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageExit as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"{parser.prog}: erreur: {exc}\n")
        return EXIT_USAGE
    return _run(args)


__all__ = ["build_parser", "main"]
