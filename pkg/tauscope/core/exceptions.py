"""
Gestion des exceptions de TAUSCOPE
----------------------------------
Hiérarchie d'exceptions personnalisées, modèle standardisé des erreurs
et décorateur convertissant les exceptions en codes de sortie pour la
ligne de commande (0 = succès, 1 = violation ou erreur interne,
2 = erreur d'usage ou précondition non respectée).
"""

import functools
import sys
import traceback
from datetime import datetime, timezone
from typing import Any, Callable, Dict, List, Optional

from pydantic import BaseModel, Field

from .logging_config import get_logger
from .serialization import to_jsonable

# Logger pour ce module
logger = get_logger("tauscope.core.exceptions")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


# Modèles Pydantic pour la structure des erreurs
class ErrorDetail(BaseModel):
    """Détail d'une erreur spécifique."""
    msg: str
    type: str
    ctx: Optional[Dict[str, Any]] = None


class ErrorResponse(BaseModel):
    """Représentation standardisée d'une erreur."""
    status: str = "error"
    exit_code: int
    code: str
    message: str
    details: List[ErrorDetail] = Field(default_factory=list)
    timestamp: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))


# Hiérarchie d'exceptions personnalisées
class TauscopeError(Exception):
    """Classe de base pour toutes les exceptions spécifiques à l'application."""

    def __init__(
        self,
        message: str,
        exit_code: int = EXIT_FAILURE,
        details: Optional[List[Dict[str, Any]]] = None,
        code: Optional[str] = None,
    ):
        self.message = message
        self.exit_code = exit_code
        self.details = details or []
        self.code = code or self.__class__.__name__
        super().__init__(self.message)

    def to_response(self) -> ErrorResponse:
        """Convertit l'exception en réponse d'erreur standardisée."""
        return ErrorResponse(
            exit_code=self.exit_code,
            code=self.code,
            message=self.message,
            details=[
                ErrorDetail(
                    msg=str(d.get("msg", "")),
                    type=str(d.get("type", "detail")),
                    ctx=to_jsonable({k: v for k, v in d.items() if k not in ("msg", "type")}) or None,
                )
                for d in self.details
            ],
        )


class UsageError(TauscopeError):
    """Famille des erreurs d'usage : paramètres hors domaine (code de sortie 2)."""

    default_message = "Paramètre invalide"
    default_code = "USAGE_ERROR"

    def __init__(
        self,
        message: Optional[str] = None,
        details: Optional[List[Dict[str, Any]]] = None,
        code: Optional[str] = None,
    ):
        super().__init__(
            message=message or self.default_message,
            exit_code=EXIT_USAGE,
            details=details,
            code=code or self.default_code,
        )


class VerificationError(TauscopeError):
    """Famille des erreurs de vérification et des erreurs internes (code de sortie 1)."""

    default_message = "Échec de vérification"
    default_code = "VERIFICATION_ERROR"

    def __init__(
        self,
        message: Optional[str] = None,
        details: Optional[List[Dict[str, Any]]] = None,
        code: Optional[str] = None,
    ):
        super().__init__(
            message=message or self.default_message,
            exit_code=EXIT_FAILURE,
            details=details,
            code=code or self.default_code,
        )


class DomainError(UsageError):
    """Argument hors du domaine de définition d'une opération."""
    default_message = "Argument hors du domaine de l'opération"
    default_code = "DOMAIN_ERROR"


class UnsupportedWeightError(UsageError):
    """Poids de forme parabolique non supporté."""
    default_message = "Poids non supporté (poids admis : 12, 16, 18, 20, 22, 26)"
    default_code = "UNSUPPORTED_WEIGHT"


class TruncationError(UsageError):
    """Ordre de troncature insuffisant pour l'opération demandée."""
    default_message = "Ordre de troncature insuffisant"
    default_code = "TRUNCATION_ERROR"


class NegativeExponentError(UsageError):
    """Exposant négatif dans un produit êta (quotients non supportés)."""
    default_message = "Les exposants négatifs des produits êta ne sont pas supportés"
    default_code = "NEGATIVE_EXPONENT"


class NotPrimeError(UsageError):
    """Un nombre premier était attendu."""
    default_message = "L'argument doit être un nombre premier"
    default_code = "NOT_PRIME"


class ConvergenceError(UsageError):
    """Point d'évaluation hors du domaine de convergence."""
    default_message = "Point d'évaluation hors du domaine de convergence"
    default_code = "CONVERGENCE_ERROR"


class BadReductionError(UsageError):
    """Premier de mauvaise réduction pour la courbe considérée."""
    default_message = "Le premier divise le discriminant ou un dénominateur de la courbe"
    default_code = "BAD_REDUCTION"


class CurveShapeError(UsageError):
    """Cubique n'ayant pas la forme attendue."""
    default_message = "La cubique n'a pas la forme attendue"
    default_code = "CURVE_SHAPE"


class CacheFormatError(UsageError):
    """Fichier de cache de coefficients mal formé."""
    default_message = "Fichier de cache mal formé"
    default_code = "CACHE_FORMAT"

    def __init__(
        self,
        message: Optional[str] = None,
        line: Optional[int] = None,
        details: Optional[List[Dict[str, Any]]] = None,
        code: Optional[str] = None,
    ):
        self.line = line
        if line is not None:
            message = f"{message or self.default_message} (ligne {line})"
            details = details or [{"msg": "ligne fautive", "type": "line", "line": line}]
        super().__init__(message=message, details=details, code=code)


class FactorizationEffortError(VerificationError):
    """La factorisation a dépassé la borne d'effort configurée."""
    default_message = "Borne d'effort de factorisation dépassée"
    default_code = "FACTORIZATION_EFFORT"

    def __init__(
        self,
        message: Optional[str] = None,
        partial: Any = None,
        cofactor: Optional[int] = None,
        details: Optional[List[Dict[str, Any]]] = None,
    ):
        self.partial = partial
        self.cofactor = cofactor
        super().__init__(message=message, details=details)


class SingularCurveError(VerificationError):
    """Courbe singulière (discriminant nul)."""
    default_message = "La courbe est singulière (Δ = 0)"
    default_code = "SINGULAR_CURVE"


class DegenerateEliminationError(VerificationError):
    """Élimination dégénérée (résultant identiquement nul ou de forme inattendue)."""
    default_message = "Élimination dégénérée"
    default_code = "DEGENERATE_ELIMINATION"


class PointNotOnCurveError(VerificationError):
    """Le point fourni ne vérifie pas l'équation de la cubique."""
    default_message = "Le point n'appartient pas à la cubique"
    default_code = "POINT_NOT_ON_CURVE"


class BoundViolationError(VerificationError):
    """Violation de la borne de Deligne (indique une table erronée)."""
    default_message = "Violation de la borne de Deligne"
    default_code = "BOUND_VIOLATION"


class VanishingFactorError(VerificationError):
    """Facteur eulérien local nul."""
    default_message = "Facteur local nul dans le produit eulérien"
    default_code = "VANISHING_FACTOR"


class IntegralityError(VerificationError):
    """Une quantité supposée entière ne l'est pas."""
    default_message = "Coefficient ou quotient non entier"
    default_code = "INTEGRALITY_ERROR"


class ConfigurationError(VerificationError):
    """Erreur de configuration de l'application."""
    default_message = "Erreur de configuration de l'application"
    default_code = "CONFIGURATION_ERROR"


def report_error(exc: TauscopeError) -> ErrorResponse:
    """
    Journalise une exception applicative et construit la réponse standardisée.

    Args:
        exc: Exception applicative

    Returns:
        Réponse d'erreur standardisée
    """
    response = exc.to_response()
    log = logger.warning if exc.exit_code == EXIT_USAGE else logger.error
    log(
        f"{exc.code}: {exc.message}",
        data={"exit_code": exc.exit_code, "details": exc.details},
    )
    return response


def handle_cli_errors(func: Callable[..., int]) -> Callable[..., int]:
    """
    Décorateur convertissant les exceptions d'une commande en code de sortie.

    Les exceptions applicatives sont écrites sur la sortie d'erreur au format
    standardisé ; toute autre exception est journalisée avec sa trace et
    produit le code de sortie 1.
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> int:
        try:
            return func(*args, **kwargs)
        except TauscopeError as exc:
            response = report_error(exc)
            sys.stderr.write(response.model_dump_json() + "\n")
            return exc.exit_code
        except Exception as exc:  # noqa: BLE001
            logger.error(
                f"Erreur interne non gérée: {exc}",
                data={"traceback": traceback.format_exc()},
            )
            sys.stderr.write(f"Erreur interne: {exc}\n")
            return EXIT_FAILURE

    return wrapper
