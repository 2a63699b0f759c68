"""
Configuration centrale de TAUSCOPE
----------------------------------
Centralise tous les paramètres et constantes utilisés par la bibliothèque
et l'outil en ligne de commande : répertoires, journalisation, bornes de
calcul et données publiées servant de référence.
"""

from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from pydantic import AliasChoices, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


# Chemins principaux
class Paths:
    """Gestion des chemins de l'application."""
    # Répertoire par défaut du cache de coefficients (relatif au répertoire courant)
    DEFAULT_CACHE_DIR = Path("cache")

    @classmethod
    def cache_file(cls, cache_dir: Path, weight: int) -> Path:
        """Chemin du fichier de cache des coefficients τ_w pour un poids donné."""
        return Path(cache_dir) / f"tau_w{weight}.csv"


# Configuration de l'environnement
class Settings(BaseSettings):
    """Configuration paramétrable de l'application (variables d'environnement ou .env)."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        validate_assignment=True,
        extra="ignore",
        arbitrary_types_allowed=True,
    )

    # Informations sur l'application
    APP_NAME: str = "TAUSCOPE"
    APP_VERSION: str = "1.0.0"
    APP_DESCRIPTION: str = "Coefficients exacts des formes paraboliques de niveau 1 et vérifications associées"

    # Cache des coefficients
    CACHE_DIR: Path = Field(
        Paths.DEFAULT_CACHE_DIR,
        validation_alias=AliasChoices("CUSPFORM_CACHE", "CACHE_DIR"),
    )

    # Configuration des logs
    LOG_LEVEL: str = "INFO"
    LOG_FILE: Optional[Path] = None
    LOG_JSON: bool = False

    # Bornes de calcul
    FACTOR_EFFORT_BOUND: int = 10_000_000
    SPARSE_CUTOFF: int = 48
    SCAN_BLOCK_SIZE: int = 4096
    DEFAULT_X_BOUND: int = 1_000_000
    WORKING_DPS: int = 30

    # Constantes des annotations asymptotiques (jamais des assertions)
    ANNOTATION_C: Fraction = Fraction(1)
    ANNOTATION_EPSILON: Fraction = Fraction(0)

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, value: str) -> str:
        """Normalise le niveau de journalisation."""
        level = value.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Niveau de log inconnu: {value}")
        return level

    @field_validator("ANNOTATION_C", "ANNOTATION_EPSILON", mode="before")
    @classmethod
    def parse_fraction(cls, value) -> Fraction:
        """Accepte les rationnels écrits sous la forme '3/2' ou '0.5'."""
        return Fraction(str(value)) if not isinstance(value, Fraction) else value

    @model_validator(mode="after")
    def validate_bounds(self) -> "Settings":
        """Valide la cohérence des bornes de calcul."""
        if self.WORKING_DPS < 15:
            raise ValueError("WORKING_DPS doit être au moins 15 chiffres")
        for name in ("FACTOR_EFFORT_BOUND", "SCAN_BLOCK_SIZE", "DEFAULT_X_BOUND"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} doit être strictement positif")
        if self.SPARSE_CUTOFF < 0:
            raise ValueError("SPARSE_CUTOFF doit être positif ou nul")
        return self


def load_settings(**overrides) -> Settings:
    """
    Relit la configuration (environnement, .env et surcharges explicites).

    Raises:
        ConfigurationError: Si une valeur est invalide
    """
    from pydantic import ValidationError

    from .exceptions import ConfigurationError

    try:
        return Settings(**overrides)
    except ValidationError as exc:
        raise ConfigurationError(
            "Configuration invalide",
            details=[
                {"msg": err["msg"], "type": err["type"], "field": ".".join(str(p) for p in err["loc"])}
                for err in exc.errors()
            ],
        ) from exc


# Instance de configuration globale
settings = Settings()

# Poids supportés (formes paraboliques normalisées de dimension 1)
SUPPORTED_WEIGHTS: Tuple[int, ...] = (12, 16, 18, 20, 22, 26)

# Modules des congruences τ_w(n) ≡ σ_{w-1}(n)
CONGRUENCE_MODULI: Dict[int, int] = {
    12: 691,
    16: 3617,
    18: 43867,
    20: 617,
    22: 593,
    26: 657931,
}

# Listes de premiers exceptionnels publiées (informatives, non vérifiées).
# Le point d'interrogation publié pour 59 est conservé tel quel.
EXCEPTIONAL_PRIMES: Dict[int, List[str]] = {
    12: ["2", "3", "5", "7", "23", "691"],
    16: ["2", "3", "5", "7", "11", "31", "59?", "3617"],
    18: ["2", "3", "5", "7", "11", "13", "43867"],
    20: ["2", "3", "5", "7", "11", "13", "283", "617"],
    22: ["2", "3", "5", "7", "13", "131", "593"],
    26: ["2", "3", "5", "7", "11", "17", "657931"],
}

# Table publiée de τ_w(p) pour p ∈ {2, 3, 5, 7}
PUBLISHED_TAU_TABLE: Dict[int, Dict[int, int]] = {
    12: {2: -24, 3: 252, 5: 4830, 7: -16744},
    16: {2: 216, 3: -3348, 5: 52110, 7: 2822456},
    18: {2: -528, 3: -4284, 5: -1025850, 7: 3225992},
    20: {2: 456, 3: 50652, 5: -2377410, 7: -16917544},
    22: {2: -288, 3: -128844, 5: 21640950, 7: -768078808},
    26: {2: -48, 3: -195804, 5: -741989850, 7: 39080597192},
}

# Huit premiers coefficients publiés de Δ_12
PUBLISHED_DELTA_COEFFICIENTS: Tuple[int, ...] = (1, -24, 252, -1472, 4830, -6048, -16744, 84480)

# Nombres de Bernoulli tels qu'imprimés dans le développement de x/(e^x - 1)
PRINTED_BERNOULLI: Dict[int, Fraction] = {
    0: Fraction(1),
    1: Fraction(-1, 2),
    2: Fraction(1, 6),
    4: Fraction(-1, 30),
    6: Fraction(1, 42),
    8: Fraction(-1, 30),
    10: Fraction(1, 65),
}

# Type de l'entrée de rapport signalant un écart avec une valeur imprimée
DISCREPANCY_KIND = "paper-discrepancy"

# Exportation des objets principaux
__all__ = [
    "settings",
    "Settings",
    "Paths",
    "load_settings",
    "SUPPORTED_WEIGHTS",
    "CONGRUENCE_MODULI",
    "EXCEPTIONAL_PRIMES",
    "PUBLISHED_TAU_TABLE",
    "PUBLISHED_DELTA_COEFFICIENTS",
    "PRINTED_BERNOULLI",
    "DISCREPANCY_KIND",
]
