"""
Fichiers de cache de coefficients
---------------------------------
Format texte décimal : une ligne d'en-tête « poids,ordre » puis les lignes
« n,valeur » pour n = 1..ordre, terminées par un saut de ligne. Le poids
s'écrit « n » ou « n/d ». L'écriture passe par un fichier temporaire
renommé atomiquement.
"""

import os
import re
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Tuple, Union

from ..core.exceptions import CacheFormatError
from ..core.logging_config import get_logger
from ..core.serialization import render_fraction

# Logger pour ce module
logger = get_logger("tauscope.cli.cache")

_INTEGER = re.compile(r"-?\d+")
_WEIGHT = re.compile(r"-?\d+(/\d+)?")


@dataclass(frozen=True)
class CoefficientCacheFile:
    """Contenu d'un fichier de cache : poids et valeurs a(1..ordre)."""
    weight: Fraction
    values: Tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.values)

    def render(self) -> str:
        """Texte exact du fichier."""
        lines = [f"{render_fraction(self.weight)},{self.order}"]
        lines.extend(f"{n},{v}" for n, v in enumerate(self.values, start=1))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "CoefficientCacheFile":
        """
        Lit le contenu d'un fichier de cache.

        Raises:
            CacheFormatError: Avec le numéro de la première ligne fautive
        """
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if not lines:
            raise CacheFormatError("Fichier vide", line=1)

        header = lines[0].split(",")
        if len(header) != 2 or not _WEIGHT.fullmatch(header[0]) or not _INTEGER.fullmatch(header[1]):
            raise CacheFormatError(f"En-tête invalide: {lines[0]!r}", line=1)
        weight = Fraction(header[0])
        order = int(header[1])
        if order < 0:
            raise CacheFormatError(f"Ordre négatif: {order}", line=1)

        values = []
        for lineno, line in enumerate(lines[1:], start=2):
            expected = lineno - 1
            if expected > order:
                raise CacheFormatError(f"Ligne en trop au-delà de l'ordre {order}", line=lineno)
            fields = line.split(",")
            if len(fields) != 2 or not _INTEGER.fullmatch(fields[0]) or not _INTEGER.fullmatch(fields[1]):
                raise CacheFormatError(f"Ligne invalide: {line!r}", line=lineno)
            if int(fields[0]) != expected:
                raise CacheFormatError(
                    f"Indice {fields[0]} inattendu (attendu {expected})", line=lineno
                )
            values.append(int(fields[1]))

        if len(values) != order:
            raise CacheFormatError(
                f"Fichier tronqué: {len(values)} lignes pour un ordre {order}",
                line=len(lines) + 1,
            )
        return cls(weight, tuple(values))


def write_cache(path: Union[str, Path], cache: CoefficientCacheFile) -> Path:
    """
    Écrit un fichier de cache via un fichier temporaire renommé en place.

    Returns:
        Chemin écrit
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="") as handle:
            handle.write(cache.render())
        os.replace(tmp_name, path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    logger.debug("Cache écrit", data={"path": str(path), "order": cache.order})
    return path


def read_cache(path: Union[str, Path]) -> CoefficientCacheFile:
    """Lit un fichier de cache."""
    text = Path(path).read_text(encoding="ascii")
    return CoefficientCacheFile.parse(text)


def read_cache_header(path: Union[str, Path]) -> Tuple[Fraction, int]:
    """Lit uniquement l'en-tête (poids, ordre) d'un fichier de cache."""
    with open(path, "r", encoding="ascii", newline="") as handle:
        first = handle.readline().rstrip("\n")
    header = first.split(",")
    if len(header) != 2 or not _WEIGHT.fullmatch(header[0]) or not _INTEGER.fullmatch(header[1]):
        raise CacheFormatError(f"En-tête invalide: {first!r}", line=1)
    return Fraction(header[0]), int(header[1])


def cache_roundtrip(path: Union[str, Path]) -> bool:
    """
    Vérifie que lecture puis réécriture redonnent exactement les mêmes octets.

    Raises:
        CacheFormatError: Si le fichier est mal formé
    """
    original = Path(path).read_bytes()
    cache = CoefficientCacheFile.parse(original.decode("ascii"))
    identical = cache.render().encode("ascii") == original
    logger.info(
        "Aller-retour du cache",
        data={"path": str(path), "order": cache.order, "identical": identical},
    )
    return identical


__all__ = [
    "CoefficientCacheFile",
    "write_cache",
    "read_cache",
    "read_cache_header",
    "cache_roundtrip",
]
