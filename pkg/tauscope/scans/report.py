"""
Rapports de vérification et de balayage
---------------------------------------
Modèle ``ScanReport`` : type de balayage, paramètres exacts, compteurs,
témoins ou violations, annotations asymptotiques, écarts avec les valeurs
imprimées, durée, et empreinte SHA-256 des entrées (indépendante de la
durée et du découpage interne).
"""

import hashlib
import time
from contextlib import contextmanager
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional

from pydantic import BaseModel, Field

from ..core.serialization import dumps, to_jsonable


def input_digest(kind: str, weight: Optional[int], bound: int, parameters: Dict[str, Any]) -> str:
    """Empreinte SHA-256 du JSON canonique (clés triées) des entrées."""
    canonical = dumps(
        {"kind": kind, "weight": weight, "bound": bound, "parameters": parameters},
        pretty=False,
    )
    return hashlib.sha256(canonical).hexdigest()


def ratio_entry(value: Fraction) -> Dict[str, str]:
    """Rapport exact et rendu décimal à 6 chiffres (arrondi au plus proche)."""
    scaled = round(value * 10 ** 6)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    return {
        "exact": f"{value.numerator}/{value.denominator}",
        "decimal": f"{sign}{scaled // 10 ** 6}.{scaled % 10 ** 6:06d}",
    }


class ScanReport(BaseModel):
    """Résultat structuré d'un balayage ou d'une suite de vérification."""

    kind: str
    weight: Optional[int] = None
    bound: int
    parameters: Dict[str, Any] = Field(default_factory=dict)
    counters: Dict[str, Any] = Field(default_factory=dict)
    witnesses: List[Any] = Field(default_factory=list)
    violations: List[Dict[str, Any]] = Field(default_factory=list)
    annotations: Dict[str, Any] = Field(default_factory=dict)
    discrepancies: List[Dict[str, Any]] = Field(default_factory=list)
    elapsed_seconds: float = 0.0
    digest: str = ""

    @classmethod
    def build(
        cls,
        kind: str,
        weight: Optional[int],
        bound: int,
        parameters: Optional[Dict[str, Any]] = None,
        **fields: Any,
    ) -> "ScanReport":
        """Construit un rapport et calcule son empreinte."""
        parameters = to_jsonable(parameters or {})
        return cls(
            kind=kind,
            weight=weight,
            bound=bound,
            parameters=parameters,
            digest=input_digest(kind, weight, bound, parameters),
            **fields,
        )

    @property
    def passed(self) -> bool:
        return not self.violations

    def replay_digest(self) -> str:
        """Recalcule l'empreinte à partir des paramètres enregistrés."""
        return input_digest(self.kind, self.weight, self.bound, self.parameters)

    def to_document(self) -> Dict[str, Any]:
        return to_jsonable(self.model_dump())


class Stopwatch:
    """Chronomètre simple pour renseigner ``elapsed_seconds``."""

    def __init__(self):
        self.elapsed = 0.0


@contextmanager
def timed() -> Iterator[Stopwatch]:
    watch = Stopwatch()
    started = time.perf_counter()
    try:
        yield watch
    finally:
        watch.elapsed = round(time.perf_counter() - started, 6)


__all__ = ["ScanReport", "input_digest", "ratio_entry", "timed"]
