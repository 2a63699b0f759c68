"""
Confrontation des valeurs imprimées aux valeurs calculées
---------------------------------------------------------
Une valeur publiée est traitée comme une affirmation à vérifier : chaque
comparaison produit une entrée de rapport, « match » ou « paper-discrepancy ».
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, computed_field

from .config import DISCREPANCY_KIND
from .logging_config import get_logger
from .serialization import to_jsonable

# Logger pour ce module
logger = get_logger("tauscope.core.claims")


class ClaimCheck(BaseModel):
    """Résultat de la comparaison d'une valeur imprimée avec la valeur recalculée."""

    model_config = ConfigDict(frozen=True)

    claim: str
    source: str
    printed: Any
    computed: Any
    note: Optional[str] = None

    @computed_field
    @property
    def matches(self) -> bool:
        return to_jsonable(self.printed) == to_jsonable(self.computed)

    @computed_field
    @property
    def kind(self) -> str:
        return "match" if self.matches else DISCREPANCY_KIND

    def as_entry(self) -> Dict[str, Any]:
        """Entrée de rapport sérialisable."""
        return to_jsonable({
            "kind": self.kind,
            "claim": self.claim,
            "source": self.source,
            "printed": self.printed,
            "computed": self.computed,
            "note": self.note,
        })


def check_claim(
    claim: str,
    source: str,
    printed: Any,
    computed: Any,
    note: Optional[str] = None,
) -> ClaimCheck:
    """
    Compare une valeur imprimée à la valeur calculée et journalise les écarts.

    Args:
        claim: Nom court de l'affirmation vérifiée
        source: Emplacement de la valeur imprimée
        printed: Valeur imprimée
        computed: Valeur recalculée
        note: Commentaire optionnel

    Returns:
        Résultat de la comparaison
    """
    check = ClaimCheck(claim=claim, source=source, printed=printed, computed=computed, note=note)
    if not check.matches:
        logger.warning(
            f"Écart avec la valeur imprimée: {claim}",
            data={"source": source, "printed": printed, "computed": computed},
        )
    return check


def discrepancies(checks: List[ClaimCheck]) -> List[Dict[str, Any]]:
    """Entrées « paper-discrepancy » d'une liste de comparaisons, dans l'ordre."""
    return [c.as_entry() for c in checks if not c.matches]


__all__ = ["ClaimCheck", "check_claim", "discrepancies"]
