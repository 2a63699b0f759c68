"""
Documents de rapport de la ligne de commande
--------------------------------------------
Chaque commande produit un ``ReportDocument`` : outil, version, commande,
paramètres exacts, empreinte des paramètres, résultat et écarts avec les
valeurs imprimées. Sérialisation JSON à clés triées (orjson).
"""

import hashlib
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from ..core.config import settings
from ..core.logging_config import get_logger
from ..core.serialization import dumps, to_jsonable

# Logger pour ce module
logger = get_logger("tauscope.cli.documents")


def parameters_digest(command: str, parameters: Dict[str, Any]) -> str:
    """Empreinte SHA-256 de la commande et de ses paramètres (JSON canonique)."""
    canonical = dumps({"command": command, "parameters": parameters}, pretty=False)
    return hashlib.sha256(canonical).hexdigest()


class ReportDocument(BaseModel):
    """Document produit par une commande."""

    tool: str = Field(default_factory=lambda: settings.APP_NAME.lower())
    version: str = Field(default_factory=lambda: settings.APP_VERSION)
    command: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    digest: str = ""
    passed: bool = True
    result: Any = None
    discrepancies: List[Dict[str, Any]] = Field(default_factory=list)

    @classmethod
    def build(
        cls,
        command: str,
        parameters: Dict[str, Any],
        result: Any,
        passed: bool = True,
        discrepancies: Optional[List[Dict[str, Any]]] = None,
    ) -> "ReportDocument":
        parameters = to_jsonable(parameters)
        return cls(
            command=command,
            parameters=parameters,
            digest=parameters_digest(command, parameters),
            passed=passed,
            result=to_jsonable(result),
            discrepancies=to_jsonable(discrepancies or []),
        )

    def render(self) -> bytes:
        return dumps(self.model_dump()) + b"\n"

    def write(self, out: Optional[Path] = None) -> None:
        """Écrit le document dans ``out`` ou sur la sortie standard."""
        payload = self.render()
        if out is None:
            sys.stdout.write(payload.decode("utf-8"))
            sys.stdout.flush()
            return
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_bytes(payload)
        logger.info("Rapport écrit", data={"path": str(out), "command": self.command})


__all__ = ["ReportDocument", "parameters_digest"]
