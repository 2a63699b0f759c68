"""
Registre des tables de coefficients
-----------------------------------
Découverte des tables en cache disque, chargement à la demande,
mémorisation en mémoire et persistance après construction. Une table
d'ordre supérieur sert toute demande d'ordre inférieur.
"""

import threading
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

from ..cli.cache import CoefficientCacheFile, read_cache, read_cache_header, write_cache
from ..core.config import SUPPORTED_WEIGHTS, Paths
from ..core.exceptions import CacheFormatError
from ..core.logging_config import get_logger
from .tables import PROVENANCE_CACHE, CuspFormId, CuspFormTable, tau_table

# Logger pour ce module
logger = get_logger("tauscope.forms.registry")


class TableRegistry:
    """
    Registre central des tables τ_w.

    Gère la découverte des fichiers de cache, le chargement et la
    mémorisation des tables pour qu'une table ne soit construite qu'une
    fois par processus.
    """

    def __init__(self, cache_dir: Optional[Path] = None, persist: bool = False):
        """
        Initialise le registre.

        Args:
            cache_dir: Répertoire du cache disque (None : pas de cache disque)
            persist: Écrire les tables construites dans le cache disque
        """
        self.cache_dir: Optional[Path] = Path(cache_dir) if cache_dir else None
        self.persist = persist
        self.registry: Dict[int, Dict[str, object]] = {}
        self.loaded_tables: Dict[int, CuspFormTable] = {}
        self._lock = threading.RLock()
        self._discover_tables()

    def configure(self, cache_dir: Optional[Path], persist: bool) -> None:
        """Change de répertoire de cache, vide la mémoire et relance la découverte."""
        with self._lock:
            self.cache_dir = Path(cache_dir) if cache_dir else None
            self.persist = persist
            self.registry.clear()
            self.loaded_tables.clear()
            self._discover_tables()

    def _discover_tables(self) -> None:
        """Recense les fichiers de cache présents (en-têtes seulement)."""
        if self.cache_dir is None:
            return
        if not self.cache_dir.exists():
            logger.debug(f"Répertoire de cache absent: {self.cache_dir}")
            return

        for weight in SUPPORTED_WEIGHTS:
            path = Paths.cache_file(self.cache_dir, weight)
            if not path.exists():
                continue
            try:
                file_weight, order = read_cache_header(path)
            except CacheFormatError as exc:
                logger.warning(f"Cache ignoré ({path}): {exc.message}")
                continue
            if file_weight != Fraction(weight) or order < 1:
                logger.warning(f"Cache ignoré ({path}): en-tête incohérent")
                continue
            self.registry[weight] = {"path": path, "order": order}

        logger.info(
            "Découverte des tables en cache terminée",
            data={"cache_dir": str(self.cache_dir),
                  "tables": {w: e["order"] for w, e in self.registry.items()}},
        )

    def available_orders(self) -> Dict[int, int]:
        """Ordre disponible par poids (mémoire ou disque)."""
        orders = {w: e["order"] for w, e in self.registry.items()}
        for w, table in self.loaded_tables.items():
            orders[w] = max(orders.get(w, 0), table.order)
        return dict(sorted(orders.items()))

    def get_table(self, weight: int, order: int) -> CuspFormTable:
        """
        Renvoie une table τ_w d'ordre au moins ``order``.

        Ordre de recherche : mémoire, cache disque, construction (puis
        persistance si demandée).

        Args:
            weight: Poids supporté
            order: Ordre minimal requis

        Returns:
            Table d'ordre ≥ order
        """
        CuspFormId.of(weight)
        with self._lock:
            table = self.loaded_tables.get(weight)
            if table is not None and table.order >= order:
                return table

            table = self._load_from_disk(weight, order)
            if table is None:
                table = tau_table(weight, order)
                if self.persist and self.cache_dir is not None:
                    self._save(table)

            self.loaded_tables[weight] = table
            return table

    def _load_from_disk(self, weight: int, order: int) -> Optional[CuspFormTable]:
        entry = self.registry.get(weight)
        if entry is None or entry["order"] < order:
            return None
        try:
            cache = read_cache(entry["path"])
            table = CuspFormTable(CuspFormId.of(weight), cache.values, PROVENANCE_CACHE)
        except CacheFormatError as exc:
            logger.warning(f"Cache illisible pour w = {weight}: {exc.message}")
            return None
        logger.info("Table chargée depuis le cache", data={"weight": weight, "order": table.order})
        return table

    def _save(self, table: CuspFormTable) -> None:
        path = Paths.cache_file(self.cache_dir, table.weight)
        write_cache(path, CoefficientCacheFile(Fraction(table.weight), table.coefficients))
        self.registry[table.weight] = {"path": path, "order": table.order}
        logger.info("Table persistée", data={"weight": table.weight, "order": table.order, "path": str(path)})

    def clear_cache(self, weight: Optional[int] = None) -> None:
        """Vide le cache mémoire (tout, ou un seul poids)."""
        with self._lock:
            if weight is None:
                self.loaded_tables.clear()
                logger.info("Cache mémoire des tables vidé")
            else:
                self.loaded_tables.pop(weight, None)

    def weights(self) -> List[int]:
        return sorted(set(self.registry) | set(self.loaded_tables))


# Instance globale du registre (sans cache disque tant que la CLI ne l'a pas configuré)
table_registry = TableRegistry()


def get_table(weight: int, order: int) -> CuspFormTable:
    """Raccourci vers le registre global."""
    return table_registry.get_table(weight, order)


__all__ = ["TableRegistry", "table_registry", "get_table"]
