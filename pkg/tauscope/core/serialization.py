"""
Sérialisation JSON déterministe
-------------------------------
Conversion des objets du domaine (grands entiers, rationnels, réels
mpmath, tableaux numpy, modèles pydantic) en arbre compatible JSON, puis
rendu orjson avec clés triées.
"""

import dataclasses
from fractions import Fraction
from pathlib import Path
from typing import Any

import mpmath
import numpy as np
import orjson
from pydantic import BaseModel

# orjson refuse les entiers hors de l'intervalle 64 bits
_INT64_MIN = -(2 ** 63)
_INT64_MAX = 2 ** 63 - 1


def render_fraction(value: Fraction) -> str:
    """Rend un rationnel sous la forme 'n' ou 'n/d'."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def to_jsonable(obj: Any) -> Any:
    """
    Convertit récursivement un objet en arbre compatible JSON.

    Les entiers hors 64 bits deviennent des chaînes décimales, les rationnels
    des chaînes 'n/d', les réels mpmath des chaînes décimales.
    """
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        value = int(obj)
        return value if _INT64_MIN <= value <= _INT64_MAX else str(value)
    if isinstance(obj, Fraction):
        return render_fraction(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, mpmath.mpf):
        return mpmath.nstr(obj, mpmath.mp.dps)
    if isinstance(obj, BaseModel):
        return to_jsonable(obj.model_dump())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, Path):
        return str(obj)
    return str(obj)


def dumps(obj: Any, pretty: bool = True) -> bytes:
    """Sérialise un objet en JSON à clés triées."""
    option = orjson.OPT_SORT_KEYS
    if pretty:
        option |= orjson.OPT_INDENT_2
    return orjson.dumps(to_jsonable(obj), option=option)


__all__ = ["render_fraction", "to_jsonable", "dumps"]
