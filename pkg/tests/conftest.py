"""
Fixtures communes aux tests de TAUSCOPE
"""

import logging

import pytest

from tauscope.forms.registry import table_registry


@pytest.fixture(autouse=True)
def registre_isole():
    """Remet le registre global sans cache disque et retire les handlers installés par la CLI."""
    yield
    table_registry.clear_cache()
    table_registry.configure(None, persist=False)
    root = logging.getLogger()
    for handler in root.handlers[:]:
        if getattr(handler, "_tauscope", False):
            root.removeHandler(handler)
            handler.close()


@pytest.fixture
def cache_dir(tmp_path):
    """Répertoire de cache vide propre au test."""
    path = tmp_path / "cache"
    path.mkdir()
    return path
