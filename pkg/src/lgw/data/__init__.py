"""Shipped sample lexicons, grammars and the abbreviation list."""

from __future__ import annotations

from functools import lru_cache
from importlib.resources import files

GRAMMAR_NAMES = (
    "ReconheceFormasDeTratamento",
    "ReconheceFormasDeTratamentoEtiquetaAntes",
    "ReconheceNomesCompostos",
    "Preposicao",
    "Abreviacoes",
)

LEXICON_NAMES = ("portugues", "ingles")


def _root():
    return files(__name__)


def grammar_text(name: str) -> str:
    return (_root() / "grammars" / f"{name}.lg").read_text(encoding="utf-8")


def lexicon_text(name: str) -> str:
    return (_root() / "lexicons" / f"{name}.dic").read_text(encoding="utf-8")


@lru_cache(maxsize=1)
def default_abbreviations() -> frozenset:
    text = (_root() / "abbreviations.txt").read_text(encoding="utf-8")
    return frozenset(
        line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")
    )
