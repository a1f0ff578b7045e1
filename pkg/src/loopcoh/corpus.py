"""Bundled Cayley tables of small loops (order at most 6)."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .loops import FiniteLoop, check_loop

__all__ = ["corpus", "corpus_entries"]


@lru_cache(maxsize=1)
def corpus_entries() -> tuple[dict, ...]:
    text = resources.files("loopcoh").joinpath("data/loops.json").read_text()
    return tuple(json.loads(text)["loops"])


def corpus() -> dict[str, FiniteLoop]:
    """Name to loop, in file order."""
    return {e["name"]: check_loop(e["rows"]) for e in corpus_entries()}
