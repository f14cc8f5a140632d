"""Shared result type for mode-enumeration queries."""

from __future__ import annotations

from typing import NamedTuple


class ModesResult(NamedTuple):
    """Answer to a modes query: the top multiplicity and every symbol reaching it.

    ``modes`` is sorted ascending by symbol id so results compare by equality.
    """

    multiplicity: int
    modes: tuple[int, ...]
