"""Chord separated collections, plabic tilings and graphs, and fine zonotopal tilings of Z(n, 3)."""

from .separation import (
    chord_separated,
    crossing_witness,
    strongly_separated,
    surrounds,
    weakly_separated,
)
from .collection import SeparatedCollection, complete_to_maximal, purity_report

__version__ = "0.1.0"

__all__ = [
    "SeparatedCollection",
    "chord_separated",
    "complete_to_maximal",
    "crossing_witness",
    "purity_report",
    "strongly_separated",
    "surrounds",
    "weakly_separated",
]
