"""Exact q-series and modular forms, tmf homotopy tables, and the residue pairings between them."""

from .abgroup import FinAbGroup, smith_normal_form
from .duality import KOqClass, ModZValue, bn_generator, pair_alpha, pair_mf
from .modforms import C4, C6, DELTA, ONE, MFElement, MFMonomial, expand
from .qseries import InsufficientPrecision, QSeries

__all__ = [
    "QSeries",
    "InsufficientPrecision",
    "MFMonomial",
    "MFElement",
    "ONE",
    "C4",
    "C6",
    "DELTA",
    "expand",
    "FinAbGroup",
    "smith_normal_form",
    "KOqClass",
    "ModZValue",
    "pair_alpha",
    "pair_mf",
    "bn_generator",
]

__version__ = "0.1.0"
