"""Collapsed-measure description of the two-species TASEP stationary law."""

from .collapse import SitePair, collapse_cycle, collapse_line_window, dual_collapse_cycle
from .seqcomb import dominates, enumerate_dominated, weight
from .stationary import ExactDistribution, formula_distribution, generator_stationary
from .treebij import Tree, decode, f_encode, g_encode

__all__ = [
    "ExactDistribution",
    "SitePair",
    "Tree",
    "collapse_cycle",
    "collapse_line_window",
    "decode",
    "dominates",
    "dual_collapse_cycle",
    "enumerate_dominated",
    "f_encode",
    "formula_distribution",
    "g_encode",
    "generator_stationary",
    "weight",
]
