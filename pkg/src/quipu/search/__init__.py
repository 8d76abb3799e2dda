from .families import (
    compare_by_shared_subgraph,
    enumerate_family,
    family_dominance,
    family_min,
    predicted_min,
    remark3_diagnostic,
    reproduction_table,
    residue_class,
    theorem_filter,
)
from .report import MinimizerReport
from .trees import all_graphs_min, brute_min, enumerate_trees

__all__ = (
    "MinimizerReport",
    "all_graphs_min",
    "brute_min",
    "compare_by_shared_subgraph",
    "enumerate_family",
    "enumerate_trees",
    "family_dominance",
    "family_min",
    "predicted_min",
    "remark3_diagnostic",
    "reproduction_table",
    "residue_class",
    "theorem_filter",
)
