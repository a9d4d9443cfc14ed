"""Classification of label graphs and exact generating functions."""

from .families import (
    AlmostPathDirected,
    AlphaGrowing,
    BackwardPathDirected,
    Finite,
    GraphFamily,
    LabelGraph,
    Unclassified,
    classify_graph,
    rebase,
)
from .pipeline import SolveReport, compress, solve
from .series import series_dp
