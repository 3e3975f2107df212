"""Andrásfai graphs, resolving sets and exact metric dimension."""

from .graphs import (
    ConnectionSet,
    Graph,
    GraphError,
    andrasfai,
    cartesian_product,
    cayley_cyclic,
    complement,
    complete,
    cycle,
    line_graph,
    path,
)
from .metric import (
    Code,
    DisconnectedGraphError,
    DistanceMatrix,
    ResolvingCertificate,
    Verdict,
    andrasfai_distance,
    code_of,
    diameter,
    distance_matrix,
    distinguisher_set,
    is_resolving,
    twin_classes,
)
from .solver import (
    DimensionReport,
    SearchBudget,
    greedy_upper_bound,
    lower_bound,
    metric_dimension_exact,
    minimal_resolving_sets_of_size,
)

__version__ = "0.1.0"
