"""Exact computations with minimal usco and minimal cusco maps on a real interval."""

from .analysis import Ray, Verdict, Witness, is_hyperplane_minimal, is_quasicontinuous, is_subcontinuous
from .pwfun import (
    Affine,
    ClusterSet,
    CofiniteSet,
    DomainError,
    PWFun,
    Reciprocal,
    cluster_set,
    continuity_points,
    eval_at,
    one_sided_limits,
    rat,
    restrict,
)
from .svmap import (
    Band,
    ExtInterval,
    GraphMap,
    IntervalValue,
    MultiMap,
    PreconditionError,
    convexify,
    csc,
    envelopes,
    graph_closure,
    has_closed_graph,
    is_cusco,
    is_usco,
)
from .minimal import (
    closure_is_minimal_usco,
    extreme_selection,
    is_minimal_cusco,
    is_minimal_usco,
    minimal_cusco_from,
    minimal_cusco_within,
    minimal_usco_within,
    unique_minimal_usco,
)
from .subdiff import ConvexPWAffine, differentiability_points, subdifferential

__all__ = [
    "closure_is_minimal_usco",
    "Ray",
    "Verdict",
    "Witness",
    "is_hyperplane_minimal",
    "is_quasicontinuous",
    "is_subcontinuous",
    "Affine",
    "ClusterSet",
    "CofiniteSet",
    "DomainError",
    "PWFun",
    "Reciprocal",
    "cluster_set",
    "continuity_points",
    "eval_at",
    "one_sided_limits",
    "rat",
    "restrict",
    "Band",
    "ExtInterval",
    "GraphMap",
    "IntervalValue",
    "MultiMap",
    "PreconditionError",
    "convexify",
    "csc",
    "envelopes",
    "graph_closure",
    "has_closed_graph",
    "is_cusco",
    "is_usco",
    "extreme_selection",
    "is_minimal_cusco",
    "is_minimal_usco",
    "minimal_cusco_from",
    "minimal_cusco_within",
    "minimal_usco_within",
    "unique_minimal_usco",
    "ConvexPWAffine",
    "differentiability_points",
    "subdifferential",
]

__version__ = "0.1.0"
