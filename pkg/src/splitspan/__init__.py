"""Exact splits, k-splits and tight spans of rational point configurations."""

from .config import (
    PointConfiguration,
    Subdivision,
    WeightFunction,
    abstract_tight_span,
    coherence_check,
    envelope,
    regular_subdivision,
    tight_span,
    validate_subdivision,
)
from .ksplit import detect_k_split, is_coarsest, is_regular, k_splits, ksplit_weight
from .secondary import secondary_polytope, split_polyhedron
from .splits import one_splits, split_decomposition, two_splits

__all__ = [
    "PointConfiguration",
    "Subdivision",
    "WeightFunction",
    "abstract_tight_span",
    "coherence_check",
    "detect_k_split",
    "envelope",
    "is_coarsest",
    "is_regular",
    "k_splits",
    "ksplit_weight",
    "one_splits",
    "regular_subdivision",
    "secondary_polytope",
    "split_decomposition",
    "split_polyhedron",
    "tight_span",
    "two_splits",
    "validate_subdivision",
]
