"""Cyclic codes of length 2^sigma over F_{2^m}[u]/(u^3) and their Lee distances."""

from .codespec import CodeSpec, DerivedParams, UnitPoly, enumerate_specs, generators, smallest_params_formula, validate
from .formulas import DistanceResult, base_hamming, base_lee, hamming_distance, lee_bounds_sandwich, lee_distance
from .gf2m import FieldCtx, FieldElement, TraceOrthogonalBasis, field, find_tob
from .chain_ring import RingElement
from .polyring import PolyS

__all__ = [
    "CodeSpec", "DerivedParams", "UnitPoly", "enumerate_specs", "generators", "smallest_params_formula", "validate",
    "DistanceResult", "base_hamming", "base_lee", "hamming_distance", "lee_bounds_sandwich", "lee_distance",
    "FieldCtx", "FieldElement", "TraceOrthogonalBasis", "field", "find_tob", "RingElement", "PolyS",
]
