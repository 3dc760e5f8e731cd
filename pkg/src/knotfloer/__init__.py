"""Knot Floer complexes over F[U,V] and HF⁻ of integer surgeries.

The main entry points are re-exported here; see the submodules for the
rest of the toolkit.
"""

from __future__ import annotations

from .complexes import (BigradedComplex, Bigrading, dualize, is_isomorphic, mono,
                        tensor_product, unknot_complex, validate_complex)
from .errors import DomainError, InternalInvariantError, KnotFloerError, SchemaError
from .heegaard_h1 import (AbelianGroup, IntersectionMatrix, h1_group, hf_dimension_check,
                          stabilize)
from .homology import bigraded_homology, homology_dvr, homology_f2
from .knots import (Alternating, ConnectedSum, LaurentPoly, LSpaceKnot, Mirror, OneOne, Reverse,
                    build, euler_characteristic, genus, hfk_hat, hfk_minus, is_fibered)
from .modules import DvrModule, d_invariant, plus_and_hat_views
from .oneone import OneOneDiagram, cfk_from_diagram, count_bigons, diagram_from_json
from .reduction import gaussian_eliminate
from .specialize import alexander_summand, specialize
from .surgery import build_cone, flip_map, large_surgery, surgery_homology
from .wcomplex import WComplex

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup", "Alternating", "BigradedComplex", "Bigrading", "ConnectedSum",
    "DomainError", "DvrModule", "IntersectionMatrix", "InternalInvariantError",
    "KnotFloerError", "LSpaceKnot", "LaurentPoly", "Mirror", "OneOne", "OneOneDiagram",
    "Reverse", "SchemaError", "WComplex", "alexander_summand", "bigraded_homology", "build",
    "build_cone", "cfk_from_diagram", "count_bigons", "d_invariant", "diagram_from_json",
    "dualize", "euler_characteristic", "flip_map", "gaussian_eliminate", "genus", "h1_group",
    "hf_dimension_check", "hfk_hat", "hfk_minus", "homology_dvr", "homology_f2",
    "is_fibered", "is_isomorphic", "large_surgery", "mono", "plus_and_hat_views",
    "specialize", "stabilize", "surgery_homology", "tensor_product", "unknot_complex",
    "validate_complex",
]
