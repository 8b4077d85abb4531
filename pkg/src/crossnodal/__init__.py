"""Exact computations with finite-dimensional algebras over Q: radicals, Wedderburn data,
crossed products by finite groups, and nodal pairs."""

from .action import (ActionDatum, CrossedProduct, GroupTable, action_datum, crossed_product,
                     cyclic_group, separability_witness, skew_group_ring, symmetric_group,
                     validate_action, validate_group)
from .algebra import Algebra, AlgebraError, center, idealizer, quotient_algebra, subalgebra, validate_algebra
from .endo import endomorphism_algebra, induced_endo_action, morita_transport_check, phi_isomorphism
from .lemma34 import classify_matrix_condition
from .linalg import Subspace
from .nodal import (SemilocalPair, b_matrix, ell_star, is_backstrom, is_nodal_pair, pair_report,
                    verify_closure_theorem)
from .presets import preset
from .radical import NotSplit, is_hereditary, is_semisimple, jacobson_radical, wedderburn

__version__ = "0.1.0"

__all__ = [
    "ActionDatum", "Algebra", "AlgebraError", "CrossedProduct", "GroupTable", "NotSplit", "SemilocalPair",
    "Subspace", "action_datum", "b_matrix", "center", "classify_matrix_condition", "crossed_product",
    "cyclic_group", "ell_star", "endomorphism_algebra", "idealizer", "induced_endo_action", "is_backstrom",
    "is_hereditary", "is_nodal_pair", "is_semisimple", "jacobson_radical", "morita_transport_check",
    "pair_report", "phi_isomorphism", "preset", "quotient_algebra", "separability_witness",
    "skew_group_ring", "subalgebra", "symmetric_group", "validate_action", "validate_algebra",
    "validate_group", "verify_closure_theorem", "wedderburn",
]
