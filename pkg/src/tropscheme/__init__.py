"""Tropical scheme theory over the tropical hyperfield, in exact arithmetic."""

from .blueprint import (
    Presentation,
    Relation,
    apply_idem,
    apply_pos,
    base_change_to_T,
    core,
    idem_normal_form,
    monomial_blueprint,
)
from .entail import UNKNOWN, Derivation, ProofStep, check_derivation, derive_bend_pair, search_leq
from .hyperfield import ExtendedTropElement, Ghost, HyperSet, Point, hypersum, hypersum_n, leq_T
from .poly import FormalSum, Polynomial, Signature, Term, eval_trop, parse_polynomial, tropicalize_poly
from .scalar import INF, Valuation, apply_valuation, padic_valuation
from .trop import (
    BendRelation,
    bend_locus_member,
    bend_relations,
    bend_vs_trop_points,
    sample_grid,
    trop_point_member,
)

__version__ = "0.1.0"
