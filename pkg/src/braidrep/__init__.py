"""Traceless SU(2) representation data of knots presented as braid closures.

The pipeline: a braid word acts on tuples of pure unit quaternions (the
Hurwitz action); exact fixed points of that action are the traceless
irreducible SU(2) representations of the knot group; signed and counted,
they give the Casson-Lin invariant, which is cross-checked against an
independent Seifert-matrix/Burau oracle and, for two-strand braids,
against exact pillowcase geometry.
"""

from .braids import (
    BraidParseError,
    BraidWord,
    FreeWord,
    free_action,
    is_knot_closure,
    markov_conjugate,
    markov_stabilize,
    parse_braid,
    permutation,
)
from .configurations import (
    Configuration,
    SlicePoint,
    conjugate,
    decode,
    fingerprint,
    gauge_fix,
    hurwitz,
    is_irreducible,
    product,
)
from .fixedpoints import (
    FixedPointRecord,
    LambdaResult,
    SolverConfig,
    casson_lin,
    intersection_index,
    solve_fixed_points,
)
from .invariants import (
    alexander,
    binary_dihedral_count,
    burau_reduced,
    determinant,
    seifert_matrix,
    signature,
)
from .markov import MarkovAudit, random_markov_walk, verify_type1, verify_type2
from .pillowcase import (
    PillowPoint,
    TorusLift,
    angle_matrix,
    chart,
    exact_classes,
    gamma_curves,
    torus_lift,
)
from .quaternions import align, conj_action, qmul, reflect

__version__ = "0.1.0"

__all__ = [
    "BraidParseError",
    "BraidWord",
    "Configuration",
    "FixedPointRecord",
    "FreeWord",
    "LambdaResult",
    "MarkovAudit",
    "PillowPoint",
    "SlicePoint",
    "SolverConfig",
    "TorusLift",
    "alexander",
    "align",
    "angle_matrix",
    "binary_dihedral_count",
    "burau_reduced",
    "casson_lin",
    "chart",
    "conj_action",
    "conjugate",
    "decode",
    "determinant",
    "exact_classes",
    "fingerprint",
    "free_action",
    "gamma_curves",
    "gauge_fix",
    "hurwitz",
    "intersection_index",
    "is_irreducible",
    "is_knot_closure",
    "markov_conjugate",
    "markov_stabilize",
    "parse_braid",
    "permutation",
    "product",
    "qmul",
    "random_markov_walk",
    "reflect",
    "seifert_matrix",
    "signature",
    "solve_fixed_points",
    "torus_lift",
    "verify_type1",
    "verify_type2",
]
