"""Exact-arithmetic homomorphism dilation systems for linear maps.

Construct, verify, reduce and classify dilation systems (pi, S, T, W) of
linear systems (phi, A, V) over finite-dimensional unital algebras, entirely
in rational arithmetic.
"""

from .algebra import (
    Algebra,
    custom_algebra,
    full_matrix_algebra,
    largest_left_ideal_in_kernel,
    left_regular_representation,
    mul,
    upper_triangular_algebra,
    validate_algebra,
)
from .classify import (
    CharacterDecomposition,
    CharacterLine,
    EquivalenceWitness,
    InvertibilityVerdict,
    StrongIsomorphismVerdict,
    are_equivalent,
    are_strongly_isomorphic,
    character_lines,
    contains_invertible,
    has_unique_dilation_class,
    intertwiner_space,
    reduced_subspace,
    spanning_map,
)
from .dilation import (
    DilationSystem,
    Representation,
    canonical_dilation,
    conjugate_dilation,
    invariant_closure,
    is_invariant,
    is_irreducible,
    is_linearly_minimal,
    maximal_invariant_in_synthesis_kernel,
    maximal_invariant_subspace,
    principle_dilation,
    reduce,
    universal_dilation,
    validate_dilation,
    validate_representation,
    vector_major_permutation,
)
from .linsys import LinearSystem, apply_phi, builtin_system, validate_system
from .qlinalg import (
    CheckResult,
    Rational,
    RationalMatrix,
    Subspace,
    induced_map,
    kernel,
    quotient,
    rref,
    seeded_random_vector,
    subspace_intersection,
    subspace_ops,
    subspace_sum,
)

reduce_dilation = reduce

__all__ = [
    "Algebra",
    "CharacterDecomposition",
    "CharacterLine",
    "CheckResult",
    "DilationSystem",
    "EquivalenceWitness",
    "InvertibilityVerdict",
    "LinearSystem",
    "Rational",
    "RationalMatrix",
    "Representation",
    "StrongIsomorphismVerdict",
    "Subspace",
    "apply_phi",
    "are_equivalent",
    "are_strongly_isomorphic",
    "builtin_system",
    "canonical_dilation",
    "character_lines",
    "conjugate_dilation",
    "contains_invertible",
    "custom_algebra",
    "full_matrix_algebra",
    "has_unique_dilation_class",
    "induced_map",
    "intertwiner_space",
    "invariant_closure",
    "is_invariant",
    "is_irreducible",
    "is_linearly_minimal",
    "kernel",
    "largest_left_ideal_in_kernel",
    "left_regular_representation",
    "maximal_invariant_in_synthesis_kernel",
    "maximal_invariant_subspace",
    "mul",
    "principle_dilation",
    "quotient",
    "reduce",
    "reduce_dilation",
    "reduced_subspace",
    "rref",
    "seeded_random_vector",
    "spanning_map",
    "subspace_intersection",
    "subspace_ops",
    "subspace_sum",
    "universal_dilation",
    "upper_triangular_algebra",
    "validate_algebra",
    "validate_dilation",
    "validate_representation",
    "validate_system",
    "vector_major_permutation",
]
