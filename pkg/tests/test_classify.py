from fractions import Fraction

import pytest

from homdil import (
    RationalMatrix,
    Representation,
    Subspace,
    are_equivalent,
    are_strongly_isomorphic,
    builtin_system,
    canonical_dilation,
    character_lines,
    conjugate_dilation,
    contains_invertible,
    custom_algebra,
    has_unique_dilation_class,
    intertwiner_space,
    kernel,
    left_regular_representation,
    maximal_invariant_subspace,
    principle_dilation,
    reduce,
    reduced_subspace,
    spanning_map,
    universal_dilation,
    vector_major_permutation,
)
from homdil.reports import load_example_dilation

from helpers import commutant_dimension_oracle, e, mat, span

BUILTIN_SYSTEMS = [
    ("normalized_trace", {"algebra": "full_matrix", "n": 2}),
    ("normalized_trace", {"algebra": "upper_triangular", "n": 2}),
    ("normalized_trace", {"algebra": "upper_triangular", "n": 3}),
    ("transpose_t_to_m", {"n": 2}),
    ("transpose_full", {"n": 2}),
    ("trace_identity", {"n": 2}),
    ("diag_map_d", None),
    ("corner_scalar_map", None),
    ("identity_full", {"n": 2}),
]


# --- spanning map and reduced subspaces ------------------------------------


def test_spanning_map_of_universal_is_identity(trace_t3):
    u = universal_dilation(trace_t3)
    assert spanning_map(u, trace_t3) == RationalMatrix.identity(6)


def test_spanning_map_of_canonical_45i(trace_t2):
    c = canonical_dilation(trace_t2)
    phi = spanning_map(c, trace_t2)
    # columns pi(E11) T, pi(E12) T, pi(E22) T = (1,0), (0,0), (0,1)
    assert phi == mat([[1, 0, 0], [0, 0, 1]])
    assert phi.rank() == c.dim_w


def test_reduced_subspace_of_universal_is_zero(trace_t2):
    u = universal_dilation(trace_t2)
    assert reduced_subspace(u, trace_t2) == Subspace.zero(3)


def test_reduced_subspace_of_canonical_transpose_t2(transpose_t2):
    c = canonical_dilation(transpose_t2)
    k = reduced_subspace(c, transpose_t2)
    # in the display layout the answer is span{e4, e5}
    perm = vector_major_permutation(3, 2)
    k_display = Subspace.from_vectors(6, [perm.apply(k.basis.row(i)) for i in range(k.dim)])
    assert k_display == span(6, e(6, 4), e(6, 5))


def test_reduced_subspace_of_reference_dim5_2(trace_t3):
    d = load_example_dilation("ex45ii_dim5_2.json", trace_t3)
    assert reduced_subspace(d, trace_t3) == span(6, e(6, 4))


def test_reduced_subspace_requires_minimality(trace_t2):
    u = universal_dilation(trace_t2)
    n = u.dim_w
    character = [1, 0, 0]
    pad = lambda m, chi: RationalMatrix(
        n + 1,
        n + 1,
        [m[i, j] if i < n and j < n else (chi if i == j == n else 0) for i in range(n + 1) for j in range(n + 1)],
    )
    from homdil import DilationSystem

    padded = DilationSystem(
        Representation(trace_t2.algebra, n + 1, [pad(m, chi) for m, chi in zip(u.rep.pi, character)]),
        RationalMatrix(1, n + 1, list(u.s.row(0)) + [0]),
        RationalMatrix(n + 1, 1, list(u.t.col(0)) + [0]),
    )
    with pytest.raises(ValueError, match="linearly minimal"):
        reduced_subspace(padded, trace_t2)


def test_round_trip_reduce_then_reduced_subspace(trace_t3):
    u = universal_dilation(trace_t3)
    for k in (
        Subspace.zero(6),
        span(6, e(6, 2)),
        span(6, e(6, 4)),
        span(6, [0, 1, 0, 1, 0, 0]),
        span(6, e(6, 2), e(6, 4)),
        span(6, e(6, 2), e(6, 4), e(6, 5)),
    ):
        assert reduced_subspace(reduce(u, k), trace_t3) == k


# --- equivalence ------------------------------------------------------------


@pytest.mark.parametrize("name,params", BUILTIN_SYSTEMS)
def test_canonical_equivalent_to_reduced_universal(name, params):
    sys = builtin_system(name, params)
    witness = are_equivalent(canonical_dilation(sys), principle_dilation(sys), sys)
    assert witness is not None


def test_reference_44_equivalent_to_universal(trace_m2):
    ref = load_example_dilation("ex44_reference.json", trace_m2)
    u = universal_dilation(trace_m2)
    witness = are_equivalent(ref, u, sys=trace_m2)
    assert witness is not None
    r = witness.r
    assert r * ref.t == u.t
    assert u.s * r == ref.s


def test_reference_dim5_systems_inequivalent(trace_t3):
    d1 = load_example_dilation("ex45ii_dim5_1.json", trace_t3)
    d2 = load_example_dilation("ex45ii_dim5_2.json", trace_t3)
    assert are_equivalent(d1, d2, trace_t3) is None


def test_equivalence_is_an_equivalence_relation(trace_t3):
    u = universal_dilation(trace_t3)
    d1 = reduce(u, span(6, e(6, 2)))
    # transport d1 along two invertible coordinate changes: same reduced subspace
    r1 = mat([[1, 0, 0, 0, 0], [1, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 2, 0], [0, 0, 1, 0, 1]])
    d2 = conjugate_dilation(d1, r1)
    r2 = mat([[1, 1, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 1, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 3]])
    d3 = conjugate_dilation(d2, r2)

    identity_witness = are_equivalent(d1, d1, trace_t3)
    assert identity_witness.r == RationalMatrix.identity(5)

    w12 = are_equivalent(d1, d2, trace_t3)
    w21 = are_equivalent(d2, d1, trace_t3)
    assert w21.r * w12.r == RationalMatrix.identity(5)

    w23 = are_equivalent(d2, d3, trace_t3)
    w13 = are_equivalent(d1, d3, trace_t3)
    assert w13.r == w23.r * w12.r


def test_are_equivalent_rejects_invalid_inputs(trace_t2, trace_m2):
    c = canonical_dilation(trace_t2)
    with pytest.raises(ValueError, match="invalid"):
        are_equivalent(c, c, trace_m2)


# --- intertwiner spaces ------------------------------------------------------


def test_intertwiner_space_schur_for_defining_rep():
    sys = builtin_system("identity_full", {"n": 2})
    rep = principle_dilation(sys).rep
    space = intertwiner_space(rep, rep)
    assert len(space) == 1 == commutant_dimension_oracle(rep, rep)


def test_intertwiner_space_regular_rep_of_m2():
    # the canonical homomorphism of the normalized trace on M_2 is the left
    # regular representation: two copies of the defining representation, so
    # the commutant is 4-dimensional
    sys = builtin_system("normalized_trace", {"algebra": "full_matrix", "n": 2})
    rep = canonical_dilation(sys).rep
    space = intertwiner_space(rep, rep)
    assert len(space) == 4 == commutant_dimension_oracle(rep, rep)
    for x in space:
        for m in rep.pi:
            assert m * x == x * m


def test_intertwiner_space_diagonal_family(trace_t3):
    rep = canonical_dilation(trace_t3).rep
    space = intertwiner_space(rep, rep)
    assert len(space) == 3 == commutant_dimension_oracle(rep, rep)
    assert all(
        all(x[i, j] == 0 for i in range(3) for j in range(3) if i != j) for x in space
    )


def test_intertwiner_space_distinct_characters_is_zero():
    t3 = builtin_system("normalized_trace", {"algebra": "upper_triangular", "n": 3}).algebra
    char_a = Representation(t3, 1, [mat([[1]]), mat([[0]]), mat([[0]]), mat([[0]]), mat([[0]]), mat([[0]])])
    char_f = Representation(t3, 1, [mat([[0]]), mat([[0]]), mat([[0]]), mat([[0]]), mat([[0]]), mat([[1]])])
    assert intertwiner_space(char_a, char_f) == []
    assert commutant_dimension_oracle(char_a, char_f) == 0


# --- invertibility search ----------------------------------------------------


def test_contains_invertible_identity():
    v = contains_invertible([RationalMatrix.identity(3)])
    assert v.status == "yes" and v.witness == RationalMatrix.identity(3)


def test_contains_invertible_nilpotent_line():
    v = contains_invertible([mat([[0, 1], [0, 0]])])
    assert v.status == "no"


def test_contains_invertible_diagonal_pair():
    v = contains_invertible([mat([[1, 0], [0, 0]]), mat([[0, 0], [0, 1]])])
    assert v.status == "yes"
    assert v.witness == RationalMatrix.identity(2)


def test_contains_invertible_empty_basis():
    assert contains_invertible([]).status == "no"


def test_contains_invertible_size_mismatch():
    with pytest.raises(ValueError):
        contains_invertible([RationalMatrix.identity(2), RationalMatrix.identity(3)])


def test_contains_invertible_random_fallback_finds_witness():
    # 5 generators on 9x9 matrices: grid would need 10^5 points, so the
    # seeded random path runs instead
    basis = []
    for k in range(5):
        entries = [0] * 81
        for i in range(9):
            entries[i * 9 + (i + k) % 9] = 1
        basis.append(RationalMatrix(9, 9, entries))
    v = contains_invertible(basis, seed=3)
    assert v.status in ("yes", "unknown")
    if v.status == "yes":
        assert v.witness.rank() == 9


# --- strong isomorphism ------------------------------------------------------


def test_strong_iso_equal_subspaces(trace_t3):
    k = span(6, e(6, 2))
    v = are_strongly_isomorphic(k, k, trace_t3)
    assert v.status == "yes"
    assert v.ambient_map == RationalMatrix.identity(6)


def test_strong_iso_dimension_mismatch(trace_t2):
    v = are_strongly_isomorphic(Subspace.zero(3), span(3, e(3, 2)), trace_t2)
    assert v.status == "no"
    assert "dimension" in v.detail


def test_strong_iso_e2_vs_e4_is_no(trace_t3):
    v = are_strongly_isomorphic(span(6, e(6, 2)), span(6, e(6, 4)), trace_t3)
    assert v.status == "no"


def test_strong_iso_distinct_subspaces_can_hold(trace_t3):
    k1 = span(6, e(6, 2))
    k2 = span(6, [0, 1, 0, 1, 0, 0])
    v = are_strongly_isomorphic(k1, k2, trace_t3)
    assert v.status == "yes"
    r = v.ambient_map
    assert r.rank() == 6
    image = Subspace.from_vectors(6, [r.apply(k1.basis.row(i)) for i in range(k1.dim)])
    assert image == k2


def test_strong_iso_rejects_non_invariant_subspace(trace_t3):
    with pytest.raises(ValueError, match="invariant"):
        are_strongly_isomorphic(span(6, e(6, 5)), span(6, e(6, 2)), trace_t3)
    with pytest.raises(ValueError, match="ker"):
        are_strongly_isomorphic(span(6, e(6, 1)), span(6, e(6, 2)), trace_t3)


# --- character lines ----------------------------------------------------------


def test_character_lines_transpose_t2(transpose_t2):
    u = universal_dilation(transpose_t2)
    v = conjugate_dilation(u, vector_major_permutation(3, 2))
    m = maximal_invariant_subspace(v.rep, kernel(v.s))
    dec = character_lines(v.rep, m)
    assert len(dec) == 1
    line = dec.lines[0]
    assert line.character == (Fraction(1), Fraction(0), Fraction(0))
    assert line.eigenspace == m
    assert dec.unresolved == ()


def test_character_lines_trace_t3(trace_t3):
    u = universal_dilation(trace_t3)
    m = maximal_invariant_subspace(u.rep, kernel(u.s))
    dec = character_lines(u.rep, m)
    assert len(dec) == 1
    line = dec.lines[0]
    # character A -> a on the plane span{e2, e4}; e5 lies in no line because
    # the E12 action sends it to e4
    assert line.character == (Fraction(1), Fraction(0), Fraction(0), Fraction(0), Fraction(0), Fraction(0))
    assert line.eigenspace == span(6, e(6, 2), e(6, 4))
    assert dec.unresolved == ()


def test_character_lines_of_zero_subspace(trace_t2):
    u = universal_dilation(trace_t2)
    dec = character_lines(u.rep, Subspace.zero(3))
    assert len(dec) == 0


def test_character_lines_require_invariant_input(trace_t3):
    u = universal_dilation(trace_t3)
    with pytest.raises(ValueError, match="invariant"):
        character_lines(u.rep, span(6, e(6, 3)))


def test_character_lines_report_irrational_remainder():
    # Q[x]/(x^2 - 2): multiplication by x has eigenvalues +-sqrt(2)
    algebra = custom_algebra(
        2,
        [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 2)],
        unit=[1, 0],
        labels=["1", "x"],
    )
    rep = left_regular_representation(algebra)
    dec = character_lines(rep, Subspace.full(2))
    assert len(dec) == 0
    assert len(dec.unresolved) == 1
    piece = dec.unresolved[0]
    assert piece.residual_dim == 2
    assert piece.generator_index == 1


# --- uniqueness of the dilation class ----------------------------------------


def test_unique_class_trace_m2(trace_m2):
    assert has_unique_dilation_class(trace_m2)


@pytest.mark.parametrize("n", [2, 3])
def test_no_unique_class_trace_tn(n):
    sys = builtin_system("normalized_trace", {"algebra": "upper_triangular", "n": n})
    assert not has_unique_dilation_class(sys)


def test_unique_class_transpose_and_trace_identity_on_m2():
    assert has_unique_dilation_class(builtin_system("transpose_full", {"n": 2}))
    assert has_unique_dilation_class(builtin_system("trace_identity", {"n": 2}))
