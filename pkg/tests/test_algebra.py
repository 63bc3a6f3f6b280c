from fractions import Fraction

import pytest

from homdil import (
    Subspace,
    builtin_system,
    custom_algebra,
    full_matrix_algebra,
    largest_left_ideal_in_kernel,
    left_regular_representation,
    mul,
    upper_triangular_algebra,
    validate_algebra,
    validate_representation,
)

from helpers import e, mat, span


def basis(a, label):
    return a.basis_vector(a.labels.index(label))


def test_full_matrix_algebra_layout():
    a = full_matrix_algebra(2)
    assert a.dim == 4
    assert a.labels == ("E11", "E21", "E12", "E22")
    assert a.unit == (Fraction(1), Fraction(0), Fraction(0), Fraction(1))


def test_upper_triangular_layout():
    assert upper_triangular_algebra(2).labels == ("E11", "E12", "E22")
    assert upper_triangular_algebra(3).labels == ("E11", "E12", "E22", "E13", "E23", "E33")


def test_invalid_size_rejected():
    with pytest.raises(ValueError):
        full_matrix_algebra(0)
    with pytest.raises(ValueError):
        upper_triangular_algebra(0)


def test_builtin_algebras_validate_up_to_4():
    for n in range(1, 5):
        assert validate_algebra(full_matrix_algebra(n))
        assert validate_algebra(upper_triangular_algebra(n))


def test_mutated_structure_constant_fails_validation():
    a = full_matrix_algebra(2)
    structure = [[list(a.structure[i][j]) for j in range(4)] for i in range(4)]
    # E11 * E11 is E11; break that one product
    structure[0][0] = [0, 1, 0, 0]
    broken = type(a)(4, structure, a.unit, a.labels)
    result = validate_algebra(broken)
    assert not result
    assert "E11" in result.message()


def test_matrix_unit_products():
    m2 = full_matrix_algebra(2)
    assert mul(m2, basis(m2, "E12"), basis(m2, "E21")) == basis(m2, "E11")
    t2 = upper_triangular_algebra(2)
    assert mul(t2, basis(t2, "E12"), basis(t2, "E22")) == basis(t2, "E12")
    assert mul(t2, basis(t2, "E22"), basis(t2, "E12")) == tuple([Fraction(0)] * 3)


def test_unit_is_neutral_for_random_elements():
    from homdil import seeded_random_vector

    a = upper_triangular_algebra(3)
    for seed in range(4):
        x = seeded_random_vector(a.dim, seed)
        assert mul(a, a.unit, x) == x
        assert mul(a, x, a.unit) == x


def test_mul_length_mismatch():
    a = full_matrix_algebra(2)
    with pytest.raises(ValueError):
        mul(a, [1, 0], [0, 1, 0, 0])


def test_custom_algebra_roundtrip():
    # dual numbers: g1^2 = 0
    a = custom_algebra(
        2, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)], unit=[1, 0], labels=["1", "eps"]
    )
    assert validate_algebra(a)
    assert mul(a, [0, 1], [0, 1]) == (Fraction(0), Fraction(0))


def test_custom_algebra_rejects_bad_structure():
    with pytest.raises(ValueError, match="invalid algebra"):
        custom_algebra(2, [(0, 0, 1, 1)], unit=[1, 0])


def test_left_regular_representation_t2():
    rep = left_regular_representation(upper_triangular_algebra(2))
    assert rep.pi[0] == mat([[1, 0, 0], [0, 1, 0], [0, 0, 0]])
    assert rep.pi[1] == mat([[0, 0, 0], [0, 0, 1], [0, 0, 0]])
    assert rep.pi[2] == mat([[0, 0, 0], [0, 0, 0], [0, 0, 1]])
    assert validate_representation(rep)


def test_left_regular_representation_t3_block_pattern():
    rep = left_regular_representation(upper_triangular_algebra(3))
    assert rep.dim_w == 6
    # spot-check the columns of the E12 action: E12*E22 = E12, E12*E23 = E13
    a = rep.algebra
    assert rep.pi[1].col(a.labels.index("E22"))[a.labels.index("E12")] == 1
    assert rep.pi[1].col(a.labels.index("E23"))[a.labels.index("E13")] == 1
    assert validate_representation(rep)


def test_left_regular_representation_dim_1():
    rep = left_regular_representation(full_matrix_algebra(1))
    assert rep.pi[0] == mat([[1]])


def test_left_regular_satisfies_structure_constants():
    a = upper_triangular_algebra(3)
    rep = left_regular_representation(a)
    for i in range(a.dim):
        for j in range(a.dim):
            assert rep.pi[i] * rep.pi[j] == rep.apply(a.structure[i][j])


def test_left_ideal_normalized_trace_m2_is_zero():
    sys = builtin_system("normalized_trace", {"algebra": "full_matrix", "n": 2})
    assert largest_left_ideal_in_kernel(sys) == Subspace.zero(4)


@pytest.mark.parametrize("n", [2, 3])
def test_left_ideal_normalized_trace_tn_contains_strict_uppers(n):
    sys = builtin_system("normalized_trace", {"algebra": "upper_triangular", "n": n})
    ideal = largest_left_ideal_in_kernel(sys)
    a = sys.algebra
    strict_upper = [i for i, lab in enumerate(a.labels) if lab[1] != lab[2]]
    assert ideal.dim == len(strict_upper)
    for i in strict_upper:
        assert ideal.contains_vector(a.basis_vector(i))


def test_left_ideal_identity_representation_is_zero():
    sys = builtin_system("identity_full", {"n": 2})
    assert largest_left_ideal_in_kernel(sys) == Subspace.zero(4)


def test_left_ideal_invariance_properties():
    from homdil import apply_phi

    sys = builtin_system("normalized_trace", {"algebra": "upper_triangular", "n": 3})
    ideal = largest_left_ideal_in_kernel(sys)
    a = sys.algebra
    for i in range(ideal.dim):
        v = ideal.basis.row(i)
        # contained in ker(phi) via the unit argument
        assert apply_phi(sys, v).is_zero()
        # stable under left multiplication by every basis element
        for b in range(a.dim):
            assert ideal.contains_vector(mul(a, a.basis_vector(b), v))
