"""Shared test utilities: small constructors, random systems, and oracles."""

from fractions import Fraction

from homdil import (
    Algebra,
    DilationSystem,
    LinearSystem,
    RationalMatrix,
    Representation,
    Subspace,
    full_matrix_algebra,
    rref,
    seeded_random_vector,
    upper_triangular_algebra,
)


def e(ambient, index1):
    """1-indexed standard basis vector as a plain list."""
    return [1 if i == index1 - 1 else 0 for i in range(ambient)]


def span(ambient, *vectors):
    return Subspace.from_vectors(ambient, list(vectors))


def mat(rows):
    return RationalMatrix.from_rows(rows)


def dilation(algebra, pi_rows, s_rows, t_rows):
    pi = [RationalMatrix.from_rows(m) for m in pi_rows]
    return DilationSystem(
        Representation(algebra, pi[0].rows, pi), mat(s_rows), mat(t_rows)
    )


_ALGEBRA_POOL = [
    lambda: full_matrix_algebra(2),
    lambda: upper_triangular_algebra(2),
    lambda: upper_triangular_algebra(3),
    lambda: full_matrix_algebra(1),
]


def random_system(index: int) -> LinearSystem:
    """Seeded random unital system with dim_A <= 6 and dim_V <= 3.

    Entries come from the deterministic small-integer generator; unitality is
    restored by solving for the image of the last diagonal matrix unit.
    """
    algebra = _ALGEBRA_POOL[index % len(_ALGEBRA_POOL)]()
    dim_v = 1 + (index // len(_ALGEBRA_POOL)) % 3
    phi = []
    for i in range(algebra.dim):
        entries = seeded_random_vector(dim_v * dim_v, 7919 * index + i)
        phi.append(RationalMatrix(dim_v, dim_v, entries))
    diagonal = [i for i, lab in enumerate(algebra.labels) if lab[1] == lab[2]]
    correction = RationalMatrix.identity(dim_v)
    for i in diagonal[:-1]:
        correction = correction - phi[i]
    phi[diagonal[-1]] = correction
    return LinearSystem(algebra, dim_v, phi)


def commutant_dimension_oracle(rep1: Representation, rep2: Representation) -> int:
    """Dimension of {X : pi2(g) X = X pi1(g)}, assembled entry by entry.

    Deliberately avoids the Kronecker-product construction the library uses,
    so the two computations are independent.
    """
    w1, w2 = rep1.dim_w, rep2.dim_w
    unknowns = w2 * w1  # X[k][l], row-major
    rows = []
    for m1, m2 in zip(rep1.pi, rep2.pi):
        for r in range(w2):
            for c in range(w1):
                row = [Fraction(0)] * unknowns
                for k in range(w2):
                    row[k * w1 + c] += m2[r, k]
                for l in range(w1):
                    row[r * w1 + l] -= m1[l, c]
                rows.append(row)
    constraint = RationalMatrix(len(rows), unknowns, [x for row in rows for x in row])
    return unknowns - rref(constraint).rank
